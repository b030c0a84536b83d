"""File formats: alist matrices, small integer grids, CSV reports.

Everything here writes LF-terminated text so identical runs produce
byte-identical artifacts.
"""

from __future__ import annotations

import csv
import io

import numpy as np

__all__ = [
    "alist_string",
    "write_alist",
    "read_alist",
    "write_int_grid",
    "read_int_grid",
    "census_csv",
    "optimum_csv",
    "trace_csv",
    "species_csv",
]


def alist_string(matrix: np.ndarray) -> str:
    """Standard alist text for a binary matrix.

    Line 1 is "N M" (columns rows), line 2 the maximum column and row
    degrees, then per-column degrees, per-row degrees, per-column
    1-based row indices padded with zeros to the maximum degree, and
    per-row column indices padded likewise.
    """
    h = np.asarray(matrix)
    if h.ndim != 2 or h.size == 0:
        raise ValueError("need a nonempty 2-d matrix")
    h = h.astype(bool)
    nrows, ncols = h.shape
    col_deg = h.sum(axis=0)
    row_deg = h.sum(axis=1)
    dc, dr = int(col_deg.max()), int(row_deg.max())
    out = [f"{ncols} {nrows}", f"{dc} {dr}"]
    out.append(" ".join(str(int(d)) for d in col_deg))
    out.append(" ".join(str(int(d)) for d in row_deg))
    for c in range(ncols):
        idx = (np.nonzero(h[:, c])[0] + 1).tolist()
        idx += [0] * (dc - len(idx))
        out.append(" ".join(str(i) for i in idx))
    for r in range(nrows):
        idx = (np.nonzero(h[r])[0] + 1).tolist()
        idx += [0] * (dr - len(idx))
        out.append(" ".join(str(i) for i in idx))
    return "\n".join(out) + "\n"


def write_alist(matrix: np.ndarray, path) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(alist_string(matrix))


def read_alist(path) -> np.ndarray:
    """Parse an alist file back into a dense boolean matrix."""
    with open(path) as fh:
        tokens = fh.read().split()
    it = iter(tokens)
    try:
        ncols, nrows = int(next(it)), int(next(it))
        dc, _dr = int(next(it)), int(next(it))
        for _ in range(ncols + nrows):
            next(it)
        h = np.zeros((nrows, ncols), dtype=bool)
        for c in range(ncols):
            for _ in range(dc):
                r = int(next(it))
                if r:
                    h[r - 1, c] = True
    except (StopIteration, ValueError) as exc:
        raise ValueError("malformed alist file") from exc
    return h


def write_int_grid(grid: np.ndarray, path) -> None:
    """Small integer matrix as space-separated rows (partitions, powers)."""
    g = np.asarray(grid, dtype=np.int64)
    if g.ndim != 2:
        raise ValueError("need a 2-d grid")
    with open(path, "w", newline="") as fh:
        for row in g:
            fh.write(" ".join(str(int(v)) for v in row) + "\n")


def read_int_grid(path) -> np.ndarray:
    rows = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            rows.append([int(v) for v in line.split()])
    if not rows or any(len(r) != len(rows[0]) for r in rows):
        raise ValueError("malformed integer grid file")
    return np.array(rows, dtype=np.int64)


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def census_csv(census, p: int | None = None) -> str:
    """Per-span cycle counts with the position multiplicity applied.

    Columns: span k, count of first-window classes, number of window
    positions L-k+1, and the weighted contribution; a final total row.
    """
    # an activity-aware census reports the classes that survive lifting
    per_span = getattr(census, "active_per_span", census.per_span)
    rows = []
    for k in sorted(per_span):
        n = per_span[k]
        mult = max(census.L - k + 1, 0)
        contrib = n * mult * (p if p is not None else 1)
        rows.append([k, n, mult, contrib])
    rows.append(["total", "", "", census.total])
    return _csv_text(["k", "count", "positions", "weighted"], rows)


def optimum_csv(opt) -> str:
    """Independent overlap values plus the objective and search metadata."""
    ov = opt.overlaps
    rows = [["-".join(str(r) for r in s), int(v)]
            for s, v in ov.as_dict().items()]
    rows.append(["objective", int(opt.f_star)])
    rows.append(["certified", int(opt.certified)])
    rows.append(["strategy", opt.strategy])
    return _csv_text(["rows", "value"], rows)


def trace_csv(trace) -> str:
    """Accepted-move log of the power search, one row per round."""
    rows = []
    for t in trace:
        cells = ";".join(f"{i}:{j}" for i, j in t.cells)
        powers = ";".join(str(v) for v in t.powers)
        rows.append([t.round, cells, powers, t.f_sc_before, t.f_sc_after,
                     int(t.accepted)])
    return _csv_text(
        ["round", "cells", "powers", "f_sc_before", "f_sc_after", "accepted"],
        rows)


def species_csv(species, census) -> str:
    """Windowed object counts for one species."""
    rows = []
    for k in sorted(census.per_span):
        rows.append([species.a, species.b, species.kind, k,
                     census.per_span[k], ""])
    rows.append([species.a, species.b, species.kind, "total", "",
                 census.total])
    return _csv_text(["a", "b", "kind", "k", "count", "total"], rows)
