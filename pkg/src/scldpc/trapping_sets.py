"""Trapping and absorbing set machinery.

A set of `a` variable nodes (columns) induces a subgraph of the Tanner
graph.  With `b` odd-degree check nodes in that subgraph the set is an
(a, b) trapping set; it is additionally an absorbing set if every
variable node sees strictly more even-degree than odd-degree checks
among the checks touching the set.

For column-weight gamma codes free of cycles of length 4, the cycle-6
variable triple is a (3, 3(gamma-2)) trapping set (an absorbing set
when gamma = 3) and appears as a common substructure of the dominant
error-floor objects.  Larger species are enumerated here directly, by
connected-subset search inside a window of the coupled matrix: an
object whose variable pairs are linked by shortest paths through at
most `path_vns` variables fits inside (path_vns - 1) * m + 1
consecutive replicas, so counting window-resident instances that start
in the first replica and weighting by position yields the full-matrix
count.

Disconnected variable sets cannot reach the small `b` values of the
dominant species (each extra component adds at least gamma odd
checks), so the connected search is exhaustive for the species listed
in `dominant_species`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .code_model import SCCodeSpec, window
from .cycle_census import CycleCensus

__all__ = [
    "InducedConfig",
    "ObjectSpecies",
    "classify",
    "max_shortest_path_vns",
    "replica_span",
    "enumerate_objects",
    "dominant_species",
    "common_denominator",
    "cycle_template",
    "six_four_template",
]

MAX_SUBSET_SIZE = 6
MAX_WINDOW_COLUMNS = 4000


@dataclass(frozen=True)
class InducedConfig:
    """Classification of one variable-node subset."""

    vn_set: tuple
    a: int
    b: int
    check_rows: tuple
    check_degrees: tuple

    @property
    def is_trapping_set(self) -> bool:
        # Def: any nonempty set with b odd checks is an (a, b) trapping set.
        return True

    @property
    def is_absorbing_set(self) -> bool:
        return bool(self._absorbing)

    def __post_init__(self):
        object.__setattr__(self, "_absorbing", None)

    def _set_absorbing(self, flag: bool):
        object.__setattr__(self, "_absorbing", flag)


@dataclass(frozen=True)
class ObjectSpecies:
    """Target object class: sizes, kind, and path width for windowing."""

    a: int
    b: int
    kind: str  # "TS" or "AS"
    path_vns: int

    def __post_init__(self):
        if self.kind not in ("TS", "AS"):
            raise ValueError("kind must be 'TS' or 'AS'")
        if self.a < 1 or self.b < 0 or self.path_vns < 1:
            raise ValueError("invalid species sizes")


def classify(h: np.ndarray, vn_cols) -> InducedConfig:
    """Classify the subgraph induced by the given columns of h.

    Returns an InducedConfig carrying (a, b), the touched check rows
    with their in-set degrees, and the trapping/absorbing flags.
    """
    cols = tuple(sorted(int(c) for c in vn_cols))
    if not cols:
        raise ValueError("empty variable-node set")
    sub = np.asarray(h, dtype=bool)[:, list(cols)]
    deg = sub.sum(axis=1)
    touched = np.nonzero(deg)[0]
    odd = (deg[touched] % 2).astype(bool)
    b = int(odd.sum())
    # per VN: count even-degree vs odd-degree neighbors among touched checks
    even_rows = touched[~odd]
    n_even = sub[even_rows].sum(axis=0)
    n_odd = sub[touched[odd]].sum(axis=0)
    cfg = InducedConfig(
        vn_set=cols,
        a=len(cols),
        b=b,
        check_rows=tuple(int(r) for r in touched),
        check_degrees=tuple(int(d) for d in deg[touched]),
    )
    cfg._set_absorbing(bool(np.all(n_even > n_odd)))
    return cfg


def max_shortest_path_vns(template: np.ndarray) -> int:
    """Largest number of variable nodes on a shortest path between any
    two variables of the template, endpoints included.

    `template` is the induced incidence (checks x variables).  Two
    variables are adjacent when they share a check.  Raises on a
    disconnected template.
    """
    t = np.asarray(template, dtype=bool)
    n = t.shape[1]
    adj = (t.astype(np.int32).T @ t.astype(np.int32)) > 0
    np.fill_diagonal(adj, False)
    # BFS from every variable; dist counted in hops
    dist = np.full((n, n), -1, dtype=np.int64)
    for s in range(n):
        dist[s, s] = 0
        frontier = [s]
        d = 0
        while frontier:
            d += 1
            nxt = []
            for u in frontier:
                for v in np.nonzero(adj[u])[0]:
                    if dist[s, v] < 0:
                        dist[s, v] = d
                        nxt.append(int(v))
            frontier = nxt
    if np.any(dist < 0):
        raise ValueError("template is disconnected")
    return int(dist.max()) + 1


def replica_span(path_vns: int, m: int) -> int:
    """Number of consecutive replicas that can host such an object."""
    if path_vns < 1 or m < 0:
        raise ValueError("need path_vns >= 1 and m >= 0")
    return (path_vns - 1) * m + 1


def cycle_template(a: int, gamma: int = 3) -> np.ndarray:
    """Incidence of a single length-2a cycle through a variables, padded
    with gamma - 2 private degree-1 checks per variable."""
    if a < 2 or gamma < 2:
        raise ValueError("need a >= 2 and gamma >= 2")
    rows = a + a * (gamma - 2)
    t = np.zeros((rows, a), dtype=bool)
    for i in range(a):
        t[i, i] = True
        t[i, (i + 1) % a] = True
    r = a
    for j in range(a):
        for _ in range(gamma - 2):
            t[r, j] = True
            r += 1
    return t


def six_four_template() -> np.ndarray:
    """One (6, 4) absorbing set configuration for column weight 4.

    Two hub variables each share a check with all four spoke variables;
    the spokes pair up through two more checks and carry one unshared
    check each.
    """
    t = np.zeros((14, 6), dtype=bool)
    r = 0
    for hub in (0, 1):
        for spoke in (2, 3, 4, 5):
            t[r, hub] = True
            t[r, spoke] = True
            r += 1
    for x, y in ((2, 3), (4, 5)):
        t[r, x] = True
        t[r, y] = True
        r += 1
    for spoke in (2, 3, 4, 5):
        t[r, spoke] = True
        r += 1
    return t


def common_denominator(gamma: int) -> ObjectSpecies:
    """The cycle-6 triple, (3, 3(gamma-2)): absorbing for gamma = 3,
    trapping otherwise."""
    if gamma < 3:
        raise ValueError("need gamma >= 3")
    return ObjectSpecies(3, 3 * (gamma - 2), "AS" if gamma == 3 else "TS", 2)


def dominant_species(gamma: int):
    """Dominant error-floor objects by column weight, common denominator
    last.  Path widths for species with several non-isomorphic forms use
    the spanning-cycle bound floor(a/2) + 1."""
    table = {
        3: [ObjectSpecies(3, 3, "AS", 2), ObjectSpecies(4, 2, "AS", 3),
            ObjectSpecies(5, 3, "AS", 3)],
        4: [ObjectSpecies(4, 4, "AS", 2), ObjectSpecies(6, 4, "AS", 4),
            ObjectSpecies(3, 6, "TS", 2)],
        5: [ObjectSpecies(4, 8, "AS", 2), ObjectSpecies(8, 6, "AS", 5),
            ObjectSpecies(3, 9, "TS", 2)],
    }
    if gamma not in table:
        raise ValueError("no species table for gamma=%d" % gamma)
    return list(table[gamma])


def _column_rows(w: np.ndarray):
    return [np.nonzero(w[:, c])[0] for c in range(w.shape[1])]


def _adjacency_lists(w: np.ndarray):
    dense = w.astype(np.float32)
    shared = dense.T @ dense
    np.fill_diagonal(shared, 0.0)
    return [np.nonzero(shared[c] > 0)[0].tolist() for c in range(w.shape[1])]


def enumerate_objects(spec: SCCodeSpec, species: ObjectSpecies) -> CycleCensus:
    """Count lifted instances of a species via windowed search.

    Enumerates connected variable subsets of size species.a inside the
    first window of (path_vns - 1) * m + 1 replicas whose lowest column
    falls in replica 1, classifies each, and tags it with its exact
    replica span k.  The per-span counts weighted by (L - k + 1) give
    the full-matrix total.
    """
    if species.a > MAX_SUBSET_SIZE:
        raise ValueError(
            "subset search capped at a <= %d; use the closed-form cycle "
            "census for protograph-scale audits" % MAX_SUBSET_SIZE)
    chi = min(replica_span(species.path_vns, spec.m), spec.L)
    w = window(spec, 1, chi, lifted=True)
    ncols = w.shape[1]
    if ncols > MAX_WINDOW_COLUMNS:
        raise ValueError(
            "window has %d columns (cap %d); use the closed-form cycle "
            "census for protograph-scale audits" % (ncols, MAX_WINDOW_COLUMNS))
    cols_per_replica = spec.kappa * spec.p
    rows = _column_rows(w)
    nbr = _adjacency_lists(w)
    nrows = w.shape[0]
    a = species.a
    want_as = species.kind == "AS"
    per_span: dict = {}
    counts = np.zeros(nrows, dtype=np.int64)

    def matches(sub) -> bool:
        for c in sub:
            counts[rows[c]] += 1
        touched = np.concatenate([rows[c] for c in sub])
        uniq = np.unique(touched)
        deg = counts[uniq]
        odd = deg % 2 == 1
        ok = int(odd.sum()) == species.b
        if ok and want_as:
            for c in sub:
                d = counts[rows[c]]
                n_odd = int((d % 2 == 1).sum())
                if len(rows[c]) - n_odd <= n_odd:
                    ok = False
                    break
        for c in sub:
            counts[rows[c]] -= 1
        return ok

    def record(sub):
        if not matches(sub):
            return
        k = max(c // cols_per_replica for c in sub) + 1
        per_span[k] = per_span.get(k, 0) + 1

    def extend(sub, ext, blocked, root):
        # ext holds unprocessed extension candidates; blocked is the
        # subset plus every neighbor seen so far, which keeps each
        # connected subset from being produced twice.
        if len(sub) == a:
            record(sub)
            return
        ext = list(ext)
        while ext:
            cand = ext.pop()
            grow = [u for u in nbr[cand] if u > root and u not in blocked]
            extend(sub + [cand], ext + grow, blocked | set(grow), root)

    for root in range(min(cols_per_replica, ncols)):
        if a == 1:
            record([root])
            continue
        seeds = [u for u in nbr[root] if u > root]
        extend([root], seeds, {root} | set(seeds), root)
    return CycleCensus(spec.L, per_span)
