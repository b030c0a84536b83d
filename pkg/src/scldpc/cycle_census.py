"""Counting 6-cycles (and 4-cycles) in coupled protographs and their lifts.

A 6-cycle is an unordered set of three rows plus an injective assignment of
pairwise-shared columns: column c12 carries 1s in rows r1 and r2, c13 in r1
and r3, c23 in r2 and r3, with the three columns distinct.  Three all-ones
rows over three columns therefore contain 6 cycles, the Hamiltonian cycles
of K_{3,3}.

Counts in the coupled protograph decompose by the replica where a cycle's
leftmost column sits and by its span k (number of consecutive replicas its
columns touch).  The count of span-k cycles starting in a replica does not
depend on the replica, so the total is sum_k (L-k+1) * F1[k], and F1[k] is
a polynomial in the column-overlap parameters of the partition, assembled
here from three combinatorial kernels (one per way of distributing the
cycle's columns over one, two, or three replicas).

Lifting replaces each protograph 1 by a p x p circulant sigma**f.  A
protograph cycle walks cells (h1,l1),(h1,l2),(h2,l2),(h2,l3),(h3,l3),
(h3,l1); it yields p lifted cycles when its alternating power sum
f(h1,l1) - f(h1,l2) + f(h2,l2) - f(h2,l3) + f(h3,l3) - f(h3,l1) is 0 mod p
and none otherwise; such a cycle is called active.  The power of any
coupled-matrix cell depends only on its row residue mod gamma and column
residue mod kappa, so activity can be decided inside one window.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .code_model import SCCodeSpec, window
from .overlaps import OverlapSet, overlaps_from_partition

# ---------------------------------------------------------------------------
# brute-force enumeration (oracle-grade, definition-faithful)


def _supports(h: np.ndarray):
    h = np.asarray(h)
    row_cols = [set(np.flatnonzero(h[r]).tolist()) for r in range(h.shape[0])]
    col_rows = [set(np.flatnonzero(h[:, c]).tolist()) for c in range(h.shape[1])]
    return row_cols, col_rows


def find_cycles6(h: np.ndarray):
    """All 6-cycles of a 0/1 matrix as ((r1, r2, r3), (c12, c13, c23)).

    Rows are sorted ascending; each cycle appears exactly once.
    """
    row_cols, col_rows = _supports(h)
    n_rows = len(row_cols)
    neighbors = [set() for _ in range(n_rows)]
    for rows in col_rows:
        for r, s in itertools.combinations(sorted(rows), 2):
            neighbors[r].add(s)
    out = []
    for r1 in range(n_rows):
        later = sorted(neighbors[r1])
        for r2, r3 in itertools.combinations(later, 2):
            if r3 not in neighbors[r2]:
                continue
            o12 = row_cols[r1] & row_cols[r2]
            o13 = row_cols[r1] & row_cols[r3]
            o23 = row_cols[r2] & row_cols[r3]
            for c12 in sorted(o12):
                for c13 in sorted(o13):
                    if c13 == c12:
                        continue
                    for c23 in sorted(o23):
                        if c23 != c12 and c23 != c13:
                            out.append(((r1, r2, r3), (c12, c13, c23)))
    return out


def count_cycles6(h: np.ndarray) -> int:
    """Number of 6-cycles, by direct enumeration."""
    return len(find_cycles6(h))


def find_cycles4(h: np.ndarray):
    """All 4-cycles as ((r1, r2), (c1, c2)), both pairs sorted ascending."""
    row_cols, col_rows = _supports(h)
    n_rows = len(row_cols)
    neighbors = [set() for _ in range(n_rows)]
    for rows in col_rows:
        for r, s in itertools.combinations(sorted(rows), 2):
            neighbors[r].add(s)
    out = []
    for r1 in range(n_rows):
        for r2 in sorted(neighbors[r1]):
            shared = sorted(row_cols[r1] & row_cols[r2])
            for c1, c2 in itertools.combinations(shared, 2):
                out.append(((r1, r2), (c1, c2)))
    return out


def count_cycles4(h: np.ndarray) -> int:
    return len(find_cycles4(h))


# ---------------------------------------------------------------------------
# closed-form protograph census

def _pos(x):
    return x if x > 0 else 0


def cycles6_one_replica(n_abc, n_ab, n_ac, n_bc):
    """6-cycles through three rows whose columns all lie in one column group.

    Arguments are the triple overlap and the three pairwise overlaps of the
    rows over that group's columns.  Case split on how many of the chosen
    columns are triple-overlap columns keeps every product nonnegative.
    """
    return (
        n_abc * _pos(n_abc - 1) * _pos(n_bc - 2)
        + n_abc * (n_ac - n_abc) * _pos(n_bc - 1)
        + (n_ab - n_abc) * n_abc * _pos(n_bc - 1)
        + (n_ab - n_abc) * (n_ac - n_abc) * n_bc
    )


def cycles6_two_replicas(n_abc, n_ab, n_ac, n_far):
    """6-cycles with two columns in one group and the third in another.

    n_ab, n_ac, n_abc describe the shared group (through row a and the pair
    b, c); n_far is the overlap of b and c over the second group, whose
    column can never collide with the first two.
    """
    return n_abc * _pos(n_ac - 1) * n_far + (n_ab - n_abc) * n_ac * n_far


def cycles6_three_replicas(n_ab, n_ac, n_bc):
    """6-cycles whose three columns sit in three distinct column groups."""
    return n_ab * n_ac * n_bc


def span_terms(gamma: int, m: int, k: int):
    """Symbolic summands of the span-k starter count F1[k].

    Each term is a kernel tag plus row-set keys to look up in a completed
    overlap table.  Row indices of the stacked component matrix are shifted
    so that every key lands back in [0, (m+1)*gamma); sets with repeated
    residues contribute 0 and are skipped at evaluation time.
    """
    g, rows = gamma, range((m + 1) * gamma)
    terms = []
    if k == 1:
        for i1, i2, i3 in itertools.combinations(rows, 3):
            terms.append(
                ("A", (i1, i2, i3), (i1, i2), (i1, i3), (i2, i3))
            )
        return terms
    if k == 2:
        for i1 in rows:
            for i2, i3 in itertools.combinations(range(g, (m + 1) * g), 2):
                terms.append(
                    ("B", (i1, i2, i3), (i1, i2), (i1, i3), (i2 - g, i3 - g))
                )
            for i2, i3 in itertools.combinations(range(m * g), 2):
                terms.append(
                    ("B", (i1, i2, i3), (i1, i2), (i1, i3), (i2 + g, i3 + g))
                )
        return terms
    # k >= 3: far pair fully left, fully right, or split by a middle replica q
    for i1 in rows:
        for i2, i3 in itertools.combinations(range((k - 1) * g, (m + 1) * g), 2):
            terms.append(
                ("B", (i1, i2, i3), (i1, i2), (i1, i3),
                 (i2 - (k - 1) * g, i3 - (k - 1) * g))
            )
        for i2, i3 in itertools.combinations(range((m - k + 2) * g), 2):
            terms.append(
                ("B", (i1, i2, i3), (i1, i2), (i1, i3),
                 (i2 + (k - 1) * g, i3 + (k - 1) * g))
            )
    for q in range(2, k):
        for i1 in range((q - 1) * g, (m + 1) * g):
            for i2 in range((k - 1) * g, (m + 1) * g):
                for i3 in range((k - 1) * g, (m + q) * g):
                    terms.append(
                        ("C", (i1, i2),
                         (i1 - (q - 1) * g, i3 - (q - 1) * g),
                         (i2 - (k - 1) * g, i3 - (k - 1) * g))
                    )
    return terms


def _eval_term(term, ov: OverlapSet) -> int:
    if term[0] == "A":
        _, abc, ab, ac, bc = term
        return cycles6_one_replica(ov.get(abc), ov.get(ab), ov.get(ac), ov.get(bc))
    if term[0] == "B":
        _, abc, ab, ac, far = term
        return cycles6_two_replicas(ov.get(abc), ov.get(ab), ov.get(ac), ov.get(far))
    _, ab, ac, bc = term
    return cycles6_three_replicas(ov.get(ab), ov.get(ac), ov.get(bc))


def count_span(ov: OverlapSet, k: int) -> int:
    """Closed-form F1[k]: span-k 6-cycles starting in a fixed replica."""
    if k < 1 or k > ov.m + 1:
        raise ValueError(f"span {k} outside [1, {ov.m + 1}]")
    return sum(_eval_term(t, ov) for t in span_terms(ov.gamma, ov.m, k))


@dataclass(frozen=True)
class CycleCensus:
    """Per-span starter counts and the weighted protograph total."""

    L: int
    per_span: dict

    @property
    def total(self) -> int:
        return sum(
            (self.L - k + 1) * n for k, n in self.per_span.items() if k <= self.L
        )


def census_protograph(ov: OverlapSet, L: int) -> CycleCensus:
    """Closed-form 6-cycle census of the coupled protograph with L replicas."""
    spans = range(1, min(ov.m + 1, L) + 1)
    return CycleCensus(L, {k: count_span(ov, k) for k in spans})


def census_from_partition(partition, L: int) -> CycleCensus:
    return census_protograph(overlaps_from_partition(partition), L)


# ---------------------------------------------------------------------------
# starter cycles and activity in the lifted code


def _col_block(c: int, kappa: int) -> int:
    return c // kappa


def starter_cycles6(spec: SCCodeSpec):
    """Protograph 6-cycles whose leftmost column lies in replica 1.

    Enumerated inside the maximal window (span limit min(m+1, L)); every
    other cycle of the coupled protograph is a replica shift of one of
    these.  Returns (span, rows, cols) triples with window coordinates.
    """
    chi = min(spec.m + 1, spec.L)
    win = window(spec, 1, chi)
    out = []
    for rows, cols in find_cycles6(win):
        blocks = [_col_block(c, spec.kappa) for c in cols]
        if min(blocks) != 0:
            continue
        out.append((max(blocks) + 1, rows, cols))
    return out


def starter_cycles4(spec: SCCodeSpec):
    """Protograph 4-cycles with leftmost column in replica 1, as (span, rows, cols)."""
    chi = min(spec.m + 1, spec.L)
    win = window(spec, 1, chi)
    out = []
    for rows, cols in find_cycles4(win):
        blocks = [_col_block(c, spec.kappa) for c in cols]
        if min(blocks) != 0:
            continue
        out.append((max(blocks) + 1, rows, cols))
    return out


def cycle6_power_sum(spec: SCCodeSpec, rows, cols) -> int:
    """Alternating power sum of a protograph 6-cycle, reduced mod p."""
    f = spec.block.powers
    g, kp = spec.gamma, spec.kappa
    r1, r2, r3 = (r % g for r in rows)
    c12, c13, c23 = (c % kp for c in cols)
    s = (
        f[r1, c13] - f[r1, c12]
        + f[r2, c12] - f[r2, c23]
        + f[r3, c23] - f[r3, c13]
    )
    return int(s % spec.p)


def cycle4_power_sum(spec: SCCodeSpec, rows, cols) -> int:
    f = spec.block.powers
    g, kp = spec.gamma, spec.kappa
    r1, r2 = (r % g for r in rows)
    c1, c2 = (c % kp for c in cols)
    return int((f[r1, c1] - f[r1, c2] + f[r2, c2] - f[r2, c1]) % spec.p)


@dataclass(frozen=True)
class ActiveCensus:
    """Active (lift-surviving) starter counts and the lifted cycle total."""

    L: int
    p: int
    per_span: dict
    active_per_span: dict

    @property
    def total(self) -> int:
        """Number of 6-cycles in the lifted coupled matrix."""
        return self.p * sum(
            (self.L - k + 1) * n
            for k, n in self.active_per_span.items()
            if k <= self.L
        )


def active_cycles6(spec: SCCodeSpec) -> ActiveCensus:
    """Classify starter 6-cycles by span and activity under the given powers."""
    chi = min(spec.m + 1, spec.L)
    per_span = {k: 0 for k in range(1, chi + 1)}
    active = {k: 0 for k in range(1, chi + 1)}
    for k, rows, cols in starter_cycles6(spec):
        per_span[k] += 1
        if cycle6_power_sum(spec, rows, cols) == 0:
            active[k] += 1
    return ActiveCensus(spec.L, spec.p, per_span, active)


def count_lifted_cycles4(spec: SCCodeSpec) -> int:
    """Number of 4-cycles in the lifted coupled matrix, via starter activity."""
    total = 0
    for k, rows, cols in starter_cycles4(spec):
        if k > spec.L:
            continue
        if cycle4_power_sum(spec, rows, cols) == 0:
            total += (spec.L - k + 1) * spec.p
    return total
