"""Brute-force reference implementations used to validate the closed forms.

Everything here trades speed for obviousness: direct subgraph walks over
dense matrices, no combinatorial shortcuts beyond basic pruning.
"""

from __future__ import annotations

import numpy as np

from scldpc.code_model import PartitionMatrix, sc_lift, sc_protograph
from scldpc.cycle_census import count_cycles4, count_cycles6


def random_partition(rng, gamma: int, kappa: int, m: int) -> PartitionMatrix:
    return PartitionMatrix(m, rng.integers(0, m + 1, size=(gamma, kappa)))


def protograph_cycles6(spec) -> int:
    return count_cycles6(sc_protograph(spec))


def lifted_cycles6(spec) -> int:
    return count_cycles6(sc_lift(spec))


def lifted_cycles4(spec) -> int:
    return count_cycles4(sc_lift(spec))


def direct_overlap(partition: PartitionMatrix, rows) -> int:
    """Columns where every listed row of the stacked components is 1."""
    g, m = partition.gamma, partition.m
    stacked = np.zeros(((m + 1) * g, partition.kappa), dtype=bool)
    for x in range(m + 1):
        stacked[x * g:(x + 1) * g] = partition.component(x)
    mask = np.ones(partition.kappa, dtype=bool)
    for r in rows:
        mask &= stacked[r]
    return int(mask.sum())


def connected_species_count(h: np.ndarray, species) -> int:
    """Species instances anywhere in h, by connected subset search."""
    h = np.asarray(h, dtype=bool)
    rows = [np.nonzero(h[:, c])[0] for c in range(h.shape[1])]
    dense = h.astype(np.float32)
    shared = dense.T @ dense
    np.fill_diagonal(shared, 0.0)
    nbr = [np.nonzero(shared[c] > 0)[0].tolist() for c in range(h.shape[1])]
    counts = np.zeros(h.shape[0], dtype=np.int64)
    a = species.a
    total = 0

    def matches(sub) -> bool:
        for c in sub:
            counts[rows[c]] += 1
        touched = np.unique(np.concatenate([rows[c] for c in sub]))
        deg = counts[touched]
        ok = int((deg % 2 == 1).sum()) == species.b
        if ok and species.kind == "AS":
            for c in sub:
                d = counts[rows[c]]
                n_odd = int((d % 2 == 1).sum())
                if len(rows[c]) - n_odd <= n_odd:
                    ok = False
                    break
        for c in sub:
            counts[rows[c]] -= 1
        return ok

    def extend(sub, ext, blocked, root):
        nonlocal total
        if len(sub) == a:
            if matches(sub):
                total += 1
            return
        ext = list(ext)
        while ext:
            cand = ext.pop()
            grow = [u for u in nbr[cand] if u > root and u not in blocked]
            extend(sub + [cand], ext + grow, blocked | set(grow), root)

    for root in range(h.shape[1]):
        if a == 1:
            if matches([root]):
                total += 1
            continue
        seeds = [u for u in nbr[root] if u > root]
        extend([root], seeds, {root} | set(seeds), root)
    return total


def all_subsets_species_count(h: np.ndarray, species) -> int:
    """Species instances by unrestricted subset search (small inputs only)."""
    import itertools

    h = np.asarray(h, dtype=bool)
    total = 0
    for sub in itertools.combinations(range(h.shape[1]), species.a):
        deg = h[:, list(sub)].sum(axis=1)
        touched = deg > 0
        if int((deg[touched] % 2 == 1).sum()) != species.b:
            continue
        if species.kind == "AS":
            evn = (deg % 2 == 0) & touched
            odd = deg % 2 == 1
            ne = h[evn][:, list(sub)].sum(axis=0)
            no = h[odd][:, list(sub)].sum(axis=0)
            if not np.all(ne > no):
                continue
        total += 1
    return total
