from __future__ import annotations

import math

import numpy as np
import pytest

from scldpc.overlaps import (IndependentOverlaps, column_patterns,
                             complete_overlaps, cover_matrix,
                             independent_overlap_sets, overlaps_from_partition,
                             overlaps_from_patterns, partition_from_overlaps,
                             partition_from_patterns, pattern_counts,
                             pattern_rows, restrict_to_independent,
                             valid_overlap_sets, validate_realizable)
from oracles import direct_overlap, random_partition


def test_valid_set_count_formula():
    for gamma in range(2, 6):
        for m in range(1, 4):
            sets = valid_overlap_sets(gamma, m)
            expect = sum(
                math.comb(gamma, d) * (m + 1) ** d for d in range(1, gamma + 1)
            )
            assert len(sets) == expect
            assert len(set(sets)) == len(sets)


def test_independent_set_count_formula():
    # degree-d sets over the first m components: m^d * C(gamma, d)
    for gamma in range(2, 6):
        for m in range(1, 4):
            sets = independent_overlap_sets(gamma, m)
            expect = sum(
                math.comb(gamma, d) * m**d for d in range(1, gamma + 1)
            )
            assert len(sets) == expect
            assert all(r < m * gamma for s in sets for r in s)


def test_canonical_order_degree_major_then_lex():
    sets = independent_overlap_sets(3, 1)
    assert list(sets) == [(0,), (1,), (2,), (0, 1), (0, 2), (1, 2), (0, 1, 2)]


def test_overlap_table_lookup_rules():
    part = random_partition(np.random.default_rng(0), 3, 7, 1)
    ov = overlaps_from_partition(part)
    assert ov.get(()) == 7
    # same residue twice in distinct components is structurally empty
    assert ov.get((0, 3)) == 0
    with pytest.raises(KeyError):
        ov.get((0, 99))


def test_direct_overlaps_match_bruteforce():
    rng = np.random.default_rng(1)
    for _ in range(40):
        g = int(rng.integers(2, 5))
        k = int(rng.integers(2, 8))
        m = int(rng.integers(1, 4))
        part = random_partition(rng, g, k, m)
        ov = overlaps_from_partition(part)
        for rows in valid_overlap_sets(g, m):
            assert ov.get(rows) == direct_overlap(part, rows)


def test_completion_reproduces_all_overlaps():
    rng = np.random.default_rng(2)
    for _ in range(40):
        g = int(rng.integers(2, 5))
        k = int(rng.integers(2, 8))
        m = int(rng.integers(1, 3))
        part = random_partition(rng, g, k, m)
        ind = restrict_to_independent(overlaps_from_partition(part))
        completed = complete_overlaps(ind)
        for rows in valid_overlap_sets(g, m):
            assert completed.get(rows) == direct_overlap(part, rows), rows


def test_completed_tables_are_monotone():
    rng = np.random.default_rng(3)
    part = random_partition(rng, 4, 9, 2)
    ov = complete_overlaps(restrict_to_independent(overlaps_from_partition(part)))
    sets = valid_overlap_sets(4, 2)
    for s in sets:
        for t in sets:
            if set(t) < set(s):
                assert ov.get(s) <= ov.get(t)


def test_pattern_counts_sum_to_kappa():
    rng = np.random.default_rng(4)
    for _ in range(20):
        g = int(rng.integers(2, 4))
        k = int(rng.integers(2, 9))
        m = int(rng.integers(1, 3))
        part = random_partition(rng, g, k, m)
        ind = restrict_to_independent(overlaps_from_partition(part))
        pc = pattern_counts(ind)
        assert sum(pc.counts) == k
        assert min(pc.counts) >= 0


def test_pattern_roundtrip():
    rng = np.random.default_rng(5)
    for _ in range(20):
        g = int(rng.integers(2, 4))
        k = int(rng.integers(2, 9))
        m = int(rng.integers(1, 3))
        part = random_partition(rng, g, k, m)
        ind = restrict_to_independent(overlaps_from_partition(part))
        pc = pattern_counts(ind)
        back = restrict_to_independent(overlaps_from_patterns(pc))
        assert back.values == ind.values


def test_cover_matrix_linear_map():
    g, m, k = 3, 1, 6
    rng = np.random.default_rng(6)
    part = random_partition(rng, g, k, m)
    ind = restrict_to_independent(overlaps_from_partition(part))
    pc = pattern_counts(ind)
    mat = cover_matrix(g, m, independent_overlap_sets(g, m))
    t = mat @ np.array(pc.counts)
    assert tuple(int(v) for v in t) == ind.values


def test_pattern_rows_definition():
    # pattern (1, 0, 2) puts row 0 in component 1, row 1 in 0, row 2 in 2;
    # stacked indices come back sorted
    assert pattern_rows((1, 0, 2), 3) == (1, 3, 8)
    assert list(column_patterns(2, 1)) == [(0, 0), (0, 1), (1, 0), (1, 1)]


def test_realizability_accepts_real_partition():
    rng = np.random.default_rng(7)
    part = random_partition(rng, 3, 8, 1)
    ind = restrict_to_independent(overlaps_from_partition(part))
    report = validate_realizable(ind)
    assert report
    assert report.total == 8


def test_realizability_rejects_inconsistent_vector():
    # a pair overlap larger than a single-row overlap is impossible
    bad = IndependentOverlaps(3, 1, 6, (1, 1, 1, 5, 0, 0, 0))
    report = validate_realizable(bad)
    assert not report
    assert report.negative_patterns


def test_partition_from_overlaps_roundtrip():
    rng = np.random.default_rng(8)
    for _ in range(20):
        g = int(rng.integers(2, 4))
        k = int(rng.integers(3, 9))
        m = int(rng.integers(1, 3))
        part = random_partition(rng, g, k, m)
        ind = restrict_to_independent(overlaps_from_partition(part))
        rebuilt = partition_from_overlaps(ind)
        ind2 = restrict_to_independent(overlaps_from_partition(rebuilt))
        assert ind2.values == ind.values


def test_partition_from_patterns_rejects_bad_totals():
    bad = IndependentOverlaps(3, 1, 6, (1, 1, 1, 5, 0, 0, 0))
    with pytest.raises(ValueError):
        partition_from_overlaps(bad)


def test_layout_is_lexicographic_by_pattern():
    rng = np.random.default_rng(9)
    part = random_partition(rng, 3, 8, 2)
    ind = restrict_to_independent(overlaps_from_partition(part))
    rebuilt = partition_from_overlaps(ind)
    cols = [tuple(rebuilt.assign[:, j]) for j in range(8)]
    assert cols == sorted(cols)
