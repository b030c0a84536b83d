from __future__ import annotations

import numpy as np
import pytest

from scldpc.code_model import (PartitionMatrix, SCCodeSpec, ab_code,
                               partition_from_cutting_vector, sc_lift)
from scldpc.cycle_census import active_cycles6
from scldpc.trapping_sets import (MAX_SUBSET_SIZE, ObjectSpecies, classify,
                                  common_denominator, cycle_template,
                                  dominant_species, enumerate_objects,
                                  max_shortest_path_vns, replica_span,
                                  six_four_template)

from oracles import (all_subsets_species_count, connected_species_count,
                     random_partition)


def four_two_template():
    """Column weight 3: an eight-cycle with a chord and two unshared checks."""
    t = np.zeros((7, 4), dtype=bool)
    for r, (x, y) in enumerate([(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]):
        t[r, x] = True
        t[r, y] = True
    t[5, 1] = True
    t[6, 3] = True
    return t


def test_classify_cycle_triple():
    cfg = classify(cycle_template(3, 3), [0, 1, 2])
    assert (cfg.a, cfg.b) == (3, 3)
    assert cfg.is_trapping_set
    assert cfg.is_absorbing_set
    assert cfg.check_degrees == (2, 2, 2, 1, 1, 1)


def test_classify_four_two_absorbing():
    cfg = classify(four_two_template(), range(4))
    assert (cfg.a, cfg.b) == (4, 2)
    assert cfg.is_absorbing_set


def test_classify_trapping_only():
    # column weight 4 cycle triple: each variable sees two odd checks
    cfg = classify(cycle_template(3, 4), [0, 1, 2])
    assert (cfg.a, cfg.b) == (3, 6)
    assert cfg.is_trapping_set
    assert not cfg.is_absorbing_set


def test_classify_six_four():
    cfg = classify(six_four_template(), range(6))
    assert (cfg.a, cfg.b) == (6, 4)
    assert cfg.is_absorbing_set


def test_classify_subset_of_matrix():
    h = np.zeros((5, 6), dtype=np.int64)
    h[:3, :3] = cycle_template(3, 2)[:, :]
    cfg = classify(h, [0, 1, 2])
    assert (cfg.a, cfg.b) == (3, 0)
    assert cfg.check_rows == (0, 1, 2)


def test_classify_rejects_empty():
    with pytest.raises(ValueError):
        classify(np.eye(3), [])


def test_path_width_examples():
    assert max_shortest_path_vns(cycle_template(3)) == 2
    assert max_shortest_path_vns(cycle_template(4)) == 3
    assert max_shortest_path_vns(cycle_template(5)) == 3
    assert max_shortest_path_vns(cycle_template(6)) == 4
    assert max_shortest_path_vns(four_two_template()) == 3
    assert max_shortest_path_vns(six_four_template()) == 3


def test_path_width_requires_connected():
    t = np.zeros((4, 4), dtype=bool)
    t[0, 0] = t[0, 1] = True
    t[1, 2] = t[1, 3] = True
    with pytest.raises(ValueError):
        max_shortest_path_vns(t)


def test_replica_span_values():
    assert replica_span(2, 1) == 2
    assert replica_span(3, 1) == 3
    assert replica_span(2, 2) == 3
    assert replica_span(4, 2) == 7
    assert replica_span(1, 3) == 1
    with pytest.raises(ValueError):
        replica_span(0, 1)


def test_common_denominator_by_weight():
    assert common_denominator(3) == ObjectSpecies(3, 3, "AS", 2)
    assert common_denominator(4) == ObjectSpecies(3, 6, "TS", 2)
    assert common_denominator(5) == ObjectSpecies(3, 9, "TS", 2)
    with pytest.raises(ValueError):
        common_denominator(2)


def test_dominant_species_tables():
    by3 = dominant_species(3)
    assert [(s.a, s.b, s.kind) for s in by3] == [
        (3, 3, "AS"), (4, 2, "AS"), (5, 3, "AS")]
    by4 = dominant_species(4)
    assert [(s.a, s.b, s.kind) for s in by4] == [
        (4, 4, "AS"), (6, 4, "AS"), (3, 6, "TS")]
    by5 = dominant_species(5)
    assert [(s.a, s.b, s.kind) for s in by5] == [
        (4, 8, "AS"), (8, 6, "AS"), (3, 9, "TS")]
    # template-derived widths never exceed the tabulated bounds
    assert max_shortest_path_vns(six_four_template()) <= by4[1].path_vns
    with pytest.raises(ValueError):
        dominant_species(6)


def test_species_validation():
    with pytest.raises(ValueError):
        ObjectSpecies(3, 3, "XX", 2)
    with pytest.raises(ValueError):
        ObjectSpecies(0, 3, "TS", 2)


def test_classify_invariant_under_column_permutation():
    rng = np.random.default_rng(5)
    h = (rng.random((8, 10)) < 0.35).astype(np.int64)
    cols = [1, 4, 7]
    perm = rng.permutation(10)
    hp = h[:, perm]
    mapped = [int(np.nonzero(perm == c)[0][0]) for c in cols]
    a = classify(h, cols)
    b = classify(hp, mapped)
    assert (a.a, a.b, sorted(a.check_degrees)) == (b.a, b.b,
                                                   sorted(b.check_degrees))
    assert a.is_absorbing_set == b.is_absorbing_set


def test_windowed_count_matches_full_matrix_search():
    rng = np.random.default_rng(1)
    for _ in range(3):
        part = random_partition(rng, 3, 5, 1)
        spec = SCCodeSpec(ab_code(3, 5, 5), part, 4)
        h = sc_lift(spec)
        for species in (common_denominator(3), ObjectSpecies(4, 2, "AS", 3)):
            census = enumerate_objects(spec, species)
            assert census.total == connected_species_count(h, species)


def test_connected_search_agrees_with_all_subsets_tiny():
    rng = np.random.default_rng(3)
    part = random_partition(rng, 3, 4, 1)
    spec = SCCodeSpec(ab_code(3, 4, 5), part, 3)
    h = sc_lift(spec)
    species = common_denominator(3)
    assert connected_species_count(h, species) == \
        all_subsets_species_count(h, species)


def test_cycle_triples_equal_active_census():
    # in a 4-cycle-free lift each surviving 6-cycle is one (3, 3) triple
    part = partition_from_cutting_vector([1, 3, 4], 3, 5)
    spec = SCCodeSpec(ab_code(3, 5, 5), part, 5)
    census = enumerate_objects(spec, common_denominator(3))
    active = active_cycles6(spec)
    assert census.per_span == {k: v * spec.p
                              for k, v in active.active_per_span.items() if v}
    assert census.total == active.total


def test_subset_size_cap():
    part = partition_from_cutting_vector([1, 3, 4], 3, 5)
    spec = SCCodeSpec(ab_code(3, 5, 5), part, 5)
    with pytest.raises(ValueError, match="closed-form"):
        enumerate_objects(spec, ObjectSpecies(MAX_SUBSET_SIZE + 1, 2, "AS", 2))


def test_window_size_cap():
    part = PartitionMatrix(1, np.zeros((3, 17), dtype=np.int64))
    spec = SCCodeSpec(ab_code(3, 17, 131), part, 4)
    with pytest.raises(ValueError, match="columns"):
        enumerate_objects(spec, ObjectSpecies(3, 3, "AS", 2))
