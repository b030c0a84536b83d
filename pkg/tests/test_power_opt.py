from __future__ import annotations

import numpy as np
import pytest

from scldpc.code_model import (CirculantBlockCode, PartitionMatrix, SCCodeSpec,
                               ab_code, partition_from_cutting_vector)
from scldpc.power_opt import (CpoConfig, CycleSystem, init_ab_powers,
                              refine_layout, run_cpo, weighted_theta)

from oracles import lifted_cycles4, random_partition


def uncut(gamma, kappa, m=1):
    return PartitionMatrix(m, np.zeros((gamma, kappa), dtype=np.int64))


def spec_for(gamma, kappa, p, partition, L):
    return SCCodeSpec(ab_code(gamma, kappa, p), partition, L)


def test_ab_power_values():
    f = init_ab_powers(3, 5, 7)
    assert f.shape == (3, 5)
    assert (f[0] == 0).all()
    assert (f[:, 0] == 0).all()
    assert f[2][3] == 6
    for i in range(3):
        for j in range(5):
            assert f[i][j] == (i * j) % 7


def test_ab_lift_has_no_four_cycles():
    spec = spec_for(3, 7, 7, uncut(3, 7), 4)
    assert lifted_cycles4(spec) == 0
    system = CycleSystem(spec)
    assert system.count_active4(spec.block.powers.ravel()) == 0


def test_theta_accounting():
    # every active cycle deposits m+1 on each of its 6 cells after folding
    rng = np.random.default_rng(4)
    for _ in range(12):
        g, kp, m, p = 3, 5, int(rng.integers(1, 3)), 5
        part = random_partition(rng, g, kp, m)
        spec = SCCodeSpec(CirculantBlockCode(g, kp, p, rng.integers(0, p, (g, kp))),
                          part, 8)
        system = CycleSystem(spec)
        f = spec.block.powers.ravel().astype(np.int64)
        theta_prime, theta = weighted_theta(system, f)
        n_active = int(system.active6(f).sum())
        assert theta.shape == (g, kp)
        assert np.isclose(theta.sum(), 6 * (m + 1) * n_active)
        assert np.isclose(theta_prime.sum(), theta.sum())


def test_f_sc_matches_weight_definition():
    rng = np.random.default_rng(9)
    part = random_partition(rng, 3, 5, 1)
    spec = spec_for(3, 5, 5, part, 9)
    system = CycleSystem(spec)
    f = spec.block.powers.ravel().astype(np.int64)
    active = system.active6(f)
    by_hand = sum(5 * (9 - int(k) + 1) for k in system.span6[active])
    assert system.f_sc(f) == by_hand


def test_accepted_rounds_strictly_decrease():
    part = partition_from_cutting_vector([2, 4, 6], 3, 7)
    spec = spec_for(3, 7, 7, part, 10)
    state = run_cpo(spec, CpoConfig(seed=1, subset_size_schedule=(1, 2)))
    assert state.trace
    for row in state.trace:
        if row.accepted:
            assert row.f_sc_after < row.f_sc_before
        else:
            assert row.f_sc_after == row.f_sc_before
    accepted = [r for r in state.trace if r.accepted]
    assert accepted, "expected at least one improving move on this code"
    assert state.f_sc == accepted[-1].f_sc_after
    assert CycleSystem(spec).f_sc(state.powers.ravel()) == state.f_sc
    assert CycleSystem(spec).count_active4(state.powers.ravel()) == 0


def test_deterministic_given_seed():
    part = partition_from_cutting_vector([2, 4, 6], 3, 7)
    spec = spec_for(3, 7, 7, part, 10)
    cfg = CpoConfig(seed=6, subset_size_schedule=(1, 2), max_stale_rounds=5)
    a = run_cpo(spec, cfg)
    b = run_cpo(spec, cfg)
    assert (a.powers == b.powers).all()
    assert a.f_sc == b.f_sc
    assert len(a.trace) == len(b.trace)
    for ra, rb in zip(a.trace, b.trace):
        assert (ra.cells, ra.powers, ra.f_sc_before, ra.f_sc_after,
                ra.accepted) == (rb.cells, rb.powers, rb.f_sc_before,
                                 rb.f_sc_after, rb.accepted)


def test_returns_immediately_at_target():
    part = partition_from_cutting_vector([2, 4, 6], 3, 7)
    spec = spec_for(3, 7, 7, part, 10)
    start = CycleSystem(spec).f_sc(spec.block.powers.ravel().astype(np.int64))
    state = run_cpo(spec, CpoConfig(seed=0, target_f_sc=start))
    assert state.rounds == 0
    assert state.trace == []
    assert state.reached_target
    assert (state.powers == spec.block.powers).all()


def test_rejects_four_cycle_start():
    part = uncut(3, 5)
    block = CirculantBlockCode(3, 5, 5, np.zeros((3, 5), dtype=np.int64))
    with pytest.raises(ValueError):
        run_cpo(SCCodeSpec(block, part, 6), CpoConfig(seed=0))


def test_sampling_requires_seed():
    part = partition_from_cutting_vector([2, 4, 6], 3, 7)
    spec = spec_for(3, 7, 7, part, 10)
    with pytest.raises(ValueError):
        run_cpo(spec, CpoConfig(power_candidates=50))


def test_window_too_short():
    part = random_partition(np.random.default_rng(0), 3, 5, 2)
    with pytest.raises(ValueError):
        run_cpo(spec_for(3, 5, 5, part, 2), CpoConfig(seed=0))


def test_config_validation():
    with pytest.raises(ValueError):
        CpoConfig(subset_size_schedule=())
    with pytest.raises(ValueError):
        CpoConfig(subset_size_schedule=(0, 1))
    with pytest.raises(ValueError):
        CpoConfig(power_candidates=0)


def test_refine_layout_preserves_pattern_multiset():
    rng = np.random.default_rng(2)
    part = random_partition(rng, 3, 6, 1)
    refined, val = refine_layout(part, 5, 8)
    before = sorted(tuple(int(v) for v in part.assign[:, j]) for j in range(6))
    after = sorted(tuple(int(v) for v in refined.assign[:, j]) for j in range(6))
    assert before == after
    spec = spec_for(3, 6, 5, refined, 8)
    f = spec.block.powers.ravel().astype(np.int64)
    assert CycleSystem(spec).f_sc(f) == val


def test_refine_layout_never_worse_than_input():
    rng = np.random.default_rng(7)
    for _ in range(6):
        part = random_partition(rng, 3, 5, 1)
        spec = spec_for(3, 5, 5, part, 8)
        start = CycleSystem(spec).f_sc(spec.block.powers.ravel().astype(np.int64))
        _, val = refine_layout(part, 5, 8)
        assert val <= start


def test_cpo_beats_starting_point():
    part = partition_from_cutting_vector([2, 4, 6], 3, 7)
    spec = spec_for(3, 7, 7, part, 15)
    start = CycleSystem(spec).f_sc(spec.block.powers.ravel().astype(np.int64))
    state = run_cpo(spec, CpoConfig(seed=3, subset_size_schedule=(1, 2, 3),
                                    max_stale_rounds=20))
    assert state.f_sc < start
