"""Greedy circulant power optimization for coupled codes.

The cycle structure of the coupled protograph is fixed by the partition;
circulant powers only decide which protograph cycles survive lifting.  Both
the survival condition and the 4-cycle condition depend on a cell's row
residue mod gamma and column residue mod kappa only, so the whole search
state is the gamma x kappa power matrix and a precomputed list of starter
cycles in the first window.

Each round scores residue cells by theta, a weighted count of active cycles
through them, picks the highest-scoring subset of the current schedule
size, and tries candidate power assignments for it; the best candidate is
accepted only if it strictly lowers the lifted 6-cycle count while keeping
the lifted graph free of 4-cycles.  Failure escalates the subset size;
exhausting the schedule re-samples candidates (when sampling) until the
stale-round limit.  Everything is deterministic given the seed.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass

import numpy as np

from .code_model import PartitionMatrix, SCCodeSpec, ab_powers
from .cycle_census import starter_cycles4, starter_cycles6

init_ab_powers = ab_powers


@dataclass(frozen=True)
class CpoConfig:
    """Knobs for the power search; defaults follow the common small-code setup."""

    seed: int | None = None
    subset_size_schedule: tuple = (1, 2, 3)
    power_candidates: int | None = None  # None: exhaustive joint assignments
    exhaustive_cap: int = 8192  # joint assignments above this are sampled
    target_f_sc: int = 0
    max_stale_rounds: int = 60
    max_rounds: int | None = None
    time_budget_s: float | None = None

    def __post_init__(self):
        if not self.subset_size_schedule or min(self.subset_size_schedule) < 1:
            raise ValueError("subset sizes must be >= 1")
        if self.power_candidates is not None and self.power_candidates < 1:
            raise ValueError("candidate sample size must be >= 1")


@dataclass
class TraceRow:
    round: int
    cells: tuple
    powers: tuple
    f_sc_before: int
    f_sc_after: int
    accepted: bool


@dataclass
class CpoState:
    """Final powers plus the bookkeeping the optimizer maintained."""

    powers: np.ndarray
    f_sc: int
    theta: np.ndarray
    theta_prime: np.ndarray
    trace: list
    rounds: int
    reached_target: bool


_SIGNS6 = np.array([1, -1, 1, -1, 1, -1], dtype=np.int64)
_SIGNS4 = np.array([1, -1, 1, -1], dtype=np.int64)


class CycleSystem:
    """Starter cycles of a coupled spec in residue-cell coordinates.

    Cycles are stored cell-by-cell in alternating walk order, so a signed
    sum of powers over the cells is 0 mod p exactly for the cycles that
    survive lifting.  Powers enter only through the residue cell index
    (row mod gamma) * kappa + (col mod kappa).
    """

    def __init__(self, spec: SCCodeSpec):
        g, kp, m, L, p = spec.gamma, spec.kappa, spec.m, spec.L, spec.p
        self.spec = spec
        self.gamma, self.kappa, self.m, self.L, self.p = g, kp, m, L, p
        self.window_cols = min(m + 1, L) * kp

        six = starter_cycles6(spec)
        res6 = np.zeros((len(six), 6), dtype=np.int64)
        win6 = np.zeros((len(six), 6), dtype=np.int64)
        span6 = np.zeros(len(six), dtype=np.int64)
        for n, (k, (r1, r2, r3), (c12, c13, c23)) in enumerate(six):
            walk = [(r1, c13), (r1, c12), (r2, c12), (r2, c23), (r3, c23), (r3, c13)]
            res6[n] = [(r % g) * kp + (c % kp) for r, c in walk]
            win6[n] = [r * self.window_cols + c for r, c in walk]
            span6[n] = k
        self.res6, self.win6, self.span6 = res6, win6, span6
        self.weight6 = np.maximum(L - span6 + 1, 0) * p
        self.copies6 = m - span6 + 2
        self.wk6 = (m + 1) / np.maximum(self.copies6, 1)

        four = starter_cycles4(spec)
        res4 = np.zeros((len(four), 4), dtype=np.int64)
        for n, (k, (r1, r2), (c1, c2)) in enumerate(four):
            walk = [(r1, c1), (r1, c2), (r2, c2), (r2, c1)]
            res4[n] = [(r % g) * kp + (c % kp) for r, c in walk]
        self.res4 = res4

        ncells = g * kp
        self.cell_to_6 = [
            np.unique(np.nonzero((res6 == c).any(axis=1))[0]) for c in range(ncells)
        ] if len(six) else [np.array([], dtype=np.int64)] * ncells
        self.cell_to_4 = [
            np.unique(np.nonzero((res4 == c).any(axis=1))[0]) for c in range(ncells)
        ] if len(four) else [np.array([], dtype=np.int64)] * ncells

    def sums6(self, f_flat: np.ndarray, idx=None) -> np.ndarray:
        cells = self.res6 if idx is None else self.res6[idx]
        return (f_flat[cells] * _SIGNS6).sum(axis=1)

    def sums4(self, f_flat: np.ndarray, idx=None) -> np.ndarray:
        cells = self.res4 if idx is None else self.res4[idx]
        return (f_flat[cells] * _SIGNS4).sum(axis=1)

    def active6(self, f_flat: np.ndarray) -> np.ndarray:
        return self.sums6(f_flat) % self.p == 0

    def f_sc(self, f_flat: np.ndarray) -> int:
        if not len(self.res6):
            return 0
        return int(self.weight6[self.active6(f_flat)].sum())

    def count_active4(self, f_flat: np.ndarray) -> int:
        if not len(self.res4):
            return 0
        return int((self.sums4(f_flat) % self.p == 0).sum())


def weighted_theta(system: CycleSystem, f_flat: np.ndarray):
    """Window-cell and residue-cell weighted active-cycle counts.

    Every span-k starter cycle reappears m-k+2 times down the maximal
    window; each copy deposits (m+1)/(m-k+2) on its six cells, so after
    folding the window by residues each active cycle contributes m+1 per
    cell it touches.
    """
    g, kp, m = system.gamma, system.kappa, system.m
    width = (m + 1) * kp
    theta_prime = np.zeros((2 * m + 1) * g * width)
    if len(system.res6):
        act = system.active6(f_flat)
        shift = g * width + kp
        for t in range(m + 1):
            live = act & (system.copies6 > t)
            if not live.any():
                continue
            np.add.at(
                theta_prime,
                (system.win6[live] + t * shift).ravel(),
                np.repeat(system.wk6[live], 6),
            )
    theta_prime = theta_prime.reshape((2 * m + 1) * g, width)
    theta = theta_prime.reshape(2 * m + 1, g, m + 1, kp).sum(axis=(0, 2))
    return theta_prime, theta


_CAND_CHUNK = 32768


def _candidate_chunks(rng, p: int, size: int, policy, cap: int):
    """Joint power assignments for a subset, in deterministic order,
    yielded in blocks to bound memory."""
    total = p**size
    if policy is None and total <= cap:
        for start in range(0, total, _CAND_CHUNK):
            idx = np.arange(start, min(start + _CAND_CHUNK, total), dtype=np.int64)
            block = np.empty((len(idx), size), dtype=np.int64)
            for j in range(size - 1, -1, -1):
                block[:, j] = idx % p
                idx = idx // p
            yield block
        return
    n = policy if policy is not None else cap
    while n > 0:
        take = min(n, _CAND_CHUNK)
        yield rng.integers(0, p, size=(take, size), dtype=np.int64)
        n -= take


def run_cpo(spec: SCCodeSpec, config: CpoConfig) -> CpoState:
    """Minimize the lifted 6-cycle count by local power changes.

    Starts from spec.block.powers, which must not induce lifted 4-cycles.
    Accepted moves strictly decrease the count and never create a 4-cycle;
    the trace logs one row per round (the best candidate tried).
    """
    if spec.L < spec.m + 1:
        raise ValueError("power optimization expects L >= m + 1")
    system = CycleSystem(spec)
    p, g, kp = spec.p, spec.gamma, spec.kappa
    f = spec.block.powers.astype(np.int64).copy()
    f_flat = f.ravel()
    if system.count_active4(f_flat):
        raise ValueError("initial powers induce lifted 4-cycles; start cycle-4-free")

    rng = np.random.default_rng(config.seed)
    sampling = config.power_candidates is not None or any(
        p**s > config.exhaustive_cap for s in config.subset_size_schedule
    )
    if sampling and config.seed is None:
        raise ValueError("a seed is required when candidates are sampled")

    f_sc = system.f_sc(f_flat)
    theta_prime, theta = weighted_theta(system, f_flat)
    trace: list[TraceRow] = []
    rounds = 0
    stale = 0
    level = 0
    start = time.monotonic()

    def cell_order():
        flat = theta.ravel()
        order = np.lexsort(
            (np.arange(flat.size) % kp, np.arange(flat.size) // kp, -flat)
        )
        return order

    while f_sc > config.target_f_sc:
        if config.max_rounds is not None and rounds >= config.max_rounds:
            break
        if (
            config.time_budget_s is not None
            and time.monotonic() - start > config.time_budget_s
        ):
            break
        size = min(config.subset_size_schedule[level], g * kp)
        order = cell_order()
        if stale == 0:
            subset = order[:size]
        else:
            # retry passes roam: sample the subset from the high-score
            # region instead of always taking the exact top
            pool = order[: min(len(order), max(4 * size, 12))]
            subset = np.sort(rng.choice(pool, size=size, replace=False))
        rounds += 1

        touched6 = (
            np.unique(np.concatenate([system.cell_to_6[c] for c in subset]))
            if len(system.res6)
            else np.array([], dtype=np.int64)
        )
        touched4 = (
            np.unique(np.concatenate([system.cell_to_4[c] for c in subset]))
            if len(system.res4)
            else np.array([], dtype=np.int64)
        )
        coef6 = np.zeros((len(touched6), size), dtype=np.int64)
        for j, c in enumerate(subset):
            coef6[:, j] = ((system.res6[touched6] == c) * _SIGNS6).sum(axis=1)
        coef4 = np.zeros((len(touched4), size), dtype=np.int64)
        for j, c in enumerate(subset):
            coef4[:, j] = ((system.res4[touched4] == c) * _SIGNS4).sum(axis=1)

        base6 = system.sums6(f_flat, touched6) - coef6 @ f_flat[subset]
        base4 = system.sums4(f_flat, touched4) - coef4 @ f_flat[subset]
        act_now = (system.sums6(f_flat, touched6) % p == 0) if len(touched6) else None
        f_top = int(system.weight6[touched6][act_now].sum()) if len(touched6) else 0

        w_top = system.weight6[touched6][:, None] if len(touched6) else None
        f_best = f_sc
        best_row = None
        first_row = None
        for cands in _candidate_chunks(
            rng, p, size, config.power_candidates, config.exhaustive_cap
        ):
            if first_row is None:
                first_row = cands[0].copy()
            f_cand = np.full(len(cands), f_sc - f_top, dtype=np.int64)
            if len(touched6):
                sums6 = (base6[:, None] + coef6 @ cands.T) % p
                f_cand += (w_top * (sums6 == 0)).sum(axis=0)
            if len(touched4):
                sums4 = (base4[:, None] + coef4 @ cands.T) % p
                f_cand[(sums4 == 0).any(axis=0)] = f_sc
            n = int(np.argmin(f_cand))
            if f_cand[n] < f_best:
                f_best = int(f_cand[n])
                best_row = cands[n].copy()
        accepted = best_row is not None
        tried = best_row if accepted else first_row
        trace.append(
            TraceRow(
                rounds,
                tuple((int(c) // kp, int(c) % kp) for c in subset),
                tuple(int(v) for v in tried),
                f_sc,
                f_best if accepted else f_sc,
                accepted,
            )
        )
        if accepted:
            f_flat[subset] = best_row
            f_sc_incremental = f_best
            f_sc = system.f_sc(f_flat)
            assert f_sc == f_sc_incremental, "incremental count drifted"
            assert system.count_active4(f_flat) == 0
            theta_prime, theta = weighted_theta(system, f_flat)
            level = 0
            stale = 0
            continue
        level += 1
        if level >= len(config.subset_size_schedule):
            level = 0
            stale += 1
            if config.seed is None and not sampling:
                break
            if stale >= config.max_stale_rounds:
                break

    return CpoState(
        powers=f_flat.reshape(g, kp),
        f_sc=f_sc,
        theta=theta,
        theta_prime=theta_prime,
        trace=trace,
        rounds=rounds,
        reached_target=f_sc <= config.target_f_sc,
    )


# ---------------------------------------------------------------------------
# column arrangement presearch


def _multiset_permutations(items):
    """Distinct permutations of a sequence, lexicographically."""
    items = sorted(items)
    n = len(items)

    def rec(remaining):
        if not remaining:
            yield ()
            return
        prev = object()
        for i, v in enumerate(remaining):
            if v == prev:
                continue
            prev = v
            for tail in rec(remaining[:i] + remaining[i + 1 :]):
                yield (v,) + tail

    return rec(items)


def _arrangement_count(items) -> int:
    total = math.factorial(len(items))
    seen = {}
    for v in items:
        seen[v] = seen.get(v, 0) + 1
    for c in seen.values():
        total //= math.factorial(c)
    return total


def refine_layout(partition: PartitionMatrix, p: int, L: int,
                  exhaustive_cap: int = 20000):
    """Column arrangement of a partition minimizing the lifted count at AB powers.

    Reordering partition columns while keeping AB powers is equivalent to
    keeping the partition and permuting power columns, so candidates are
    scored on one precomputed cycle system.  Small arrangement spaces are
    searched exhaustively in lexicographic order (deterministic tie-break:
    first minimum); larger ones fall back to deterministic pairwise-swap
    descent from the current arrangement.  Returns (partition, count).
    """
    from .code_model import CirculantBlockCode

    g, kp = partition.gamma, partition.kappa
    block = CirculantBlockCode(g, kp, p, ab_powers(g, kp, p))
    spec = SCCodeSpec(block, partition, L)
    system = CycleSystem(spec)
    base_pats = [tuple(int(v) for v in partition.assign[:, j]) for j in range(kp)]

    def eval_sources(source: np.ndarray) -> int:
        # base column c draws its AB powers from arranged position source[c]
        f = (np.arange(g)[:, None] * source[None, :]) % p
        return system.f_sc(f.ravel())

    def sources_for(arrangement) -> np.ndarray:
        # stable matching of arranged patterns back to base column indices
        pools = {}
        for c, pat in enumerate(base_pats):
            pools.setdefault(pat, []).append(c)
        iters = {pat: iter(cols) for pat, cols in pools.items()}
        placed = np.zeros(kp, dtype=np.int64)
        for j, pat in enumerate(arrangement):
            placed[next(iters[pat])] = j
        return placed

    if _arrangement_count(base_pats) <= exhaustive_cap:
        best = None
        for arrangement in _multiset_permutations(base_pats):
            val = eval_sources(sources_for(arrangement))
            if best is None or val < best[0]:
                best = (val, arrangement)
        val, arrangement = best
    else:
        sigma = list(range(kp))  # position j shows base column sigma[j]
        source = np.zeros(kp, dtype=np.int64)
        source[sigma] = np.arange(kp)
        val = eval_sources(source)
        improved = True
        while improved:
            improved = False
            for pos1 in range(kp):
                for pos2 in range(pos1 + 1, kp):
                    b1, b2 = sigma[pos1], sigma[pos2]
                    if base_pats[b1] == base_pats[b2]:
                        continue
                    source[b1], source[b2] = source[b2], source[b1]
                    trial = eval_sources(source)
                    if trial < val:
                        val = trial
                        sigma[pos1], sigma[pos2] = b2, b1
                        improved = True
                    else:
                        source[b1], source[b2] = source[b2], source[b1]
        arrangement = tuple(base_pats[b] for b in sigma)

    assign = np.array(arrangement, dtype=np.int64).T
    return PartitionMatrix(partition.m, assign), int(val)
