"""Search for the partition minimizing the coupled protograph 6-cycle count.

The census is a polynomial in the column-overlap parameters, and every
realizable overlap vector corresponds one-to-one with a vector of pattern
counts: how many columns assign each possible component-per-block-row
pattern.  Pattern counts are the natural search space because feasibility
is just nonnegativity plus the column budget, and the balance constraint
(each component receives roughly kappa*gamma/(m+1) circulants) is linear.

Three strategies share one vectorized evaluator: exhaustive enumeration of
balanced compositions (certifies optimality), depth-first branch-and-bound
using the partial-column-multiset census as a lower bound (adding a column
never removes cycles), and seeded multi-restart steepest descent for
spaces too large to enumerate.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass

import numpy as np

from .cycle_census import span_terms
from .overlaps import (
    IndependentOverlaps,
    PatternCounts,
    column_patterns,
    cover_matrix,
    independent_overlap_sets,
)


@dataclass(frozen=True)
class OptimizerConfig:
    strategy: str = "auto"  # exhaustive | branch-and-bound | local-search | auto
    balance_slack: int = 0
    seed: int | None = None
    restarts: int = 60
    batch: int = 1 << 15
    exhaustive_limit: int = 2_000_000  # auto strategy cutoff, compositions
    time_budget_s: float | None = None

    def __post_init__(self):
        if self.strategy not in ("auto", "exhaustive", "branch-and-bound", "local-search"):
            raise ValueError(f"unknown strategy {self.strategy!r}")
        if self.balance_slack < 0:
            raise ValueError("balance slack must be >= 0")


@dataclass(frozen=True)
class Optimum:
    overlaps: IndependentOverlaps
    patterns: PatternCounts
    f_star: int
    certified: bool
    strategy: str
    evaluated: int


class _Evaluator:
    """Batched census evaluation over pattern-count vectors."""

    def __init__(self, gamma: int, m: int, L: int):
        self.gamma, self.m, self.L = gamma, m, L
        ind = independent_overlap_sets(gamma, m)
        needed = list(ind)
        seen = set(needed)
        compiled = []
        for k in range(1, min(m + 1, L) + 1):
            weight = L - k + 1
            for term in span_terms(gamma, m, k):
                keys = [tuple(sorted(s)) for s in term[1:]]
                ok = all(
                    len({r % gamma for r in s}) == len(s) for s in keys
                )
                if not ok:
                    continue  # repeated residue: overlap is identically 0
                for s in keys:
                    if s not in seen:
                        seen.add(s)
                        needed.append(s)
                compiled.append((term[0], weight, keys))
        self.n_ind = len(ind)
        self.index = {s: i for i, s in enumerate(needed)}
        self.cover = cover_matrix(gamma, m, needed)
        kinds = {"A": [], "B": [], "C": []}
        for kind, weight, keys in compiled:
            kinds[kind].append([weight] + [self.index[s] for s in keys])
        self.terms_a = np.array(kinds["A"], dtype=np.int64).reshape(-1, 5)
        self.terms_b = np.array(kinds["B"], dtype=np.int64).reshape(-1, 5)
        self.terms_c = np.array(kinds["C"], dtype=np.int64).reshape(-1, 4)

    def overlap_rows(self, batch: np.ndarray) -> np.ndarray:
        return batch @ self.cover.T

    def objective(self, batch: np.ndarray) -> np.ndarray:
        """Weighted 6-cycle total for each pattern-count row of the batch."""
        t = self.overlap_rows(batch)
        out = np.zeros(len(batch), dtype=np.int64)
        if len(self.terms_a):
            w, abc, ab, ac, bc = self.terms_a.T
            t123, t12, t13, t23 = t[:, abc], t[:, ab], t[:, ac], t[:, bc]
            val = (
                t123 * np.maximum(t123 - 1, 0) * np.maximum(t23 - 2, 0)
                + t123 * (t13 - t123) * np.maximum(t23 - 1, 0)
                + (t12 - t123) * t123 * np.maximum(t23 - 1, 0)
                + (t12 - t123) * (t13 - t123) * t23
            )
            out += val @ w
        if len(self.terms_b):
            w, abc, ab, ac, far = self.terms_b.T
            t123, t12, t13, tf = t[:, abc], t[:, ab], t[:, ac], t[:, far]
            val = t123 * np.maximum(t13 - 1, 0) * tf + (t12 - t123) * t13 * tf
            out += val @ w
        if len(self.terms_c):
            w, ab, ac, bc = self.terms_c.T
            out += (t[:, ab] * t[:, ac] * t[:, bc]) @ w
        return out

    def independent_values(self, n: np.ndarray) -> tuple:
        row = self.overlap_rows(n.reshape(1, -1))[0]
        return tuple(int(v) for v in row[: self.n_ind])


def balance_bounds(gamma: int, kappa: int, m: int, slack: int):
    """Allowed circulant totals per component."""
    lo = kappa * gamma // (m + 1) - slack
    hi = -(-kappa * gamma // (m + 1)) + slack
    return max(lo, 0), min(hi, kappa * gamma)


def _component_loads(gamma: int, m: int) -> np.ndarray:
    """(m+1) x n_patterns matrix of circulants each pattern gives each component."""
    pats = column_patterns(gamma, m)
    out = np.zeros((m + 1, len(pats)), dtype=np.int64)
    for vi, v in enumerate(pats):
        for x in v:
            out[x, vi] += 1
    return out


def _balanced_compositions(kappa: int, loads: np.ndarray, lo: int, hi: int):
    """Pattern-count vectors summing to kappa with per-component totals in [lo, hi].

    Lexicographic order; pruned on partial totals.
    """
    ncomp, nparts = loads.shape
    suffix_max = np.zeros((nparts + 1, ncomp), dtype=np.int64)
    for vi in range(nparts - 1, -1, -1):
        suffix_max[vi] = np.maximum(suffix_max[vi + 1], loads[:, vi])
    counts = np.zeros(nparts, dtype=np.int64)
    totals = np.zeros(ncomp, dtype=np.int64)

    def rec(vi, remaining):
        nonlocal totals
        if vi == nparts - 1:
            counts[vi] = remaining
            totals += remaining * loads[:, vi]
            if (totals >= lo).all() and (totals <= hi).all():
                yield counts.copy()
            totals -= remaining * loads[:, vi]
            counts[vi] = 0
            return
        if (totals + remaining * suffix_max[vi] < lo).any():
            return
        for c in range(remaining + 1):
            counts[vi] = c
            totals += c * loads[:, vi]
            if (totals > hi).any():
                totals -= c * loads[:, vi]
                counts[vi] = 0
                break
            yield from rec(vi + 1, remaining - c)
            totals -= c * loads[:, vi]
        else:
            counts[vi] = 0

    yield from rec(0, kappa)


def composition_space(kappa: int, gamma: int, m: int) -> int:
    """Weak compositions of kappa over all patterns, before balance filtering."""
    nparts = (m + 1) ** gamma
    return math.comb(kappa + nparts - 1, nparts - 1)


def enumerate_feasible(gamma: int, kappa: int, m: int,
                       config: OptimizerConfig = OptimizerConfig()):
    """Yield every balance-feasible overlap vector, duplicate-free.

    Iterates pattern-count space, where distinct vectors give distinct
    overlap vectors, in lexicographic order.
    """
    loads = _component_loads(gamma, m)
    lo, hi = balance_bounds(gamma, kappa, m, config.balance_slack)
    ev = _Evaluator(gamma, m, 1)
    for n in _balanced_compositions(kappa, loads, lo, hi):
        yield IndependentOverlaps(gamma, m, kappa, ev.independent_values(n))


def _best_of(ev: _Evaluator, batch_rows, best=None, evaluated=0):
    """Fold batches into (value, ind_vector, pattern_row), lex tie-break."""
    for rows in batch_rows:
        if not len(rows):
            continue
        arr = np.asarray(rows, dtype=np.int64)
        vals = ev.objective(arr)
        evaluated += len(arr)
        order = np.argsort(vals, kind="stable")
        for i in order:
            if best is not None and vals[i] > best[0]:
                break
            cand = (int(vals[i]), ev.independent_values(arr[i]), arr[i].copy())
            if best is None or cand[:2] < best[:2]:
                best = cand
    return best, evaluated


def _chunks(gen, size):
    while True:
        block = list(itertools.islice(gen, size))
        if not block:
            return
        yield block


def _random_balanced(rng, kappa, loads, lo, hi, attempts=2000):
    """Random feasible pattern-count vector via sampling plus greedy repair."""
    ncomp, nparts = loads.shape
    for _ in range(attempts):
        cols = rng.integers(0, nparts, size=kappa)
        n = np.bincount(cols, minlength=nparts)
        totals = loads @ n
        for _ in range(4 * kappa):
            over = np.nonzero(totals > hi)[0]
            under = np.nonzero(totals < lo)[0]
            if not len(over) and not len(under):
                return n
            src = np.nonzero(n > 0)[0]
            rng.shuffle(src)
            moved = False
            for vi in src:
                better = None
                for wi in range(nparts):
                    if wi == vi:
                        continue
                    t2 = totals - loads[:, vi] + loads[:, wi]
                    score = np.maximum(t2 - hi, 0).sum() + np.maximum(lo - t2, 0).sum()
                    cur = np.maximum(totals - hi, 0).sum() + np.maximum(lo - totals, 0).sum()
                    if score < cur and (better is None or score < better[0]):
                        better = (score, wi, t2)
                if better is not None:
                    _, wi, t2 = better
                    n[vi] -= 1
                    n[wi] += 1
                    totals = t2
                    moved = True
                    break
            if not moved:
                break
        totals = loads @ n
        if (totals >= lo).all() and (totals <= hi).all():
            return n
    raise RuntimeError("could not sample a balanced start; relax the slack")


def _local_search(ev, kappa, loads, lo, hi, config, deadline):
    rng = np.random.default_rng(config.seed)
    nparts = loads.shape[1]
    moves = [(vi, wi) for vi in range(nparts) for wi in range(nparts) if vi != wi]
    best = None
    evaluated = 0
    for _ in range(config.restarts):
        if deadline is not None and time.monotonic() > deadline:
            break
        n = _random_balanced(rng, kappa, loads, lo, hi)
        val = int(ev.objective(n.reshape(1, -1))[0])
        evaluated += 1
        while True:
            cand_rows = []
            cand_moves = []
            for vi, wi in moves:
                if n[vi] == 0:
                    continue
                t2 = loads @ n - loads[:, vi] + loads[:, wi]
                if (t2 < lo).any() or (t2 > hi).any():
                    continue
                row = n.copy()
                row[vi] -= 1
                row[wi] += 1
                cand_rows.append(row)
                cand_moves.append((vi, wi))
            if not cand_rows:
                break
            arr = np.array(cand_rows, dtype=np.int64)
            vals = ev.objective(arr)
            evaluated += len(arr)
            i = int(np.argmin(vals))
            if vals[i] >= val:
                break
            val = int(vals[i])
            n = arr[i]
        cand = (val, ev.independent_values(n), n.copy())
        if best is None or cand[:2] < best[:2]:
            best = cand
    return best, evaluated


def _branch_and_bound(ev, kappa, loads, lo, hi, config, deadline):
    incumbent, evaluated = _local_search(
        ev, kappa, loads, lo, hi,
        OptimizerConfig(strategy="local-search", balance_slack=config.balance_slack,
                        seed=config.seed if config.seed is not None else 0,
                        restarts=min(config.restarts, 10)),
        deadline,
    )
    ncomp, nparts = loads.shape
    suffix_max = np.zeros((nparts + 1, ncomp), dtype=np.int64)
    for vi in range(nparts - 1, -1, -1):
        suffix_max[vi] = np.maximum(suffix_max[vi + 1], loads[:, vi])
    counts = np.zeros(nparts, dtype=np.int64)
    totals = np.zeros(ncomp, dtype=np.int64)
    best = list(incumbent) if incumbent else None
    state = {"evaluated": evaluated}

    def rec(vi, remaining):
        nonlocal best, totals
        if vi == nparts:
            if remaining == 0 and (totals >= lo).all():
                val = int(ev.objective(counts.reshape(1, -1))[0])
                state["evaluated"] += 1
                cand = (val, ev.independent_values(counts), counts.copy())
                if best is None or cand[:2] < tuple(best)[:2]:
                    best = list(cand)
            return
        if (totals + remaining * suffix_max[vi] < lo).any():
            return
        bound = int(ev.objective(counts.reshape(1, -1))[0])
        state["evaluated"] += 1
        if best is not None and bound > best[0]:
            return
        for c in range(remaining + 1):
            counts[vi] = c
            totals += c * loads[:, vi]
            if (totals > hi).any():
                totals -= c * loads[:, vi]
                break
            rec(vi + 1, remaining - c)
            totals -= c * loads[:, vi]
        counts[vi] = 0

    rec(0, kappa)
    return tuple(best), state["evaluated"]


def optimize(gamma: int, kappa: int, m: int, L: int,
             config: OptimizerConfig = OptimizerConfig()) -> Optimum:
    """Find the balanced partition minimizing the protograph census.

    Certified (exhaustive or branch-and-bound) strategies guarantee the
    global optimum over the balanced region; local search reports its best
    visited point.  Deterministic for a fixed (config, seed).
    """
    ev = _Evaluator(gamma, m, L)
    loads = _component_loads(gamma, m)
    lo, hi = balance_bounds(gamma, kappa, m, config.balance_slack)
    deadline = (
        time.monotonic() + config.time_budget_s if config.time_budget_s else None
    )

    strategy = config.strategy
    if strategy == "auto":
        small = composition_space(kappa, gamma, m) <= config.exhaustive_limit
        strategy = "exhaustive" if small else "local-search"

    if strategy == "exhaustive":
        gen = _balanced_compositions(kappa, loads, lo, hi)
        best, evaluated = _best_of(ev, _chunks(gen, config.batch))
        certified = True
    elif strategy == "branch-and-bound":
        best, evaluated = _branch_and_bound(ev, kappa, loads, lo, hi, config, deadline)
        certified = True
    else:
        if config.seed is None:
            raise ValueError("local search requires a seed")
        best, evaluated = _local_search(ev, kappa, loads, lo, hi, config, deadline)
        certified = False
    if best is None:
        raise ValueError(
            f"no balanced partition exists for gamma={gamma}, kappa={kappa}, "
            f"m={m}, slack={config.balance_slack}"
        )
    val, ind_values, n = best
    return Optimum(
        overlaps=IndependentOverlaps(gamma, m, kappa, ind_values),
        patterns=PatternCounts(gamma, m, kappa, n),
        f_star=int(val),
        certified=certified,
        strategy=strategy,
        evaluated=evaluated,
    )
