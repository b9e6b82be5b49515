"""Ground truth by brute force: exhaustive enumeration and seeded Monte Carlo.

Nothing here touches the formula, DP or Stirling code paths.

Monte Carlo draws come from numpy's ``PCG64`` bit generator seeded with
``seed + worker_index``; days are drawn with ``Generator.integers(0, m)``,
which uses Lemire's bounded-rejection method (no modulo bias).
"""

from __future__ import annotations

import math
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

__all__ = [
    "BudgetExceeded",
    "EnumerationBudget",
    "McEstimate",
    "enumerate_exact_singletons",
    "enumerate_min_occupancy",
    "mc_estimate",
    "occupancy_profile",
]

DEFAULT_MAX_STATES = 10**7
_MC_BATCH_CELLS = 4_000_000


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class EnumerationBudget:
    max_states: int = DEFAULT_MAX_STATES

    def admits(self, m: int, n: int) -> bool:
        return m**n <= self.max_states

    def check(self, m: int, n: int) -> None:
        if not self.admits(m, n):
            raise BudgetExceeded(f"{m}**{n} assignments exceed the budget of {self.max_states}")


def occupancy_profile(m: int, n: int, budget: EnumerationBudget = EnumerationBudget()
                      ) -> Counter[tuple[int, ...]]:
    """Walk all ``m**n`` assignments and tally them by occupancy signature.

    The key is ``(c1, c2, ..., c_n)`` where ``c_v`` is the number of days
    holding exactly ``v`` people.  Assignments are visited as a base-``m``
    odometer; each step moves one or a few people and patches the
    histogram in place instead of recounting it.
    """
    if m < 0 or n < 0:
        raise ValueError("m and n must be non-negative")
    budget.check(m, n)
    if n == 0:
        return Counter({(): 1})
    if m == 0:
        return Counter()
    digits = [0] * n
    occ = [0] * m
    occ[0] = n
    # by_size[v] = number of days holding v people
    by_size = [0] * (n + 1)
    by_size[0] = m - 1
    by_size[n] = 1
    tally: Counter[tuple[int, ...]] = Counter()
    last = m - 1
    while True:
        tally[tuple(by_size[1:])] += 1
        pos = 0
        while pos < n and digits[pos] == last:
            _move(occ, by_size, last, 0)
            digits[pos] = 0
            pos += 1
        if pos == n:
            return tally
        day = digits[pos]
        _move(occ, by_size, day, day + 1)
        digits[pos] = day + 1


def _move(occ: list[int], by_size: list[int], src: int, dst: int) -> None:
    if src == dst:
        return
    a, b = occ[src], occ[dst]
    by_size[a] -= 1
    by_size[a - 1] += 1
    occ[src] = a - 1
    by_size[b] -= 1
    by_size[b + 1] += 1
    occ[dst] = b + 1


def enumerate_exact_singletons(m: int, n: int, k: int,
                               budget: EnumerationBudget = EnumerationBudget()) -> int:
    """Assignments with exactly ``k`` days holding a single person."""
    profile = occupancy_profile(m, n, budget)
    return sum(c for sig, c in profile.items() if (sig[0] if sig else 0) == k)


def enumerate_min_occupancy(m: int, n: int, r: int,
                            budget: EnumerationBudget = EnumerationBudget()) -> int:
    """Assignments in which every occupied day holds at least ``r`` people."""
    profile = occupancy_profile(m, n, budget)
    return sum(c for sig, c in profile.items() if not any(sig[:r - 1]))


@dataclass(frozen=True)
class McEstimate:
    trials: int
    successes: int
    seed: int
    workers: int = 1

    @property
    def estimate(self) -> float:
        return self.successes / self.trials

    @property
    def std_err(self) -> float:
        p = self.estimate
        return math.sqrt(p * (1 - p) / self.trials)

    def within(self, exact: float, sigmas: float = 5.0) -> bool:
        # a zero standard error (estimate 0 or 1) only matches an exact hit
        return abs(self.estimate - exact) <= sigmas * self.std_err + 1e-12


def _mc_successes(m: int, n: int, r: int, trials: int, seed: int) -> int:
    rng = np.random.Generator(np.random.PCG64(seed))
    batch = max(1, _MC_BATCH_CELLS // max(n, m, 1))
    hits = 0
    done = 0
    while done < trials:
        size = min(batch, trials - done)
        days = rng.integers(0, m, size=(size, n), dtype=np.int64)
        flat = days + (np.arange(size, dtype=np.int64) * m)[:, None]
        counts = np.bincount(flat.ravel(), minlength=size * m).reshape(size, m)
        ok = ((counts == 0) | (counts >= r)).all(axis=1)
        hits += int(ok.sum())
        done += size
    return hits


def mc_estimate(m: int, n: int, r: int, trials: int, seed: int = 0,
                workers: int = 1) -> McEstimate:
    """Seeded Monte Carlo estimate of the probability that every occupied day
    holds at least ``r`` people.  Deterministic for fixed ``seed`` and ``workers``."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if m < 1:
        raise ValueError("m must be >= 1")
    if workers < 1:
        raise ValueError("workers must be >= 1")
    share, extra = divmod(trials, workers)
    parts = [share + (i < extra) for i in range(workers)]
    if workers == 1:
        hits = _mc_successes(m, n, r, trials, seed)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            hits = sum(pool.map(lambda i: _mc_successes(m, n, r, parts[i], seed + i),
                                range(workers)))
    return McEstimate(trials, hits, seed, workers)
