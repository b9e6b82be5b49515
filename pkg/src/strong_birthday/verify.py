"""Oracle-vs-engine verification suites behind ``strong-birthday verify``."""

from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass, field

from .assoc import favourable_count, prob_shared_at_least
from .dp import iter_dp_layers, layer_total, prob_strong_birthday_dp, singleton_marginal
from .exact import big_pow, format_rational
from .formula import n_exact_singletons, prob_strong_birthday_formula
from .oracle import EnumerationBudget, mc_estimate, occupancy_profile


@dataclass
class SuiteReport:
    name: str
    passed: int = 0
    failed: int = 0
    skipped: int = 0
    lines: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def record(self, ok: bool, line: str | None = None) -> None:
        if ok:
            self.passed += 1
        else:
            self.failed += 1
        if line is not None:
            self.lines.append(f"{line} {'MATCH' if ok else 'MISMATCH'}")

    def summary(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        extra = f", {self.skipped} skipped" if self.skipped else ""
        return f"[{status}] {self.name}: {self.passed} passed, {self.failed} failed{extra}"


def cross_method(max_m: int, max_n: int) -> SuiteReport:
    """Formula, DP and Stirling probabilities agree as exact rationals."""
    rep = SuiteReport("cross-method")
    for m in range(1, max_m + 1):
        for n in range(max_n + 1):
            a = prob_strong_birthday_formula(m, n)
            b = prob_strong_birthday_dp(m, n)
            c = prob_shared_at_least(m, n, 2)
            rep.record(a == b == c, f"m={m} n={n} P={format_rational(a)}")
    return rep


def _oracle_cells(max_m: int, max_n: int, budget: EnumerationBudget) -> Iterator[tuple[int, int]]:
    for m in range(1, max_m + 1):
        for n in range(max_n + 1):
            if budget.admits(m, n):
                yield m, n


def oracle_equivalence(max_m: int, max_n: int, budget: EnumerationBudget) -> SuiteReport:
    """Brute-force enumeration matches every engine count."""
    rep = SuiteReport("oracle-equivalence")
    rep.skipped = sum(not budget.admits(m, n)
                      for m in range(1, max_m + 1) for n in range(max_n + 1))
    for m, n in _oracle_cells(max_m, max_n, budget):
        profile = occupancy_profile(m, n, budget)
        by_singletons: dict[int, int] = {}
        shared = {2: 0, 3: 0}
        for sig, count in profile.items():
            ones = sig[0] if sig else 0
            by_singletons[ones] = by_singletons.get(ones, 0) + count
            for r in shared:
                if not any(sig[:r - 1]):
                    shared[r] += count
        for k in range(n + 1):
            rep.record(by_singletons.get(k, 0) == n_exact_singletons(m, n, k))
        *_, (_, layer) = iter_dp_layers(m, n)
        # sum over j >= 1 of T(j, 0, n, m); the empty group counts once
        dp_shared = singleton_marginal(layer[1:], 0) if n else 1
        rep.record(shared[2] == dp_shared)
        for r, count in shared.items():
            rep.record(count == favourable_count(m, n, r))
    return rep


def normalization(max_m: int, max_n: int) -> SuiteReport:
    """Singleton counts and DP layers both partition the ``m**n`` sample space."""
    rep = SuiteReport("normalization")
    for m in range(1, max_m + 1):
        for n, layer in iter_dp_layers(m, max_n):
            space = big_pow(m, n)
            rep.record(sum(n_exact_singletons(m, n, k) for k in range(n + 1)) == space)
            rep.record(layer_total(layer) == space)
    return rep


def monte_carlo(trials: int, seed: int, cells: list[tuple[int, int, int]] | None = None,
                workers: int = 1) -> SuiteReport:
    """Seeded Monte Carlo estimates land within 5 standard errors of the exact value."""
    rep = SuiteReport("monte-carlo")
    cells = cells or [(10, 41, 2), (5, 12, 2), (6, 14, 3)]
    for m, n, r in cells:
        exact = float(prob_shared_at_least(m, n, r))
        est = mc_estimate(m, n, r, trials, seed, workers)
        rep.record(est.within(exact),
                   f"m={m} n={n} r={r} successes={est.successes}/{est.trials} "
                   f"estimate={est.estimate:.6f} exact={exact:.6f} se={est.std_err:.2e}")
    return rep


def run_all(max_m: int = 8, max_n: int = 12, mc_trials: int = 20_000, seed: int = 0,
            budget: EnumerationBudget = EnumerationBudget(10**6),
            workers: int = 1) -> list[SuiteReport]:
    return [
        cross_method(max_m, max_n),
        oracle_equivalence(max_m, max_n, budget),
        normalization(max_m, max_n),
        monte_carlo(mc_trials, seed, workers=workers),
    ]
