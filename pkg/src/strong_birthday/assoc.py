"""Probability that every birthday in the group is shared by at least ``r - 1`` others.

With ``T_r(n, k) = k! {n brace k}_{>=r}`` labelled distributions of ``n``
people onto ``k`` chosen days (each day getting ``r`` or more), the number of
favourable assignments is ``sum_k C(m, k) T_r(n, k) = sum_k m^(k falling) {n brace k}_{>=r}``.
Every term is non-negative, which is what makes the scaled-float mode safe.
"""

from __future__ import annotations

import math
from collections.abc import Callable, Iterator
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .combinatorics import Mode, assoc_stirling2, iter_assoc_stirling_rows
from .exact import ScaledArray, ScaledFloat, to_scaled

__all__ = [
    "ProbSweepRow",
    "favourable_count",
    "SharedBirthdayQuery",
    "iter_prob_sweep",
    "labeled_blocks",
    "prob_shared_at_least",
    "prob_sweep",
]


class SharedBirthdayQuery(NamedTuple):
    m: int
    n: int
    r: int = 2

    def validate(self) -> None:
        if self.r < 2:
            raise ValueError(f"minimum occupancy r must be >= 2, got {self.r}")
        if self.m < 1:
            raise ValueError(f"need at least one day, got m={self.m}")
        if self.n < 0:
            raise ValueError(f"n must be non-negative, got {self.n}")


@dataclass(frozen=True)
class ProbSweepRow:
    n: int
    prob: Fraction | ScaledFloat
    mode: str
    #: relative error bound in units of EPS (0 in exact mode)
    op_count: int = 0
    #: favourable assignment count, exact mode only
    favourable: int | None = None

    def as_float(self) -> float:
        return self.prob.to_float() if isinstance(self.prob, ScaledFloat) else float(self.prob)


def labeled_blocks(n: int, k: int, r: int) -> int:
    """Ways to spread ``n`` people over ``k`` distinguishable days, ``>= r`` each."""
    if r < 2:
        raise ValueError(f"minimum occupancy r must be >= 2, got {r}")
    if k < 0:
        return 0
    return math.factorial(k) * assoc_stirling2(n, k, r)


def _exact_sweep(m: int, r: int, n_max: int) -> Iterator[ProbSweepRow]:
    k_cap = min(m, n_max // r)
    falling = [1] * (k_cap + 1)
    for k in range(1, k_cap + 1):
        falling[k] = falling[k - 1] * (m - k + 1)
    space = 1
    for n, row in iter_assoc_stirling_rows(r, n_max, "exact", k_max=k_cap):
        if n:
            space *= m
        favourable = sum(f * s for f, s in zip(falling, row))
        yield ProbSweepRow(n, Fraction(favourable, space), "exact", 0, favourable)


def _scaled_sweep(m: int, r: int, n_max: int) -> Iterator[ProbSweepRow]:
    k_cap = min(m, n_max // r)
    falling = [ScaledFloat(1.0, 0)]
    for k in range(1, k_cap + 1):
        falling.append(falling[-1] * (m - k + 1))
    falling_arr = ScaledArray.from_scalars(falling)
    falling_err = falling[-1].ops
    space = ScaledFloat(1.0, 0)
    m_scaled = to_scaled(m)
    for n, (row, row_err) in iter_assoc_stirling_rows(r, n_max, "scaled", k_max=k_cap):
        if n:
            space = space * m_scaled
        width = len(row)
        total = row.mul(falling_arr.padded(width)).total()
        # elementwise product rounding, then one rounding for the exact fsum
        favourable = ScaledFloat(total.mantissa, total.exponent, row_err + falling_err + 2)
        prob = favourable / space
        yield ProbSweepRow(n, prob, "scaled", prob.ops)


def iter_prob_sweep(m: int, r: int, n_max: int, mode: Mode = "exact") -> Iterator[ProbSweepRow]:
    """Yield one :class:`ProbSweepRow` per ``n = 0..n_max``.

    Rows are truncated at ``k <= m`` (a day cannot be used twice), so the
    work is ``O(n_max * min(m, n_max / r))`` number operations.
    """
    SharedBirthdayQuery(m, 0, r).validate()
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    if mode == "exact":
        return _exact_sweep(m, r, n_max)
    if mode == "scaled":
        return _scaled_sweep(m, r, n_max)
    raise ValueError(f"unknown mode {mode!r}")


def prob_sweep(m: int, r: int, n_max: int, mode: Mode,
               visit: Callable[[ProbSweepRow], None]) -> None:
    for row in iter_prob_sweep(m, r, n_max, mode):
        visit(row)


def prob_shared_at_least(m: int, n: int, r: int = 2,
                         mode: Mode = "exact") -> Fraction | ScaledFloat:
    """``P(m, n, r)``: every occupied day among ``m`` carries at least ``r`` of the
    ``n`` birthdays.  Exact mode gives a Fraction, scaled mode a ScaledFloat whose
    ``ops`` field bounds the relative error in units of EPS."""
    SharedBirthdayQuery(m, n, r).validate()
    *_, last = iter_prob_sweep(m, r, n, mode)
    prob = last.prob
    if isinstance(prob, ScaledFloat):
        return ScaledFloat(prob.mantissa, prob.exponent, last.op_count)
    return prob


def favourable_count(m: int, n: int, r: int = 2) -> int:
    """Numerator of :func:`prob_shared_at_least` over ``m**n`` (not reduced)."""
    SharedBirthdayQuery(m, n, r).validate()
    *_, last = iter_prob_sweep(m, r, n, "exact")
    return last.favourable

