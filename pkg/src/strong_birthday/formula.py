"""Inclusion-exclusion counts of assignments with an exact number of singleton days.

A singleton day is a day carrying exactly one person's birthday.  The
alternating sum is evaluated in exact integers only: in floating point the
terms cancel catastrophically long before Table-scale inputs.
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple

from .combinatorics import binomial, falling_factorial
from .exact import big_pow

__all__ = [
    "SingletonCountQuery",
    "m_overcount",
    "n_exact_singletons",
    "prob_exact_singletons",
    "prob_strong_birthday_formula",
]


class SingletonCountQuery(NamedTuple):
    m: int
    n: int
    k: int


def _check(m: int, n: int, k: int) -> None:
    if m < 0 or n < 0 or k < 0:
        raise ValueError(f"m, n, k must be non-negative (got m={m}, n={n}, k={k})")


def m_overcount(m: int, n: int, k: int) -> int:
    """``C(m,k) C(n,k) k! (m-k)^(n-k)``: pick k days and k people, pair them up,
    and send everybody else anywhere among the other days.  Assignments with
    more than k singletons are counted several times."""
    _check(m, n, k)
    if k > m or k > n:
        return 0
    return falling_factorial(m, k) * binomial(n, k) * big_pow(m - k, n - k)


def n_exact_singletons(m: int, n: int, k: int) -> int:
    """Number of the ``m**n`` assignments with exactly ``k`` singleton days."""
    _check(m, n, k)
    total = 0
    # C(m, j) vanishes past m, so the sum stops at min(n, m)
    for j in range(k, min(n, m) + 1):
        term = binomial(j, k) * m_overcount(m, n, j)
        total += -term if (j - k) & 1 else term
    if total < 0:
        raise ArithmeticError(f"negative count for m={m}, n={n}, k={k}")
    return total


def prob_exact_singletons(m: int, n: int, k: int) -> Fraction:
    _check(m, n, k)
    if n == 0:
        return Fraction(int(k == 0))
    if m == 0:
        raise ValueError("m = 0 with n > 0 has an empty sample space")
    return Fraction(n_exact_singletons(m, n, k), big_pow(m, n))


def prob_strong_birthday_formula(m: int, n: int) -> Fraction:
    """Probability that nobody among ``n`` people has a birthday to themselves."""
    return prob_exact_singletons(m, n, 0)
