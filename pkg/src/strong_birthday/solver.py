"""Least group size ``n`` reaching a probability threshold.

``P(m, n)`` is not monotone in ``n`` for small groups (``P(m, 2) = 1/m`` but
``P(m, 3) = 1/m**2``), so the solver scans upward from ``n = 1`` and stops at
the first crossing instead of bisecting.
"""

from __future__ import annotations

import logging
import os
from collections.abc import Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal

from .assoc import SharedBirthdayQuery, iter_prob_sweep, prob_shared_at_least
from .exact import EPS, parse_rational, rational_cmp
from .formula import prob_strong_birthday_formula

__all__ = [
    "EXACT_SCAN_MAX_M",
    "ScanCapExceeded",
    "SolverResult",
    "ThresholdQuery",
    "exact_probability",
    "min_people",
    "table_reproduce",
]

log = logging.getLogger(__name__)

SolveMode = Literal["auto", "exact", "scaled"]

#: ``auto`` mode scans in exact arithmetic up to this many days
EXACT_SCAN_MAX_M = 100

_BAND_FLOOR = 1e-12


class ScanCapExceeded(RuntimeError):
    """The scan reached ``scan_cap`` without the probability reaching ``p``."""


class CertificationError(ArithmeticError):
    """Exact recomputation contradicted a scaled-mode decision."""


@dataclass(frozen=True)
class ThresholdQuery:
    m: int
    p: Fraction
    r: int = 2
    scan_cap: int | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "p", parse_rational(self.p))
        SharedBirthdayQuery(self.m, 0, self.r).validate()
        if not 0 < self.p < 1:
            raise ValueError(f"threshold must satisfy 0 < p < 1, got {self.p}")
        if self.scan_cap is not None and self.scan_cap < 1:
            raise ValueError("scan_cap must be positive")

    @property
    def cap(self) -> int:
        return self.scan_cap if self.scan_cap is not None else 32 * self.m * self.r


@dataclass(frozen=True)
class SolverResult:
    m: int
    p: Fraction
    r: int
    n_min: int
    prob_below: Fraction
    prob_at: Fraction
    #: ``"exact"`` when every row was decided in exact arithmetic,
    #: ``"scaled-with-margin"`` when rows outside the error band were decided in floats
    certification: str
    rows_scanned: int
    exact_recomputes: int = 0


def exact_probability(m: int, n: int, r: int = 2) -> Fraction:
    """Exact ``P(m, n, r)``; the inclusion-exclusion formula when ``r == 2``."""
    if r == 2:
        return prob_strong_birthday_formula(m, n)
    return prob_shared_at_least(m, n, r, "exact")


def _in_band(value: float, op_count: int, target: float) -> bool:
    band = max(10 * op_count * EPS * value, _BAND_FLOOR)
    return abs(value - target) <= band


def _scan_exact(q: ThresholdQuery) -> SolverResult:
    prev = None
    for row in iter_prob_sweep(q.m, q.r, q.cap, "exact"):
        if row.n == 0:
            continue
        if rational_cmp(row.prob, q.p) >= 0:
            return SolverResult(q.m, q.p, q.r, row.n, prev, row.prob, "exact", row.n)
        prev = row.prob
    raise ScanCapExceeded(f"P({q.m}, n, {q.r}) < {q.p} for every n <= {q.cap}")


def _scan_scaled(q: ThresholdQuery) -> SolverResult:
    target = float(q.p)
    recomputes = 0
    prev_exact = False
    prev_value = None
    for row in iter_prob_sweep(q.m, q.r, q.cap, "scaled"):
        if row.n == 0:
            continue
        value = row.as_float()
        if _in_band(value, row.op_count, target):
            recomputes += 1
            log.debug("m=%d n=%d: %.17g within band of %s, recomputing exactly",
                      q.m, row.n, value, q.p)
            hit = rational_cmp(exact_probability(q.m, row.n, q.r), q.p) >= 0
            is_exact = True
        else:
            hit = value >= target
            is_exact = False
        if hit:
            below = exact_probability(q.m, row.n - 1, q.r)
            at = exact_probability(q.m, row.n, q.r)
            if not (rational_cmp(below, q.p) < 0 <= rational_cmp(at, q.p)):
                raise CertificationError(
                    f"m={q.m} n={row.n}: exact bracket {float(below)!r}, {float(at)!r} "
                    f"disagrees with scaled scan at p={q.p}")
            if prev_value is not None and not prev_exact and _in_band(*prev_value, target):
                recomputes += 1
                prev_exact = True
            cert = "exact" if is_exact and prev_exact else "scaled-with-margin"
            return SolverResult(q.m, q.p, q.r, row.n, below, at, cert, row.n, recomputes)
        prev_exact = is_exact
        prev_value = (value, row.op_count)
    raise ScanCapExceeded(f"P({q.m}, n, {q.r}) < {q.p} for every n <= {q.cap}")


def min_people(m: int, p: Fraction | str, r: int = 2, scan_cap: int | None = None,
               mode: SolveMode = "auto") -> SolverResult:
    """First ``n`` with ``P(m, n, r) >= p``.

    ``mode="exact"`` decides every row with rationals.  ``mode="scaled"``
    scans in scaled floats, recomputes exactly whenever a value falls within
    its error band of ``p``, and always confirms the final bracket
    ``P(n-1) < p <= P(n)`` exactly.  ``auto`` uses exact for
    ``m <= EXACT_SCAN_MAX_M``.
    """
    q = ThresholdQuery(m, p, r, scan_cap)
    if mode == "auto":
        mode = "exact" if m <= EXACT_SCAN_MAX_M else "scaled"
    if mode == "exact":
        return _scan_exact(q)
    if mode == "scaled":
        return _scan_scaled(q)
    raise ValueError(f"unknown mode {mode!r}")


def _solve_cell(args: tuple[int, Fraction, int, int | None, str]) -> SolverResult:
    m, p, r, scan_cap, mode = args
    return min_people(m, p, r, scan_cap, mode)


def table_reproduce(m_list: Sequence[int], p_list: Sequence[Fraction | str], r: int = 2,
                    jobs: int | None = None, scan_cap: int | None = None,
                    mode: SolveMode = "auto") -> list[list[SolverResult]]:
    """Solve every ``(p, m)`` cell; rows follow ``p_list``, columns ``m_list``."""
    if not m_list or not p_list:
        raise ValueError("m_list and p_list must be non-empty")
    ps = [parse_rational(p) for p in p_list]
    cells = [(m, p, r, scan_cap, mode) for p in ps for m in m_list]
    jobs = jobs or os.cpu_count() or 1
    if jobs > 1 and len(cells) > 1:
        # biggest cells first so the pool drains evenly; results re-ordered below
        order = sorted(range(len(cells)), key=lambda i: -cells[i][0] * cells[i][1])
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            solved = dict(zip(order, pool.map(_solve_cell, [cells[i] for i in order])))
        flat = [solved[i] for i in range(len(cells))]
    else:
        flat = [_solve_cell(c) for c in cells]
    width = len(m_list)
    return [flat[i * width:(i + 1) * width] for i in range(len(ps))]
