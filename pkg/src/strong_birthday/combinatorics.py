"""Binomials, falling factorials and (r-associated) Stirling numbers of the second kind.

All count functions return 0 for negative indices instead of raising; only
structurally invalid parameters (a minimum block size ``r <= 0``) are errors.
"""

from __future__ import annotations

import math
from collections import deque
from collections.abc import Callable, Iterator
from functools import lru_cache
from typing import Literal

import numpy as np

from .exact import ScaledArray, ScaledFloat, to_scaled

__all__ = [
    "BinomialCache",
    "assoc_stirling2",
    "assoc_stirling_row_sweep",
    "binomial",
    "falling_factorial",
    "iter_assoc_stirling_rows",
    "stirling2",
]

Mode = Literal["exact", "scaled"]


class BinomialCache:
    """Pascal triangle grown on demand, row ``t`` holding ``C(t, 0..t)``.

    Grow it once (``prepare``) to the largest row a computation needs, then
    share it read-only.
    """

    def __init__(self, max_n: int = 0):
        self.rows: list[list[int]] = [[1]]
        self.prepare(max_n)

    @property
    def max_n(self) -> int:
        return len(self.rows) - 1

    def prepare(self, max_n: int) -> None:
        rows = self.rows
        while len(rows) <= max_n:
            prev = rows[-1]
            rows.append([1, *(a + b for a, b in zip(prev, prev[1:])), 1])

    def __call__(self, t: int, s: int) -> int:
        if t < 0 or s < 0 or s > t:
            return 0
        self.prepare(t)
        return self.rows[t][s]


def binomial(t: int, s: int) -> int:
    """Exact ``C(t, s)``; 0 outside ``0 <= s <= t``."""
    if t < 0 or s < 0 or s > t:
        return 0
    return math.comb(t, s)


def falling_factorial(m: int, k: int) -> int:
    """``m (m-1) ... (m-k+1)``, i.e. ``C(m, k) * k!``; 0 when ``k > m``."""
    if k < 0:
        return 0
    if k > m:
        return 0
    out = 1
    for i in range(m - k + 1, m + 1):
        out *= i
    return out


def stirling2(n: int, k: int) -> int:
    """Stirling number of the second kind ``{n brace k}``.

    >>> stirling2(4, 2)
    7
    """
    if n < 0 or k < 0:
        return 0
    return _stirling2(n, k)


@lru_cache(maxsize=None)
def _stirling2(n: int, k: int) -> int:
    if n == 0 and k == 0:
        return 1
    if (n == 0 and k > 0) or (n > 0 and k == 0):
        return 0
    if k == 1:
        return 1
    if k > n:
        return 0
    # bottom-up over n keeps the recursion depth flat
    row = [1] + [0] * k
    for i in range(1, n + 1):
        for j in range(min(i, k), 0, -1):
            row[j] = row[j - 1] + j * row[j]
        row[0] = 0
    return row[k]


def assoc_stirling2(n: int, k: int, r: int) -> int:
    """r-associated Stirling number ``{n brace k}_{>=r}``: partitions of ``n``
    labelled objects into ``k`` unlabelled blocks, each of size at least ``r``.

    >>> assoc_stirling2(7, 2, 3), assoc_stirling2(7, 2, 2)
    (35, 105)
    """
    if r <= 0:
        raise ValueError(f"minimum block size r must be >= 1, got {r}")
    if n < 0 or k < 0:
        return 0
    return _assoc_stirling2(n, k, r)


@lru_cache(maxsize=None)
def _assoc_stirling2(n: int, k: int, r: int) -> int:
    if n == 0 and k == 0:
        return 1
    if n <= 0 or k <= 0 or n < k * r:
        return 0
    *_, last = _exact_rows(r, n, k)
    return last[k]


def _row_width(n: int, r: int, k_max: int | None) -> int:
    width = n // r
    return width if k_max is None else min(width, k_max)


def _exact_rows(r: int, n_max: int, k_max: int | None) -> Iterator[list[int]]:
    """Rows ``[{n brace k}_{>=r} for k in 0..K_n]`` for ``n = 0..n_max``.

    ``{n brace k}_{>=r} = k {n-1 brace k}_{>=r} + C(n-1, r-1) {n-r brace k-1}_{>=r}``
    needs row ``n - r``, so the last ``r`` rows are kept and no more.
    """
    recent: deque[list[int]] = deque(maxlen=r)
    for n in range(n_max + 1):
        width = _row_width(n, r, k_max)
        if n == 0:
            row = [1]
        else:
            prev = recent[-1]
            back = recent[0] if len(recent) == r else None
            coef = binomial(n - 1, r - 1)
            row = [0] * (width + 1)
            for k in range(1, width + 1):
                val = k * prev[k] if k < len(prev) else 0
                if back is not None and k - 1 < len(back):
                    val += coef * back[k - 1]
                row[k] = val
        recent.append(row)
        yield row


def _scaled_rows(r: int, n_max: int, k_max: int | None) -> Iterator[tuple[ScaledArray, int]]:
    """Scaled counterpart of :func:`_exact_rows`; also yields the row's error bound
    in units of EPS (largest over its entries)."""
    recent: deque[tuple[ScaledArray, int]] = deque(maxlen=r)
    for n in range(n_max + 1):
        width = _row_width(n, r, k_max)
        if n == 0:
            row, err = ScaledArray(np.ones(1), np.zeros(1, dtype=np.int64)), 0
        else:
            prev, prev_err = recent[-1]
            ks = np.arange(width + 1, dtype=np.float64)
            row = prev.padded(width + 1).mul_ints(ks)
            err = prev_err + 1
            if len(recent) == r:
                back, back_err = recent[0]
                coef = to_scaled(binomial(n - 1, r - 1))
                grown = back.padded(width + 1, shift=1).mul_scalar(coef)
                row = row + grown
                err = max(err, back_err + coef.ops + 1) + 1
        recent.append((row, err))
        yield row, err


def iter_assoc_stirling_rows(r: int, n_max: int, mode: Mode = "exact",
                             k_max: int | None = None) -> Iterator[tuple[int, object]]:
    """Yield ``(n, row)`` for ``n = 0..n_max``.

    In exact mode ``row`` is a list of ints; in scaled mode it is a
    ``(ScaledArray, err_ops)`` pair.  ``k_max`` truncates every row at that
    column (columns only feed larger columns, so truncation is exact).
    """
    if r <= 0:
        raise ValueError(f"minimum block size r must be >= 1, got {r}")
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    if mode == "exact":
        yield from enumerate(_exact_rows(r, n_max, k_max))
    elif mode == "scaled":
        yield from enumerate(_scaled_rows(r, n_max, k_max))
    else:
        raise ValueError(f"unknown mode {mode!r}")


def assoc_stirling_row_sweep(r: int, n_max: int, mode: Mode,
                             visit: Callable[[int, list], None],
                             k_max: int | None = None) -> None:
    """Call ``visit(n, row)`` for ``n = 0..n_max`` in order.

    Rows are lists over ``k = 0..floor(n/r)``: ints in exact mode,
    :class:`ScaledFloat` in scaled mode.
    """
    for n, row in iter_assoc_stirling_rows(r, n_max, mode, k_max):
        if mode == "scaled":
            values: list[ScaledFloat] = row[0].to_scalars()
            visit(n, values)
        else:
            visit(n, row)
