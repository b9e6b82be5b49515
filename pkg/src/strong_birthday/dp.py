"""First-principles dynamic program over ``T(j, k, n, m)``.

``T(j, k, n, m)`` counts assignments of ``n`` birthdays to ``m`` days leaving
``j`` days with two or more birthdays and ``k`` singleton days.  Adding person
``n`` either joins a crowded day, turns a singleton into a crowded day, or
opens a new singleton::

    T(j,k,n,m) = j T(j,k,n-1,m) + (k+1) T(j-1,k+1,n-1,m) + (m-j-k+1) T(j,k-1,n-1,m)

Layers are built bottom-up over ``n``; only the previous layer is kept.
"""

from __future__ import annotations

from collections.abc import Callable, Iterator
from fractions import Fraction

from .exact import big_pow

__all__ = [
    "Layer",
    "dp_layer_sweep",
    "dp_t",
    "iter_dp_layers",
    "layer_total",
    "prob_exact_singletons_dp",
    "prob_strong_birthday_dp",
    "singleton_marginal",
]

#: ``layer[j][k] == T(j, k, n, m)``
Layer = list[list[int]]


def _get(layer: Layer, j: int, k: int) -> int:
    if j < 0 or k < 0 or j >= len(layer) or k >= len(layer[j]):
        return 0
    return layer[j][k]


def iter_dp_layers(m: int, n_max: int) -> Iterator[tuple[int, Layer]]:
    """Yield ``(n, layer)`` for ``n = 0..n_max``.

    Layer ``n`` spans ``j <= min(n // 2, m)`` and ``k <= min(n, m)``;
    entries with ``m < j + k`` or ``n < 2j + k`` are zero.
    """
    if m < 0:
        raise ValueError("m must be non-negative")
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    prev: Layer = [[1]]
    yield 0, prev
    for n in range(1, n_max + 1):
        j_top = min(n // 2, m)
        k_top = min(n, m)
        layer = [[0] * (k_top + 1) for _ in range(j_top + 1)]
        for j in range(j_top + 1):
            row = layer[j]
            for k in range(min(k_top, n - 2 * j, m - j) + 1):
                row[k] = (j * _get(prev, j, k)
                          + (k + 1) * _get(prev, j - 1, k + 1)
                          + (m - j - k + 1) * _get(prev, j, k - 1))
        prev = layer
        yield n, layer


def dp_layer_sweep(m: int, n_max: int, visit: Callable[[int, Layer], None]) -> None:
    for n, layer in iter_dp_layers(m, n_max):
        visit(n, layer)


def _layer_at(m: int, n: int) -> Layer:
    *_, (_, layer) = iter_dp_layers(m, n)
    return layer


def dp_t(j: int, k: int, n: int, m: int) -> int:
    """``T(j, k, n, m)``; out-of-range indices give 0."""
    if m < 0:
        raise ValueError("m must be non-negative")
    if j < 0 or k < 0 or n < 0 or n < 2 * j + k or m < j + k:
        return 0
    return _get(_layer_at(m, n), j, k)


def layer_total(layer: Layer) -> int:
    return sum(map(sum, layer))


def singleton_marginal(layer: Layer, k: int) -> int:
    """``sum_j T(j, k, n, m)``: assignments with exactly ``k`` singleton days."""
    return sum(_get(layer, j, k) for j in range(len(layer)))


def prob_strong_birthday_dp(m: int, n: int) -> Fraction:
    """``sum_{j>=1} T(j, 0, n, m) / m**n``, with the empty group counted as 1."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return Fraction(1)
    if m <= 0:
        raise ValueError("m = 0 with n > 0 has an empty sample space")
    layer = _layer_at(m, n)
    shared = sum(_get(layer, j, 0) for j in range(1, len(layer)))
    return Fraction(shared, big_pow(m, n))


def prob_exact_singletons_dp(m: int, n: int, k: int) -> Fraction:
    """Probability of exactly ``k`` singleton days, read off the DP layer."""
    if n < 0 or k < 0:
        raise ValueError("n and k must be non-negative")
    if n == 0:
        return Fraction(int(k == 0))
    if m <= 0:
        raise ValueError("m = 0 with n > 0 has an empty sample space")
    return Fraction(singleton_marginal(_layer_at(m, n), k), big_pow(m, n))
