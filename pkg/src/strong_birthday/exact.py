"""Number kinds used throughout the package.

Counts are plain Python ``int`` (unbounded), probabilities are
:class:`fractions.Fraction` (always reduced, positive denominator).
:class:`ScaledFloat` and :class:`ScaledArray` carry a float mantissa in
``[1, 2)`` next to an unbounded base-2 exponent, so sums and products of
non-negative counts with hundreds of thousands of bits stay representable.
"""

from __future__ import annotations

import math
import sys
from collections.abc import Iterator
from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

__all__ = [
    "EPS",
    "MANTISSA_BITS",
    "ScaledArray",
    "ScaledFloat",
    "big_pow",
    "format_decimal",
    "format_rational",
    "int_to_str",
    "parse_count",
    "parse_rational",
    "rational_cmp",
    "to_scaled",
]

MANTISSA_BITS = 53
#: unit roundoff of the float mantissa
EPS = 2.0 ** -MANTISSA_BITS

# ldexp shifts beyond this flush to zero anyway; clipping keeps them in int range
_LDEXP_FLOOR = -1100


def big_pow(base: int, exp: int) -> int:
    """Exact ``base ** exp`` for ``exp >= 0`` (``big_pow(0, 0) == 1``)."""
    if exp < 0:
        raise ValueError(f"exponent must be non-negative, got {exp}")
    return pow(base, exp)


def rational_cmp(p: Fraction, q: Fraction) -> int:
    """Three-way compare by cross multiplication: -1, 0 or 1."""
    lhs = p.numerator * q.denominator
    rhs = q.numerator * p.denominator
    return (lhs > rhs) - (lhs < rhs)


@contextmanager
def _unlimited_digits() -> Iterator[None]:
    # CPython caps int<->str conversions at 4300 digits by default
    getter = getattr(sys, "get_int_max_str_digits", None)
    if getter is None:
        yield
        return
    old = getter()
    sys.set_int_max_str_digits(0)
    try:
        yield
    finally:
        sys.set_int_max_str_digits(old)


def int_to_str(x: int) -> str:
    with _unlimited_digits():
        return str(x)


def parse_count(text: str) -> int:
    with _unlimited_digits():
        value = int(text.strip())
    if value < 0:
        raise ValueError(f"count must be non-negative: {text!r}")
    return value


def parse_rational(text: str | int | Fraction) -> Fraction:
    """Parse ``"0.999"``, ``"999/1000"`` or ``"1e-3"`` into an exact rational.

    Machine floats are refused: ``0.999`` as a double is not 999/1000.
    """
    if isinstance(text, float):
        raise TypeError("pass probabilities as strings or Fractions, not floats")
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    with _unlimited_digits():
        return Fraction(text.strip())


def format_rational(q: Fraction) -> str:
    with _unlimited_digits():
        return f"{q.numerator}/{q.denominator}"


def format_decimal(q: Fraction, digits: int = 20) -> str:
    """Fixed-point decimal with ``digits`` places, rounded half-to-even."""
    if digits < 0:
        raise ValueError("digits must be non-negative")
    sign = "-" if q < 0 else ""
    num, den = abs(q.numerator), q.denominator
    quot, rem = divmod(num * 10**digits, den)
    twice = 2 * rem
    if twice > den or (twice == den and quot % 2 == 1):
        quot += 1
    if digits == 0:
        return f"{sign}{quot}"
    whole, frac = divmod(quot, 10**digits)
    return f"{sign}{whole}.{frac:0{digits}d}"


@dataclass(frozen=True)
class ScaledFloat:
    """Non-negative real ``mantissa * 2**exponent`` with ``mantissa`` in [1, 2) or 0.

    ``ops`` is a running bound, in units of :data:`EPS`, on the relative
    error accumulated since the value was exact.  Products add their
    operands' bounds plus one rounding; sums of non-negative operands take
    the larger bound plus one rounding.
    """

    mantissa: float = 0.0
    exponent: int = 0
    ops: int = 0

    def __post_init__(self) -> None:
        if self.mantissa < 0 or not math.isfinite(self.mantissa):
            raise ValueError(f"ScaledFloat mantissa must be finite and >= 0: {self.mantissa}")

    @classmethod
    def from_float(cls, x: float, exponent: int = 0, ops: int = 0) -> ScaledFloat:
        if x == 0.0:
            return cls(0.0, 0, ops)
        frac, e = math.frexp(x)
        return cls(frac * 2.0, exponent + e - 1, ops)

    @classmethod
    def from_int(cls, x: int) -> ScaledFloat:
        return to_scaled(x)

    @property
    def is_zero(self) -> bool:
        return self.mantissa == 0.0

    @property
    def rel_error_bound(self) -> float:
        return self.ops * EPS

    def __mul__(self, other: ScaledFloat | int) -> ScaledFloat:
        if not isinstance(other, ScaledFloat):
            other = to_scaled(other)
        ops = self.ops + other.ops + 1
        if self.is_zero or other.is_zero:
            return ScaledFloat(0.0, 0, ops)
        return ScaledFloat.from_float(self.mantissa * other.mantissa,
                                      self.exponent + other.exponent, ops)

    __rmul__ = __mul__

    def __add__(self, other: ScaledFloat | int) -> ScaledFloat:
        if not isinstance(other, ScaledFloat):
            other = to_scaled(other)
        ops = max(self.ops, other.ops) + 1
        if other.is_zero:
            return ScaledFloat(self.mantissa, self.exponent, ops)
        if self.is_zero:
            return ScaledFloat(other.mantissa, other.exponent, ops)
        big, small = (self, other) if self.exponent >= other.exponent else (other, self)
        gap = big.exponent - small.exponent
        if gap > MANTISSA_BITS:
            return ScaledFloat(big.mantissa, big.exponent, ops)
        return ScaledFloat.from_float(big.mantissa + math.ldexp(small.mantissa, -gap),
                                      big.exponent, ops)

    __radd__ = __add__

    def reciprocal(self) -> ScaledFloat:
        if self.is_zero:
            raise ZeroDivisionError("reciprocal of zero")
        return ScaledFloat.from_float(1.0 / self.mantissa, -self.exponent, self.ops + 1)

    def __truediv__(self, other: ScaledFloat | int) -> ScaledFloat:
        if not isinstance(other, ScaledFloat):
            other = to_scaled(other)
        return self * other.reciprocal()

    def __pow__(self, k: int) -> ScaledFloat:
        result = ScaledFloat(1.0, 0, 0)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def to_float(self) -> float:
        """Nearest double; raises ``OverflowError`` above the double range."""
        return math.ldexp(self.mantissa, self.exponent)

    def to_fraction(self) -> Fraction:
        return Fraction(self.mantissa) * Fraction(2) ** self.exponent

    def log2(self) -> float:
        if self.is_zero:
            return -math.inf
        return self.exponent + math.log2(self.mantissa)

    def __repr__(self) -> str:
        return f"ScaledFloat({self.mantissa!r} * 2**{self.exponent}, ops={self.ops})"


def to_scaled(x: int) -> ScaledFloat:
    """Correctly rounded conversion of a non-negative integer."""
    if x < 0:
        raise ValueError("ScaledFloat holds non-negative values only")
    if x == 0:
        return ScaledFloat(0.0, 0, 0)
    e = x.bit_length() - 1
    # int / int is correctly rounded in CPython whatever the operand size
    mant = x / (1 << e)
    ops = 0 if _fits_mantissa(x) else 1
    if mant == 2.0:
        return ScaledFloat(1.0, e + 1, ops)
    return ScaledFloat(mant, e, ops)


def _fits_mantissa(x: int) -> bool:
    return x == 0 or x.bit_length() - (x & -x).bit_length() + 1 <= MANTISSA_BITS


class ScaledArray:
    """Vector of :class:`ScaledFloat` values held as parallel numpy arrays."""

    __slots__ = ("mant", "exp")

    def __init__(self, mant: np.ndarray, exp: np.ndarray, normalize: bool = True):
        self.mant = np.asarray(mant, dtype=np.float64)
        self.exp = np.asarray(exp, dtype=np.int64)
        if normalize:
            self._normalize()

    def _normalize(self) -> None:
        frac, e = np.frexp(self.mant)
        self.mant = frac * 2.0
        self.exp = np.where(frac == 0.0, 0, self.exp + e - 1)

    @classmethod
    def zeros(cls, size: int) -> ScaledArray:
        return cls(np.zeros(size), np.zeros(size, dtype=np.int64), normalize=False)

    @classmethod
    def from_scalars(cls, values: list[ScaledFloat]) -> ScaledArray:
        return cls(np.array([v.mantissa for v in values], dtype=np.float64),
                   np.array([v.exponent for v in values], dtype=np.int64), normalize=False)

    @classmethod
    def from_ints(cls, values: list[int]) -> ScaledArray:
        return cls.from_scalars([to_scaled(v) for v in values])

    def __len__(self) -> int:
        return len(self.mant)

    def __getitem__(self, k: int) -> ScaledFloat:
        return ScaledFloat(float(self.mant[k]), int(self.exp[k]))

    def padded(self, size: int, shift: int = 0) -> ScaledArray:
        """Copy placed at offset ``shift`` inside a zero array of length ``size``."""
        mant = np.zeros(size)
        exp = np.zeros(size, dtype=np.int64)
        count = max(0, min(len(self), size - shift))
        mant[shift:shift + count] = self.mant[:count]
        exp[shift:shift + count] = self.exp[:count]
        return ScaledArray(mant, exp, normalize=False)

    def mul_ints(self, factors: np.ndarray) -> ScaledArray:
        """Elementwise product with integer factors below 2**53."""
        return ScaledArray(self.mant * factors, self.exp)

    def mul_scalar(self, factor: ScaledFloat) -> ScaledArray:
        return ScaledArray(self.mant * factor.mantissa, self.exp + factor.exponent)

    def mul(self, other: ScaledArray) -> ScaledArray:
        return ScaledArray(self.mant * other.mant, self.exp + other.exp)

    def __add__(self, other: ScaledArray) -> ScaledArray:
        a_zero = self.mant == 0.0
        b_zero = other.mant == 0.0
        top = np.where(a_zero, other.exp, np.where(b_zero, self.exp,
                                                   np.maximum(self.exp, other.exp)))
        a = np.ldexp(self.mant, np.clip(self.exp - top, _LDEXP_FLOOR, 0).astype(np.int32))
        b = np.ldexp(other.mant, np.clip(other.exp - top, _LDEXP_FLOOR, 0).astype(np.int32))
        return ScaledArray(a + b, top)

    def total(self) -> ScaledFloat:
        """Sum of all entries, aligned to the largest exponent and summed exactly."""
        live = self.mant != 0.0
        if not live.any():
            return ScaledFloat(0.0, 0)
        top = int(self.exp[live].max())
        shifted = np.ldexp(self.mant, np.clip(self.exp - top, _LDEXP_FLOOR, 0).astype(np.int32))
        return ScaledFloat.from_float(math.fsum(shifted.tolist()), top)

    def to_scalars(self) -> list[ScaledFloat]:
        return [ScaledFloat(float(m), int(e)) for m, e in zip(self.mant, self.exp)]
