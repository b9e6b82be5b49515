"""Published minimum group sizes for the strong birthday problem (uniform birthdays).

Embedded as data so ``table --check`` is a regression gate, not a
recompute-and-trust.
"""

from fractions import Fraction

PRESET_NAME = "dasgupta2005"

DAYS = (10, 50, 100, 200, 364, 365, 366, 400, 500, 1000)
THRESHOLDS = (Fraction(1, 2), Fraction(999, 1000))

EXPECTED: dict[tuple[int, Fraction], int] = {
    **dict(zip(((m, Fraction(1, 2)) for m in DAYS),
               (41, 304, 690, 1541, 3054, 3064, 3073, 3399, 4375, 9528))),
    **dict(zip(((m, Fraction(999, 1000)) for m in DAYS),
               (112, 665, 1410, 2975, 5653, 5669, 5686, 6253, 7937, 16619))),
}
