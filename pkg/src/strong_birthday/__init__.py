"""Exact Strong Birthday Problem probabilities.

Three independent routes to the probability that every person in a group of
``n`` shares a birthday with someone else, given ``m`` equally likely days:

* :func:`prob_strong_birthday_formula` -- inclusion-exclusion over singleton days
* :func:`prob_strong_birthday_dp` -- DP over (crowded days, singleton days)
* :func:`prob_shared_at_least` -- associated Stirling numbers, any minimum occupancy ``r``

plus :func:`min_people`, the least ``n`` reaching a probability threshold.
"""

from .assoc import labeled_blocks, prob_shared_at_least
from .combinatorics import assoc_stirling2, binomial, falling_factorial, stirling2
from .dp import dp_t, prob_strong_birthday_dp
from .exact import ScaledFloat, big_pow, format_decimal, parse_rational, rational_cmp, to_scaled
from .formula import (
    m_overcount,
    n_exact_singletons,
    prob_exact_singletons,
    prob_strong_birthday_formula,
)
from .solver import ScanCapExceeded, SolverResult, min_people, table_reproduce

__all__ = [
    "ScaledFloat",
    "ScanCapExceeded",
    "SolverResult",
    "assoc_stirling2",
    "big_pow",
    "binomial",
    "dp_t",
    "falling_factorial",
    "format_decimal",
    "labeled_blocks",
    "m_overcount",
    "min_people",
    "n_exact_singletons",
    "parse_rational",
    "prob_exact_singletons",
    "prob_shared_at_least",
    "prob_strong_birthday_dp",
    "prob_strong_birthday_formula",
    "rational_cmp",
    "stirling2",
    "table_reproduce",
    "to_scaled",
]

__version__ = "0.1.0"
