from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from strong_birthday.assoc import iter_prob_sweep
from strong_birthday.exact import EPS
from strong_birthday.solver import (
    ScanCapExceeded,
    ThresholdQuery,
    _in_band,
    exact_probability,
    min_people,
    table_reproduce,
)

HALF = Fraction(1, 2)


@pytest.mark.parametrize("m, p, expected", [
    (10, "1/2", 41),
    (10, "0.999", 112),
    (365, "0.5", 3064),
    (1, "0.5", 2),
    (2, "0.5", 2),
])
def test_min_people(m, p, expected):
    res = min_people(m, p)
    assert res.n_min == expected
    assert res.prob_below < res.p <= res.prob_at
    assert res.rows_scanned == expected


def test_bracket_is_exact_probability():
    res = min_people(365, HALF)
    assert res.prob_at == exact_probability(365, 3064)
    assert res.prob_below == exact_probability(365, 3063)
    assert res.certification == "scaled-with-margin"


def test_small_m_is_exact_end_to_end():
    res = min_people(100, "0.999")
    assert res.n_min == 1410
    assert res.certification == "exact"


def test_r3_threshold():
    res = min_people(5, HALF, r=3)
    scan = [(row.n, row.prob) for row in iter_prob_sweep(5, 3, res.n_min, "exact")]
    assert all(p < HALF for n, p in scan[1:-1])
    assert scan[-1][1] >= HALF


def test_scaled_mode_recomputes_in_band():
    # threshold set to the exact value itself lands inside the error band
    target = exact_probability(30, 150)
    res = min_people(30, target, mode="scaled")
    assert res.n_min == 150
    assert res.exact_recomputes == 1
    # the row below was decided outside the band, in floats
    assert res.certification == "scaled-with-margin"
    assert res.prob_at == target


def test_band_rule():
    assert _in_band(0.5 + 5e-13, 0, 0.5)
    assert not _in_band(0.5 + 1e-9, 100, 0.5)
    assert _in_band(0.5 + 1e-9, int(1e-9 / (10 * EPS * 0.5)) + 10, 0.5)


class TestQueryValidation:
    @pytest.mark.parametrize("p", ["0", "1", "1.5", "-0.1"])
    def test_bad_threshold(self, p):
        with pytest.raises(ValueError):
            ThresholdQuery(10, p)

    def test_float_threshold_refused(self):
        with pytest.raises(TypeError):
            ThresholdQuery(10, 0.5)

    def test_bad_r_and_m(self):
        with pytest.raises(ValueError):
            ThresholdQuery(10, "1/2", r=1)
        with pytest.raises(ValueError):
            ThresholdQuery(0, "1/2")

    def test_default_cap(self):
        assert ThresholdQuery(10, "1/2").cap == 640
        assert ThresholdQuery(10, "1/2", r=3, scan_cap=9).cap == 9

    def test_cap_exceeded(self):
        with pytest.raises(ScanCapExceeded):
            min_people(10, HALF, scan_cap=40)
        with pytest.raises(ScanCapExceeded):
            min_people(200, HALF, scan_cap=100, mode="scaled")


def test_mode_independence_up_to_50():
    for m in range(1, 51):
        exact = min_people(m, HALF, mode="exact")
        scaled = min_people(m, HALF, mode="scaled")
        assert exact.n_min == scaled.n_min
        assert exact.prob_at == scaled.prob_at


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 6), st.fractions(min_value=Fraction(1, 1000), max_value=HALF))
def test_first_crossing_minimality(m, p):
    res = min_people(m, p)
    for n in range(1, res.n_min):
        assert exact_probability(m, n) < p
    assert exact_probability(m, res.n_min) >= p


def test_non_monotone_small_n():
    # P(m,2) = 1/m exceeds P(m,3) = 1/m^2
    assert exact_probability(4, 2) == Fraction(1, 4)
    assert exact_probability(4, 3) == Fraction(1, 16)


def test_table_reproduce_small():
    grid = table_reproduce([10, 50, 100], ["1/2"], jobs=1)
    assert [res.n_min for res in grid[0]] == [41, 304, 690]


def test_table_reproduce_shape_and_pool():
    grid = table_reproduce([2, 3, 4], ["1/2", "0.9"], jobs=2)
    assert len(grid) == 2 and all(len(row) == 3 for row in grid)
    assert [res.m for res in grid[1]] == [2, 3, 4]
    assert grid[0][0].n_min == 2
    assert all(res.p == Fraction(9, 10) for res in grid[1])


def test_table_reproduce_needs_input():
    with pytest.raises(ValueError):
        table_reproduce([], ["1/2"])
