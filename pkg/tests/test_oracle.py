import pytest

from bruteforce import count_min_occupancy, count_singletons
from strong_birthday.assoc import prob_shared_at_least
from strong_birthday.dp import iter_dp_layers
from strong_birthday.oracle import (
    BudgetExceeded,
    EnumerationBudget,
    McEstimate,
    enumerate_exact_singletons,
    enumerate_min_occupancy,
    mc_estimate,
    occupancy_profile,
)


@pytest.mark.parametrize("m, n, k, expected", [
    (3, 2, 0, 3),
    (2, 2, 2, 2),
    (7, 0, 0, 1),
    (0, 0, 0, 1),
])
def test_enumerate_exact_singletons(m, n, k, expected):
    assert enumerate_exact_singletons(m, n, k) == expected


@pytest.mark.parametrize("m, n, r, expected", [
    (2, 2, 2, 2),
    (3, 4, 2, 21),
    (3, 2, 3, 0),
    (1, 5, 2, 1),
])
def test_enumerate_min_occupancy(m, n, r, expected):
    assert enumerate_min_occupancy(m, n, r) == expected


def test_odometer_matches_itertools():
    for m in range(1, 5):
        for n in range(6):
            for k in range(n + 1):
                assert enumerate_exact_singletons(m, n, k) == count_singletons(m, n, k)
            for r in (2, 3):
                assert enumerate_min_occupancy(m, n, r) == count_min_occupancy(m, n, r)


def test_profile_covers_sample_space():
    for m in range(1, 7):
        for n in range(7):
            assert sum(occupancy_profile(m, n).values()) == m**n


def test_matches_dp_shared_count():
    for m in range(1, 6):
        for n, layer in iter_dp_layers(m, 7):
            if n == 0:
                continue
            assert enumerate_min_occupancy(m, n, 2) == sum(row[0] for row in layer[1:])


def test_budget():
    small = EnumerationBudget(100)
    assert small.admits(10, 2)
    assert not small.admits(10, 3)
    with pytest.raises(BudgetExceeded):
        enumerate_exact_singletons(10, 3, 0, small)


class TestMonteCarlo:
    def test_single_day(self):
        assert mc_estimate(1, 5, 2, 500).estimate == 1.0

    def test_fair_coin_case(self):
        est = mc_estimate(2, 2, 2, 10**6, seed=11)
        assert abs(est.estimate - 0.5) <= 5 * est.std_err
        assert est.std_err < 0.0006

    def test_deterministic(self):
        a = mc_estimate(20, 60, 2, 20_000, seed=42)
        b = mc_estimate(20, 60, 2, 20_000, seed=42)
        assert a.successes == b.successes

    def test_workers_change_stream_but_stay_deterministic(self):
        a = mc_estimate(20, 60, 2, 20_000, seed=42, workers=3)
        b = mc_estimate(20, 60, 2, 20_000, seed=42, workers=3)
        assert a == b and a.workers == 3

    def test_agrees_with_engine(self):
        exact = float(prob_shared_at_least(8, 20, 2))
        assert mc_estimate(8, 20, 2, 50_000, seed=5).within(exact)

    def test_within_zero_stderr(self):
        est = McEstimate(trials=10, successes=10, seed=0)
        assert est.std_err == 0
        assert est.within(1.0)
        assert not est.within(0.9)

    def test_bad_trials(self):
        with pytest.raises(ValueError):
            mc_estimate(3, 3, 2, 0)
