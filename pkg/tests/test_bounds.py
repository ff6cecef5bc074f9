"""Tests for the sample-complexity bounds."""

from fractions import Fraction
from math import comb

import numpy as np
import pytest

from ccuc.errors import DataError
from ccuc.scenarios.bounds import (
    RiskSpec,
    binomial_tail,
    epsilon_bound,
    required_sample_size,
)

EPSILONS = [0.3, 0.2, 0.1, 0.075, 0.05, 0.025, 0.01]
SAMPLE_SIZES_H24 = [143, 221, 455, 610, 921, 1853, 4650]
SAMPLE_SIZES_H75168 = [253416, 380419, 761394, 1015370, 1523320, 3047161, 7618678]


def exact_tail(n: int, eps: float, h: int) -> float:
    """Binomial tail summed in exact rational arithmetic."""
    e = Fraction(eps)
    total = sum(comb(n, i) * e**i * (1 - e) ** (n - i) for i in range(h))
    return float(total)


class TestRiskSpec:
    """Test RiskSpec validation."""

    @pytest.mark.parametrize("eps", [0.0, 1.0, -0.1, 1.5])
    def test_epsilon_out_of_range(self, eps):
        with pytest.raises(DataError):
            RiskSpec(epsilon=eps, beta=0.01, h=3)

    @pytest.mark.parametrize("beta", [0.0, 1.0])
    def test_beta_out_of_range(self, beta):
        with pytest.raises(DataError):
            RiskSpec(epsilon=0.1, beta=beta, h=3)

    def test_h_must_be_positive(self):
        with pytest.raises(DataError):
            RiskSpec(epsilon=0.1, beta=0.01, h=0)

    def test_h_must_be_integral(self):
        with pytest.raises(DataError):
            RiskSpec(epsilon=0.1, beta=0.01, h=2.5)


class TestBinomialTail:
    """Test the log-space binomial tail."""

    def test_h_one_is_all_satisfied_probability(self):
        assert binomial_tail(10, 0.1, 1) == pytest.approx(0.9**10, rel=1e-14)

    def test_h_equal_n_plus_one_is_one(self):
        assert binomial_tail(7, 0.3, 8) == pytest.approx(1.0, rel=1e-12)

    def test_small_case_by_hand(self):
        # N=3, eps=0.5, h=2: (1 + 3) / 8
        assert binomial_tail(3, 0.5, 2) == pytest.approx(0.5, rel=1e-13)

    def test_matches_exact_arithmetic(self):
        rng = np.random.default_rng(2024)
        for _ in range(100):
            n = int(rng.integers(1, 201))
            eps = float(rng.uniform(0.01, 0.5))
            h = int(rng.integers(1, n + 2))
            assert binomial_tail(n, eps, h) == pytest.approx(
                exact_tail(n, eps, h), rel=1e-12, abs=1e-300
            ), (n, eps, h)

    def test_nonincreasing_in_n(self):
        values = [binomial_tail(n, 0.1, 5) for n in range(4, 200)]
        assert all(a >= b for a, b in zip(values, values[1:]))

    def test_large_n_does_not_underflow_to_nan(self):
        value = binomial_tail(10_000_000, 0.01, 75168)
        assert 0.0 <= value <= 1.0

    @pytest.mark.parametrize("eps", [0.0, 1.0])
    def test_eps_domain(self, eps):
        with pytest.raises(DataError):
            binomial_tail(10, eps, 2)

    @pytest.mark.parametrize("h", [0, 12])
    def test_h_domain(self, h):
        with pytest.raises(DataError):
            binomial_tail(10, 0.1, h)


class TestRequiredSampleSize:
    """Test the smallest-N search."""

    @pytest.mark.parametrize("eps,expected", zip(EPSILONS, SAMPLE_SIZES_H24))
    def test_day_ahead_horizon(self, eps, expected):
        assert required_sample_size(RiskSpec(epsilon=eps, beta=1e-4, h=24)) == expected

    @pytest.mark.parametrize("eps,expected", zip(EPSILONS, SAMPLE_SIZES_H75168))
    def test_full_decision_count(self, eps, expected):
        assert required_sample_size(RiskSpec(epsilon=eps, beta=1e-4, h=75168)) == expected

    def test_result_is_minimal(self):
        spec = RiskSpec(epsilon=0.1, beta=1e-4, h=24)
        n = required_sample_size(spec)
        assert binomial_tail(n, spec.epsilon, spec.h) <= spec.beta
        assert binomial_tail(n - 1, spec.epsilon, spec.h) > spec.beta

    def test_single_support_closed_form(self):
        # h = 1: (1 - eps)^N <= beta
        assert required_sample_size(RiskSpec(epsilon=0.5, beta=0.5, h=1)) == 1
        assert required_sample_size(RiskSpec(epsilon=0.5, beta=0.2, h=1)) == 3

    def test_monotone_in_epsilon(self):
        sizes = [required_sample_size(RiskSpec(epsilon=e, beta=1e-4, h=6)) for e in EPSILONS]
        assert sizes == sorted(sizes)

    @pytest.mark.parametrize("eps", [0.2, 0.1, 0.05])
    def test_rises_with_h(self, eps):
        sizes = [required_sample_size(RiskSpec(epsilon=eps, beta=1e-4, h=h)) for h in (1, 6, 24)]
        assert sizes[0] < sizes[1] < sizes[2]

    @pytest.mark.parametrize("h", [1, 6, 24])
    def test_rises_as_beta_shrinks(self, h):
        sizes = [
            required_sample_size(RiskSpec(epsilon=0.1, beta=b, h=h)) for b in (0.05, 1e-4, 1e-8)
        ]
        assert sizes[0] < sizes[1] < sizes[2]


class TestEpsilonBound:
    """Test the guaranteed violation level for a given N."""

    def test_vacuous_below_h(self):
        bound = epsilon_bound(10, 1e-4, 24)
        assert bound.epsilon == 1.0
        assert bound.vacuous is True

    def test_consistent_with_sample_size(self):
        for eps, n in zip(EPSILONS, SAMPLE_SIZES_H24):
            bound = epsilon_bound(n, 1e-4, 24)
            assert not bound.vacuous
            assert bound.epsilon <= eps + 1e-9

    def test_tail_at_bound_meets_beta(self):
        bound = epsilon_bound(500, 0.01, 10)
        assert binomial_tail(500, bound.epsilon, 10) <= 0.01
        assert binomial_tail(500, bound.epsilon - 1e-6, 10) > 0.01

    def test_single_scenario_half_confidence(self):
        # (1 - eps)^1 = 0.5
        assert epsilon_bound(1, 0.5, 1).epsilon == pytest.approx(0.5, abs=1e-8)

    def test_one_short_of_table_size(self):
        assert epsilon_bound(454, 1e-4, 24).epsilon > 0.1

    @pytest.mark.parametrize("n", [30, 100, 455, 1000])
    @pytest.mark.parametrize("beta", [1e-4, 0.05])
    @pytest.mark.parametrize("h", [1, 6, 24])
    def test_slightly_lower_level_needs_more_scenarios(self, n, beta, h):
        eps = epsilon_bound(n, beta, h).epsilon
        assert required_sample_size(RiskSpec(epsilon=eps - 1e-6, beta=beta, h=h)) > n
        assert required_sample_size(RiskSpec(epsilon=eps, beta=beta, h=h)) <= n

    def test_decreases_with_n(self):
        levels = [epsilon_bound(n, 1e-4, 24).epsilon for n in (100, 400, 1000, 5000)]
        assert levels == sorted(levels, reverse=True)

    def test_invalid_beta(self):
        with pytest.raises(DataError):
            epsilon_bound(100, 0.0, 24)

    def test_invalid_h(self):
        with pytest.raises(DataError):
            epsilon_bound(100, 0.01, 0)
