import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ddsemantic.core.exceptions import ParameterError
from ddsemantic.features.pic_information import (
    binary_entropy,
    binomial_output_pmf,
    capacity_at,
    capacity_bruteforce,
    capacity_closed_form,
    channel_point,
    crossover_probability,
    mutual_information_bruteforce,
    mutual_information_derivative,
    mutual_information_z,
    optimal_input,
    optimal_input_grid_search,
    z_equivalence_gap,
)

probabilities = st.floats(min_value=0.0, max_value=1.0, allow_nan=False)
useful_mu = st.floats(min_value=0.0, max_value=0.999, allow_nan=False)


class TestEntropyAndLaw:
    @pytest.mark.parametrize("q,expected", [(0.0, 0.0), (1.0, 0.0), (0.5, 1.0)])
    def test_binary_entropy_exact_values(self, q, expected):
        assert binary_entropy(q) == pytest.approx(expected, abs=1e-15)

    def test_binary_entropy_against_summation(self):
        q = 0.11
        summed = -(q * math.log2(q) + (1 - q) * math.log2(1 - q))
        assert binary_entropy(q) == pytest.approx(summed, abs=1e-14)
        assert binary_entropy(q) == pytest.approx(0.49993, abs=1e-4)

    def test_binary_entropy_rejects_non_probability(self):
        with pytest.raises(ParameterError):
            binary_entropy(1.2)

    def test_binomial_pmf_silent_input(self):
        pmf = binomial_output_pmf(0.0, channel_point(0.3, 4, 1.0))
        np.testing.assert_allclose(pmf, [1, 0, 0, 0, 0])

    def test_binomial_pmf_certain_detection(self):
        pmf = binomial_output_pmf(1.0, channel_point(1.0, 3, 1.0))
        np.testing.assert_allclose(pmf, [0, 0, 0, 1])

    def test_binomial_pmf_symmetric(self):
        pmf = binomial_output_pmf(1.0, channel_point(0.5, 2, 1.0))
        np.testing.assert_allclose(pmf, [0.25, 0.5, 0.25])


class TestCrossover:
    def test_small_values(self):
        assert crossover_probability(0.5, 2) == pytest.approx(0.25)
        assert crossover_probability(0.3, 0) == 1.0
        assert crossover_probability(1.0, 5) == 0.0

    def test_default_operating_point(self):
        assert crossover_probability(0.00144, 58) == pytest.approx(0.9198, abs=1e-4)

    def test_channel_point_always_derives_mu(self):
        point = channel_point(0.5, 2, 0.02)
        assert point.mu_p == pytest.approx(0.25)

    @given(p_i=probabilities, n=st.integers(min_value=0, max_value=500))
    def test_crossover_is_a_probability(self, p_i, n):
        assert 0.0 <= crossover_probability(p_i, n) <= 1.0

    @given(p_i=probabilities, n=st.integers(min_value=0, max_value=500))
    def test_crossover_non_increasing_in_budget(self, p_i, n):
        assert crossover_probability(p_i, n + 1) <= crossover_probability(p_i, n)

    def test_negative_budget_rejected(self):
        with pytest.raises(ParameterError):
            crossover_probability(0.1, -1)


class TestZChannel:
    def test_noiseless_channel(self):
        assert mutual_information_z(0.5, 0.0) == pytest.approx(1.0)

    @pytest.mark.parametrize("p1", [0.0, 0.3, 1.0])
    def test_useless_channel(self, p1):
        assert mutual_information_z(p1, 1.0) == 0.0

    def test_half_crossover_at_optimum(self):
        assert mutual_information_z(0.4, 0.5) == pytest.approx(math.log2(1.25), abs=1e-5)

    @given(p1=probabilities, mu=probabilities)
    def test_mutual_information_bounded(self, p1, mu):
        value = mutual_information_z(p1, mu)
        assert 0.0 <= value <= 1.0 + 1e-12

    def test_derivative_vanishes_at_optimum(self):
        for mu in (0.1, 0.5, 0.9):
            best = optimal_input(mu)
            assert mutual_information_derivative(best.p1_star, mu) == pytest.approx(0.0, abs=1e-9)

    def test_derivative_undefined_at_zero_input(self):
        with pytest.raises(ParameterError):
            mutual_information_derivative(0.0, 0.5)


class TestOptimalInput:
    def test_noiseless_optimum(self):
        assert optimal_input(0.0).p1_star == pytest.approx(0.5)

    def test_half_crossover(self):
        best = optimal_input(0.5)
        assert best.p1_star == pytest.approx(0.4, abs=1e-12)
        assert best.p1_star == pytest.approx(optimal_input_grid_search(0.5), abs=1e-4)

    def test_high_crossover_matches_grid_search(self):
        best = optimal_input(0.99)
        assert best.p1_star == pytest.approx(optimal_input_grid_search(0.99), abs=1e-4)
        assert 1 / math.e < best.p1_star < 0.5

    def test_useless_channel_rejected(self):
        with pytest.raises(ParameterError):
            optimal_input(1.0)

    @settings(max_examples=50, deadline=None)
    @given(mu=useful_mu)
    def test_optimum_lies_between_limits(self, mu):
        p1_star = optimal_input(mu).p1_star
        assert 1 / math.e - 1e-9 <= p1_star <= 0.5 + 1e-12

    @given(mu=useful_mu)
    def test_optimum_attains_closed_form(self, mu):
        best = optimal_input(mu, tau=0.02)
        assert best.capacity == pytest.approx(capacity_closed_form(mu, 0.02), rel=1e-9, abs=1e-12)


class TestCapacity:
    def test_perfect_channel(self):
        assert capacity_closed_form(0.0, 1.0) == 1.0

    def test_useless_channel(self):
        assert capacity_closed_form(1.0, 0.02) == 0.0

    def test_half_crossover(self):
        assert capacity_closed_form(0.5, 0.02) == pytest.approx(16.096, abs=1e-3)

    def test_continuity_at_limits(self):
        assert capacity_closed_form(1e-12, 1.0) == pytest.approx(1.0, abs=1e-9)
        assert capacity_closed_form(1.0 - 1e-12, 1.0) == pytest.approx(0.0, abs=1e-9)

    @given(mu=useful_mu, p1=probabilities)
    def test_capacity_dominates_any_input(self, mu, p1):
        assert capacity_closed_form(mu, 1.0) >= mutual_information_z(p1, mu) - 1e-12

    @given(a=probabilities, b=probabilities)
    def test_capacity_non_increasing_in_crossover(self, a, b):
        low, high = sorted((a, b))
        assert capacity_closed_form(high, 1.0) <= capacity_closed_form(low, 1.0) + 1e-12

    def test_capacity_at_composes(self):
        assert capacity_at(0.5, 2, 1.0) == pytest.approx(capacity_closed_form(0.25, 1.0))

    def test_non_positive_interval_rejected(self):
        with pytest.raises(ParameterError):
            capacity_closed_form(0.5, 0.0)


class TestExhaustiveOracles:
    def test_identity_channel(self):
        assert mutual_information_bruteforce(0.5, channel_point(1.0, 1, 1.0)) == pytest.approx(1.0)

    def test_collapse_to_z_channel(self):
        point = channel_point(0.5, 2, 1.0)
        assert mutual_information_bruteforce(0.4, point) == pytest.approx(
            mutual_information_z(0.4, 0.25), abs=1e-12
        )

    def test_collapse_at_default_scale(self):
        point = channel_point(0.0025, 20, 0.02)
        p1 = optimal_input(point.mu_p).p1_star
        assert z_equivalence_gap(point, p1) <= 1e-12

    def test_capacity_identity_channel(self):
        assert capacity_bruteforce(channel_point(1.0, 1, 1.0)) == pytest.approx(1.0, abs=1e-9)

    def test_capacity_matches_closed_form(self):
        assert capacity_bruteforce(channel_point(0.5, 2, 1.0)) == pytest.approx(
            capacity_closed_form(0.25, 1.0), abs=1e-6
        )

    def test_capacity_dominates_fixed_input(self):
        point = channel_point(0.1, 7, 0.5)
        assert capacity_bruteforce(point) >= mutual_information_z(0.3, point.mu_p) / 0.5 - 1e-12

    def test_exhaustive_limit(self):
        with pytest.raises(ParameterError):
            mutual_information_bruteforce(0.5, channel_point(0.1, 65, 1.0))

    @pytest.mark.parametrize("n", [1, 5, 20, 64])
    @pytest.mark.parametrize("p_i", [0.001, 0.05, 0.5, 0.9])
    def test_z_equivalence_grid(self, n, p_i):
        point = channel_point(p_i, n, 1.0)
        for p1 in (0.1, 0.37, 0.5, 0.9):
            assert z_equivalence_gap(point, p1) <= 1e-12
