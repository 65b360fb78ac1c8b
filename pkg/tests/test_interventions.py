import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ddsemantic.core.config import DEFAULT_TAU_GRID
from ddsemantic.core.exceptions import HorizonError, ParameterError
from ddsemantic.features.catalogue.validation import semantic_oracle, semantic_oracle_mismatches
from ddsemantic.features.interventions import (
    GridScale,
    InterventionSpec,
    SemanticResult,
    SweepCurve,
    curve_from_impulses,
    default_interventions,
    evaluate_point,
    extract_pooled_semantic_information,
    extract_semantic_information,
    reference_deviation,
    simulate_family,
    sweep,
    temporal_profile,
)
from ddsemantic.features.interventions.semantic import admissible_threshold
from ddsemantic.features.pharmacodynamics import ViabilityChange
from ddsemantic.features.reactive_channel import SimulationSettings

from tests.conftest import make_curve, make_impulse

curve_points = st.lists(
    st.tuples(
        st.floats(min_value=0.0, max_value=1.0, allow_nan=False),
        st.floats(min_value=0.0, max_value=100.0, allow_nan=False),
    ),
    min_size=1,
    max_size=15,
)
epsilons = st.floats(min_value=0.0, max_value=0.5, allow_nan=False)


class TestInterventionSpec:
    def test_default_intervention_set(self):
        specs = {spec.parameter: spec for spec in default_interventions()}
        assert list(specs) == ["lambda", "k_d", "k_f", "k_b", "k_i"]
        assert specs["k_f"].scale is GridScale.LOG
        assert specs["lambda"].grid_points == 61

    def test_grid_pins_ends(self):
        for spec in default_interventions(grid_points=7):
            grid = spec.grid()
            assert grid.size == 7
            assert grid[0] == spec.range_min
            assert grid[-1] == spec.range_max
            assert np.all(np.diff(grid) > 0)

    def test_log_grid_is_geometric(self):
        spec = InterventionSpec(parameter="k_f", range_min=1e-14, range_max=4e-14, grid_points=3, scale="log")
        assert spec.grid()[1] == pytest.approx(2e-14)

    @pytest.mark.parametrize(
        "overrides",
        [
            {"range_min": 10.0, "range_max": 5.0},
            {"range_min": 0.0},
            {"grid_points": 1},
            {"parameter": "D"},
        ],
    )
    def test_invalid_specs_rejected(self, overrides):
        data = {"parameter": "k_i", "range_min": 1000.0, "range_max": 5000.0, **overrides}
        with pytest.raises(ValueError):
            InterventionSpec(**data)


class TestSemanticExtraction:
    def test_filter_then_minimise(self):
        result = extract_semantic_information(make_curve([0.9, 0.05, 0.04], [1.0, 2.5, 3.0]), 0.01)
        assert result.s_epsilon == 2.5
        assert result.admissible_set_size == 2
        assert result.critical_value == 2.0
        assert result.v_min == 0.04
        assert result.meaningless_range == (3.0, 3.0)

    def test_zero_tolerance_keeps_only_minimum(self):
        result = extract_semantic_information(make_curve([0.9, 0.05, 0.04], [1.0, 2.5, 3.0]), 0.0)
        assert result.s_epsilon == 3.0
        assert result.admissible_set_size == 1
        assert result.meaningless_range is None

    def test_zero_tolerance_on_near_zero_plateau(self):
        curve = make_curve([0.0, 1e-13, 1e-300, 0.5], [3.0, 1.0, 0.5, 4.0])
        result = extract_semantic_information(curve, 0.0)
        assert result.s_epsilon == 3.0
        assert result.admissible_set_size == 1
        assert semantic_oracle(curve, 0.0) == 3.0

    def test_threshold_slack_scales_with_level(self):
        assert admissible_threshold(0.0, 0.0) == 0.0
        assert admissible_threshold(0.04, 0.01) >= 0.05
        assert admissible_threshold(0.04, 0.01) - 0.05 < 1e-13

    def test_single_point(self):
        result = extract_semantic_information(make_curve([0.3], [1.7]), 0.01)
        assert result.s_epsilon == 1.7
        assert result.critical_index == 0
        assert result.grid_step == 0.0

    def test_empty_curve_rejected(self):
        spec = InterventionSpec(parameter="lambda", range_min=1.0, range_max=2.0, grid_points=2)
        with pytest.raises(ParameterError):
            extract_semantic_information(SweepCurve(spec=spec, points=(), tau=0.02), 0.01)

    def test_negative_epsilon_rejected(self):
        with pytest.raises(ParameterError):
            extract_semantic_information(make_curve([0.3], [1.7]), -0.1)

    def test_ties_resolved_toward_least_effort(self):
        rising = make_curve([0.01, 0.01, 0.01, 0.5], [2.0, 2.0, 2.0, 1.0])
        falling = make_curve([0.5, 0.01, 0.01, 0.01], [1.0, 2.0, 2.0, 2.0])
        assert extract_semantic_information(rising, 0.0).critical_value == 3.0
        assert extract_semantic_information(falling, 0.0).critical_value == 2.0

    def test_grid_step_reported(self):
        result = extract_semantic_information(make_curve([0.9, 0.5, 0.02], [1.0, 2.0, 3.0]), 0.01)
        assert result.grid_step == 1.0

    def test_knee_interpolation(self):
        curve = make_curve([0.9, 0.5, 0.02], [1.0, 2.0, 3.0])
        plain = extract_semantic_information(curve, 0.01)
        refined = extract_semantic_information(curve, 0.01, interpolate=True)
        assert plain.critical_value_interpolated is None
        assert 2.0 < refined.critical_value_interpolated < 3.0
        assert refined.critical_value == plain.critical_value

    def test_meaningless_fraction(self):
        result = extract_semantic_information(make_curve([0.02, 0.02, 0.02], [3.0, 3.0, 1.0]), 0.01)
        assert result.s_epsilon == 1.0
        assert result.meaningless_range == (1.0, 2.0)
        assert result.meaningless_fraction == pytest.approx(0.5)

    @given(points=curve_points, epsilon=epsilons)
    def test_matches_exhaustive_oracle(self, points, epsilon):
        curve = make_curve(*zip(*points))
        assert extract_semantic_information(curve, epsilon).s_epsilon == semantic_oracle(curve, epsilon)

    @given(points=curve_points, epsilon=epsilons)
    def test_critical_point_is_admissible(self, points, epsilon):
        curve = make_curve(*zip(*points))
        result = extract_semantic_information(curve, epsilon)
        critical = curve.points[result.critical_index]
        assert critical.viability <= admissible_threshold(result.v_min, epsilon)
        assert critical.capacity_bps == result.s_epsilon
        assert critical.param_value == result.critical_value

    @given(points=curve_points, a=epsilons, b=epsilons)
    def test_non_increasing_in_epsilon(self, points, a, b):
        curve = make_curve(*zip(*points))
        low, high = sorted((a, b))
        assert (
            extract_semantic_information(curve, high).s_epsilon
            <= extract_semantic_information(curve, low).s_epsilon
        )

    def test_random_curves_exact_match(self):
        assert semantic_oracle_mismatches(10_000, seed=2024) == 0

    def test_pooled_minimum_over_families(self):
        first = make_curve([0.9, 0.05], [1.0, 2.5], parameter="lambda")
        second = make_curve([0.045, 0.5], [2.2, 0.5], parameter="k_d")
        pooled = extract_pooled_semantic_information([first, second], 0.01)
        assert pooled.s_epsilon == 2.2
        assert pooled.parameter == "k_d"
        assert pooled.admissible_set_size == 2
        assert pooled.v_min == 0.045

    def test_reference_deviation(self):
        result = SemanticResult(
            parameter="lambda",
            s_epsilon=2.135,
            critical_value=2909.0,
            critical_index=0,
            grid_step=50.0,
            admissible_set_size=1,
            v_min=0.0,
            epsilon=0.01,
        )
        deviation = reference_deviation(result)
        assert deviation.within_band
        assert deviation.s_epsilon_rel_error == pytest.approx(0.0)

        far = reference_deviation(result.model_copy(update={"s_epsilon": 4.0}))
        assert not far.within_band


class TestEvaluatePoint:
    def test_threshold_dose(self, default_params):
        point = evaluate_point(default_params, 1000.0, "lambda", impulse=make_impulse(0.0025, trials=10_000))
        assert point.n_particles == 20
        assert point.c_int == pytest.approx(0.05)
        assert point.viability == pytest.approx(0.5)
        assert 0.0 < point.capacity_bps < 1 / default_params.tau

    def test_no_binding_pathway(self, short_params, fast_settings):
        point = evaluate_point(short_params, 0.0, "k_f", settings=fast_settings)
        assert point.viability == 1.0
        assert point.mu_p == 1.0
        assert point.capacity_bps == 0.0

    def test_shared_response_orders_lambda_points(self, default_params):
        impulse = make_impulse(0.00144, trials=100_000)
        points = [
            evaluate_point(default_params, rate, "lambda", impulse=impulse)
            for rate in np.linspace(1000, 4000, 31)
        ]
        mu = np.array([p.mu_p for p in points])
        viabilities = np.array([p.viability for p in points])
        capacities = np.array([p.capacity_bps for p in points])
        assert np.all(np.diff(mu) <= 0)
        assert np.all(np.diff(viabilities) <= 0)
        assert np.all(np.diff(capacities) >= 0)

    def test_doubling_lambda_cannot_raise_crossover(self, default_params):
        impulse = make_impulse(0.003, trials=1_000)
        single = evaluate_point(default_params, 1500.0, "lambda", impulse=impulse)
        double = evaluate_point(default_params, 3000.0, "lambda", impulse=impulse)
        assert double.mu_p <= single.mu_p

    def test_viability_change_against_baseline(self, default_params):
        impulse = make_impulse(0.0025, trials=10_000)
        point = evaluate_point(default_params, 3000.0, "lambda", impulse=impulse, baseline_viability=0.5)
        assert point.change is ViabilityChange.POSITIVE
        assert point.delta_v == pytest.approx(0.5 - point.viability)

    def test_unknown_parameter(self, default_params):
        with pytest.raises(ParameterError):
            evaluate_point(default_params, 1.0, "D", impulse=make_impulse(0.1))

    def test_needs_impulse_or_settings(self, default_params):
        with pytest.raises(ParameterError):
            evaluate_point(default_params, 1e3, "k_i")

    def test_invalid_override_rejected(self, default_params):
        with pytest.raises(ValueError):
            evaluate_point(default_params, -5.0, "lambda", impulse=make_impulse(0.1))


class TestSweep:
    def test_two_point_grid(self, short_params, fast_settings):
        spec = InterventionSpec(parameter="k_d", range_min=1000.0, range_max=20000.0, grid_points=2)
        curve = sweep(spec, short_params, fast_settings)
        assert len(curve.points) == 2
        assert [p.param_value for p in curve.points] == [1000.0, 20000.0]
        assert curve.baseline_viability is not None

    def test_independent_of_workers(self, short_params, fast_settings):
        spec = InterventionSpec(parameter="k_b", range_min=5000.0, range_max=20000.0, grid_points=3)
        serial = sweep(spec, short_params, fast_settings, workers=1)
        parallel = sweep(spec, short_params, fast_settings, workers=3)
        assert serial == parallel

    def test_lambda_family_shares_one_response(self, short_params, fast_settings):
        spec = InterventionSpec(parameter="lambda", range_min=1000.0, range_max=4000.0, grid_points=5)
        assert len(simulate_family(spec, short_params, fast_settings)) == 1

    def test_rate_family_one_response_per_point(self, short_params, fast_settings):
        spec = InterventionSpec(parameter="k_i", range_min=1000.0, range_max=5000.0, grid_points=3)
        assert len(simulate_family(spec, short_params, fast_settings)) == 3

    def test_lambda_sweep_viability_non_increasing(self, short_params, fast_settings):
        spec = InterventionSpec(parameter="lambda", range_min=1000.0, range_max=4000.0, grid_points=7)
        curve = sweep(spec, short_params, fast_settings)
        assert np.all(np.diff(curve.column("viability")) <= 0)

    def test_response_count_mismatch(self, short_params):
        spec = InterventionSpec(parameter="k_i", range_min=1000.0, range_max=5000.0, grid_points=3)
        impulses = [make_impulse(0.1, horizon=short_params.tau)] * 2
        with pytest.raises(ParameterError):
            curve_from_impulses(spec, short_params, impulses, short_params.tau)


class TestTemporalProfile:
    def test_single_tau_matches_standard_sweep(self, short_params, fast_settings):
        spec = InterventionSpec(parameter="k_i", range_min=1000.0, range_max=5000.0, grid_points=3)
        expected = extract_semantic_information(sweep(spec, short_params, fast_settings), short_params.epsilon)
        profile = temporal_profile([spec], short_params, fast_settings, [short_params.tau])
        assert len(profile["k_i"]) == 1
        sample = profile["k_i"][0]
        assert sample.s_epsilon == expected.s_epsilon
        assert sample.critical_value == expected.critical_value

    def test_profile_per_tau(self, short_params, fast_settings):
        spec = InterventionSpec(parameter="lambda", range_min=1000.0, range_max=4000.0, grid_points=4)
        taus = [1e-3, 1.5e-3, 2e-3]
        profile = temporal_profile([spec], short_params, fast_settings, taus)
        assert [s.tau for s in profile["lambda"]] == taus

    def test_short_families_rejected(self, short_params, fast_settings):
        spec = InterventionSpec(parameter="lambda", range_min=1000.0, range_max=4000.0, grid_points=4)
        families = {"lambda": simulate_family(spec, short_params, fast_settings)}
        with pytest.raises(HorizonError):
            temporal_profile([spec], short_params, fast_settings, [3e-3], families=families)

    def test_empty_grid_rejected(self, short_params, fast_settings):
        with pytest.raises(ParameterError):
            temporal_profile(default_interventions(2), short_params, fast_settings, [])


@pytest.mark.slow
class TestDefaultScenarioTrends:
    def test_lambda_sweep_reproduces_reference_shape(self, default_params):
        spec = default_interventions()[0]
        settings = SimulationSettings(trials=100_000, seed=2909)
        curve = sweep(spec, default_params, settings, workers=4)
        viabilities = curve.column("viability")
        capacities = curve.column("capacity_bps")
        assert np.all(np.diff(viabilities) <= 0)
        assert np.all(np.diff(capacities) >= 0)
        assert viabilities[-1] < default_params.epsilon

        result = extract_semantic_information(curve, default_params.epsilon)
        assert 1.0 <= result.s_epsilon <= 4.0
        assert 1000.0 < result.critical_value < 4000.0

    def test_viability_rises_with_degradation(self, default_params):
        spec = InterventionSpec(parameter="k_d", range_min=1000.0, range_max=20000.0, grid_points=11)
        settings = SimulationSettings(trials=50_000, seed=2343)
        curve = sweep(spec, default_params, settings, workers=4)
        p_i = curve.column("p_i_at_tau")
        stderr = np.sqrt(p_i * (1 - p_i) / settings.trials)
        combined = np.sqrt(stderr[1:] ** 2 + stderr[:-1] ** 2)
        # Viability is monotone in P_i at fixed lambda
        assert np.all(np.diff(p_i) <= 3 * combined)
        viabilities = curve.column("viability")
        assert viabilities[-1] > viabilities[0]

    def test_temporal_profile_decreases_late(self, default_params):
        settings = SimulationSettings(trials=30_000, seed=2025)
        profile = temporal_profile(
            default_interventions(grid_points=31), default_params, settings, DEFAULT_TAU_GRID, workers=4
        )
        assert list(profile) == ["lambda", "k_d", "k_f", "k_b", "k_i"]

        pairs = violations = 0
        for samples in profile.values():
            late = [s.s_epsilon for s in samples if s.tau >= 0.015 - 1e-12]
            assert len(late) == 11
            pairs += len(late) - 1
            violations += sum(later > earlier for earlier, later in zip(late, late[1:]))
        assert pairs == 50
        assert violations <= 0.05 * pairs
