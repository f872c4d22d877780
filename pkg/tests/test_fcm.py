"""Unit and property tests for the cognitive-map dynamics."""

from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fcmgap.errors import ConceptMismatchError, DimensionError, NonConvergenceError
from fcmgap.fcm import (
    BINARY,
    WEIGHTED,
    Fcm,
    StateVector,
    combine_fcms,
    continuous_run,
    continuous_step,
    hidden_pattern,
    threshold_step,
    validate_fcm,
)

from oracles import TABLE_3, brute_force_attractor


def small_binary_fcm(weights):
    names = [f"c{i}" for i in range(len(weights))]
    return Fcm(names, weights, BINARY)


class TestValidation:
    def test_bundled_binary_map_is_valid(self, binary_fcm):
        assert validate_fcm(binary_fcm).ok

    def test_empty_map_is_vacuously_valid(self):
        report = validate_fcm(Fcm((), np.zeros((0, 0)), BINARY))
        assert report.ok
        assert bool(report)

    def test_out_of_range_weight_is_a_single_violation(self, binary_fcm):
        weights = np.array(binary_fcm.weights)
        weights[1, 2] = 1.5
        report = validate_fcm(Fcm(binary_fcm.concepts, weights, BINARY))
        assert len(report.violations) == 1
        assert "outside [-1, 1]" in report.violations[0]

    def test_binary_mode_rejects_fractional_weight(self, binary_fcm):
        weights = np.array(binary_fcm.weights)
        weights[0, 1] = 0.5
        report = validate_fcm(Fcm(binary_fcm.concepts, weights, BINARY))
        assert any("not in {-1, 0, 1}" in v for v in report.violations)

    def test_nonzero_diagonal_flagged(self):
        report = validate_fcm(small_binary_fcm([[1, 0], [0, 0]]))
        assert any("self-causation" in v for v in report.violations)

    def test_duplicate_names_flagged(self):
        fcm = Fcm(("a", "a"), [[0, 1], [0, 0]], BINARY)
        assert any("duplicate" in v for v in validate_fcm(fcm).violations)

    def test_non_square_matrix_flagged(self):
        fcm = Fcm(("a", "b"), [[0, 1, 0], [0, 0, 0]], BINARY)
        assert any("shape" in v for v in validate_fcm(fcm).violations)


class TestThresholdStep:
    def test_first_iteration_from_response_time(self, binary_fcm):
        state = binary_fcm.initial_state(["ResponseTime"])
        nxt = threshold_step(binary_fcm, state)
        assert nxt.values == (1, 1, 1, 0, 0, 0)
        assert nxt.clamped == state.clamped

    def test_first_iteration_from_process_oriented(self, binary_fcm):
        state = binary_fcm.initial_state(["ProcessOriented"])
        nxt = threshold_step(binary_fcm, state)
        assert nxt.values == (0, 0, 0, 1, 0, 1)

    def test_zero_state_is_fixed(self, binary_fcm):
        state = StateVector((0,) * 6)
        assert threshold_step(binary_fcm, state).values == (0,) * 6

    def test_dimension_mismatch(self, binary_fcm):
        with pytest.raises(DimensionError):
            threshold_step(binary_fcm, StateVector((1, 0)))

    def test_weighted_mode_rejected(self, weighted_fcm):
        with pytest.raises(ValueError):
            threshold_step(weighted_fcm, StateVector((1, 0, 0, 0, 0, 0)))


class TestHiddenPattern:
    def test_response_time_reaches_cost_interrupt(self, binary_fcm):
        att = hidden_pattern(binary_fcm, binary_fcm.initial_state(["ResponseTime"]))
        assert att.final_state.values == (1, 1, 1, 0, 0, 0)
        assert att.kind == "fixed-point"
        assert att.period == 1
        assert att.iterations == 2

    def test_interrupt_reaches_cost(self, binary_fcm):
        att = hidden_pattern(binary_fcm, binary_fcm.initial_state(["Interrupt"]))
        assert att.final_state.values == (0, 1, 1, 0, 0, 0)

    def test_process_oriented_regression(self, binary_fcm):
        # derived by brute-force enumeration; the printed source has a
        # five-component vector here and is treated as a typo
        att = hidden_pattern(binary_fcm, binary_fcm.initial_state(["ProcessOriented"]))
        assert att.final_state.values == (0, 0, 0, 1, 1, 1)
        assert [s.values for s in att.trajectory] == [
            (0, 0, 0, 1, 0, 0),
            (0, 0, 0, 1, 0, 1),
            (0, 0, 0, 1, 1, 1),
            (0, 0, 0, 1, 1, 1),
        ]

    def test_limit_cycle_detected(self):
        fcm = small_binary_fcm([[0, 1], [1, 0]])
        att = hidden_pattern(fcm, StateVector((1, 0), frozenset()))
        assert att.kind == "limit-cycle"
        assert att.period == 2
        assert {s.values for s in att.cycle} == {(1, 0), (0, 1)}

    def test_attractor_is_idempotent(self, binary_fcm):
        att = hidden_pattern(binary_fcm, binary_fcm.initial_state(["ProcessOriented"]))
        again = threshold_step(binary_fcm, att.final_state)
        assert again.values in {s.values for s in att.cycle}

    def test_non_convergence_when_budget_too_small(self, binary_fcm):
        with pytest.raises(NonConvergenceError):
            hidden_pattern(binary_fcm, binary_fcm.initial_state(["ResponseTime"]), max_iter=1)

    def test_continuous_initial_state_rejected(self, binary_fcm):
        with pytest.raises(ValueError):
            hidden_pattern(binary_fcm, StateVector((0.5, 0, 0, 0, 0, 0)))

    def test_matches_brute_force_on_the_bundled_map(self, binary_fcm):
        for concept in binary_fcm.concepts:
            initial = binary_fcm.initial_state([concept])
            att = hidden_pattern(binary_fcm, initial)
            traj, period, iters = brute_force_attractor(TABLE_3, initial.values)
            assert [s.values for s in att.trajectory] == traj
            assert att.period == period
            assert att.iterations == iters


@st.composite
def binary_maps(draw, max_n=5):
    n = draw(st.integers(min_value=1, max_value=max_n))
    weights = [
        [0 if i == j else draw(st.sampled_from([-1, 0, 1])) for j in range(n)]
        for i in range(n)
    ]
    bits = draw(st.lists(st.sampled_from([0, 1]), min_size=n, max_size=n))
    return small_binary_fcm(weights), tuple(bits)


class TestDynamicsProperties:
    @given(binary_maps())
    @settings(max_examples=200)
    def test_clamp_preservation_and_binary_closure(self, case):
        fcm, bits = case
        clamp = frozenset(i for i, v in enumerate(bits) if v == 1)
        att = hidden_pattern(fcm, StateVector(bits, clamp))
        for state in att.trajectory:
            assert state.is_binary()
            for i in clamp:
                assert state.values[i] == bits[i]

    @given(binary_maps())
    @settings(max_examples=200)
    def test_terminates_within_exact_bound(self, case):
        fcm, bits = case
        att = hidden_pattern(fcm, StateVector(bits, frozenset()))
        assert att.iterations <= 2 ** fcm.n + 1


class TestContinuousStep:
    def test_single_step_from_response_time(self, weighted_fcm):
        state = weighted_fcm.initial_state(["ResponseTime"])
        nxt = continuous_step(weighted_fcm, state)
        assert nxt.values == (1, 0.7, 0.9, 0, 0, 0)

    def test_negative_products_saturate_to_zero(self, weighted_fcm):
        state = weighted_fcm.initial_state(["ProcessOriented"])
        nxt = continuous_step(weighted_fcm, state)
        assert nxt.values == (0, 0, 0, 1, 0, 0.7)

    def test_zero_matrix_stays_zero(self):
        fcm = Fcm(("a", "b"), [[0, 0], [0, 0]], WEIGHTED)
        state = StateVector((0.4, 0.9))
        assert continuous_step(fcm, state).values == (0, 0)

    @given(
        st.lists(st.floats(min_value=-1, max_value=1), min_size=9, max_size=9),
        st.lists(st.floats(min_value=0, max_value=1), min_size=3, max_size=3),
    )
    @settings(max_examples=200)
    def test_saturation_keeps_unit_interval(self, flat, values):
        weights = np.array(flat).reshape(3, 3)
        np.fill_diagonal(weights, 0.0)
        fcm = Fcm(("a", "b", "c"), weights, WEIGHTED)
        nxt = continuous_step(fcm, StateVector(values))
        assert all(0.0 <= v <= 1.0 for v in nxt.values)

    def test_continuous_run_converges_on_weighted_map(self, weighted_fcm):
        att = continuous_run(weighted_fcm, weighted_fcm.initial_state(["ResponseTime"]))
        assert att.kind == "fixed-point"
        final = att.final_state.values
        assert final[0] == 1
        assert final[1] == pytest.approx(1.0)
        assert final[2] == pytest.approx(0.9)


class TestCombine:
    def test_map_plus_its_negation_cancels(self, binary_fcm):
        negated = Fcm(binary_fcm.concepts, -np.array(binary_fcm.weights), BINARY)
        combined = combine_fcms([binary_fcm, negated])
        assert np.array_equal(combined.weights, np.zeros((6, 6)))

    def test_doubled_map_clips_to_signs(self, binary_fcm):
        combined = combine_fcms([binary_fcm, binary_fcm], "clip")
        assert np.array_equal(combined.weights, np.sign(binary_fcm.weights))
        assert combined.mode == BINARY

    def test_single_map_is_identity(self, binary_fcm):
        for norm in ("clip", "scale"):
            combined = combine_fcms([binary_fcm], norm)
            assert combined.structurally_equal(binary_fcm)

    @given(st.integers(min_value=1, max_value=6))
    def test_scaled_copies_reproduce_a_peak_one_map(self, k):
        # scaling divides by the max entry once it exceeds 1, so k copies
        # of a map whose strongest edge is +/-1 collapse back to the map
        base = Fcm(("a", "b"), [[0, 1.0], [-0.25, 0]], WEIGHTED)
        combined = combine_fcms([base] * k, "scale")
        assert np.allclose(combined.weights, base.weights)

    def test_scale_leaves_in_range_sums_alone(self):
        base = Fcm(("a", "b"), [[0, 0.5], [-0.25, 0]], WEIGHTED)
        combined = combine_fcms([base, base], "scale")
        assert np.allclose(combined.weights, 2 * np.array(base.weights))

    def test_concept_mismatch_rejected(self, binary_fcm):
        other = Fcm(tuple(reversed(binary_fcm.concepts)), binary_fcm.weights, BINARY)
        with pytest.raises(ConceptMismatchError):
            combine_fcms([binary_fcm, other])

    def test_empty_list_rejected(self):
        with pytest.raises(ConceptMismatchError):
            combine_fcms([])

    def test_unknown_normalization_rejected(self, binary_fcm):
        with pytest.raises(ValueError):
            combine_fcms([binary_fcm], "normalize")
