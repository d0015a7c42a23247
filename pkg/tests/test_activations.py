"""Tests for the activation kinds, their Taylor structure, and the limit probe.

Taylor coefficients are cross-checked against Richardson-extrapolated
central finite differences, an oracle that shares no code with the
derivative-polynomial recurrence under test.
"""

import math

import numpy as np
import pytest

from ensapprox.activations import (
    KINDS,
    SMOOTH_KINDS,
    ActivationSpec,
    check_sigmoidal_bounded,
    discriminatory_limit_probe,
    eval_activation,
    taylor_coeffs,
)


def finite_difference_coefficient(spec, order, h=0.05):
    """k-th Taylor coefficient by central differences with one Richardson step."""
    if order == 0:
        return eval_activation(spec, 0.0)

    def central(step):
        ks = np.arange(order + 1)
        signs = (-1.0) ** ks
        combs = np.array([math.comb(order, int(k)) for k in ks])
        pts = (order / 2 - ks) * step
        vals = np.array([eval_activation(spec, float(p)) for p in pts])
        return float(np.sum(signs * combs * vals)) / step**order

    d1, d2 = central(h), central(h / 2)
    return (4 * d2 - d1) / 3 / math.factorial(order)


class TestEvalActivation:
    def test_logistic_midpoint(self):
        """The logistic curve passes through 1/2 at the origin."""
        assert eval_activation(ActivationSpec.logistic(), 0.0) == 0.5

    def test_logistic_upper_limit(self):
        """Far into the positive tail the logistic is 1 to float precision."""
        assert abs(eval_activation(ActivationSpec.logistic(), 40.0) - 1.0) <= 1e-12

    def test_hard_threshold_negative(self):
        """The hard threshold outputs exactly 0 below the step."""
        assert eval_activation(ActivationSpec.hard_threshold(), -3.0) == 0.0

    def test_bias_offset_shifts_argument(self):
        """A spec with offset b evaluates the base curve at u + b."""
        rng = np.random.default_rng(42)
        u = rng.uniform(-5, 5, 200)
        shifted = eval_activation(ActivationSpec.shifted_logistic(), u)
        base = eval_activation(ActivationSpec.logistic(), u + 1.0)
        np.testing.assert_allclose(shifted, base, rtol=0, atol=0)

    def test_hyperbolic_sigmoid_is_rescaled_tanh(self):
        """hyperbolic-sigmoid(u) = (1 + tanh(u)) / 2."""
        u = np.linspace(-8, 8, 101)
        vals = eval_activation(ActivationSpec.hyperbolic_sigmoid(), u)
        np.testing.assert_allclose(vals, 0.5 * (1.0 + np.tanh(u)), atol=1e-15)

    def test_values_stay_in_unit_interval(self):
        """Every kind maps arbitrary arguments into [0, 1]."""
        rng = np.random.default_rng(7)
        u = rng.uniform(-1000, 1000, 500)
        for kind in KINDS:
            vals = eval_activation(ActivationSpec(kind=kind), u)
            assert np.all(vals >= 0.0) and np.all(vals <= 1.0)

    def test_no_overflow_at_extreme_arguments(self):
        """Large |u| saturates instead of overflowing."""
        spec = ActivationSpec.logistic()
        assert eval_activation(spec, 1e4) == 1.0
        assert eval_activation(spec, -1e4) == 0.0

    def test_scalar_and_array_agree(self):
        """Array evaluation matches elementwise scalar evaluation."""
        spec = ActivationSpec.shifted_logistic()
        u = np.array([-2.0, 0.0, 0.3, 5.0])
        vals = eval_activation(spec, u)
        assert vals.shape == u.shape
        for ui, vi in zip(u, vals):
            assert eval_activation(spec, float(ui)) == vi

    def test_unknown_kind_rejected(self):
        with pytest.raises(ValueError, match="unknown activation kind"):
            ActivationSpec(kind="relu")


class TestTaylorCoeffs:
    def test_logistic_series_is_exact(self):
        """At offset 0 the logistic coefficients are exact rationals:
        1/2, 1/4, 0, -1/48, 0, 1/480, 0.  The even orders beyond the
        constant vanish identically because the curve minus 1/2 is odd."""
        cs = taylor_coeffs(ActivationSpec.logistic(), 6)
        expected = [0.5, 0.25, 0.0, -1 / 48, 0.0, 1 / 480, 0.0]
        assert len(cs) == 7
        for k, want in enumerate(expected):
            assert cs[k] == want

    def test_hyperbolic_series_is_exact(self):
        """hyperbolic-sigmoid = logistic(2u), so its k-th coefficient is the
        logistic one times 2^k: 1/2, 1/2, 0, -1/6, 0, 1/15."""
        cs = taylor_coeffs(ActivationSpec.hyperbolic_sigmoid(), 5)
        expected = [0.5, 0.5, 0.0, -1 / 6, 0.0, 1 / 15]
        for k, want in enumerate(expected):
            assert cs[k] == pytest.approx(want, abs=1e-15)

    def test_shifted_expansion_has_nonzero_even_orders(self):
        """Moving the expansion point to 1 makes the second-order
        coefficient nonzero, which the even-degree constructions need."""
        cs = taylor_coeffs(ActivationSpec.shifted_logistic(), 2)
        assert abs(cs[2]) > 1e-3

    @pytest.mark.parametrize("kind", SMOOTH_KINDS)
    def test_matches_finite_difference_oracle(self, kind):
        """The recurrence agrees with Richardson-extrapolated central
        differences for every smooth kind through order 6."""
        offset = 1.0 if kind == "shifted-logistic" else 0.0
        spec = ActivationSpec(kind=kind, bias_offset=offset)
        cs = taylor_coeffs(spec, 6)
        for k in range(7):
            oracle = finite_difference_coefficient(spec, k)
            assert cs[k] == pytest.approx(oracle, rel=1e-3, abs=2e-5)

    @pytest.mark.parametrize("kind", SMOOTH_KINDS)
    def test_constant_term_equals_value_at_zero(self, kind):
        """c_0 is the activation value at u = 0 exactly."""
        for offset in (0.0, 1.0, -0.7):
            spec = ActivationSpec(kind=kind, bias_offset=offset)
            assert taylor_coeffs(spec, 0)[0] == eval_activation(spec, 0.0)

    @pytest.mark.parametrize("kind", SMOOTH_KINDS)
    @pytest.mark.parametrize("order", [2, 3, 4, 5, 6])
    def test_truncation_error_scales_with_next_power(self, kind, order):
        """The order-K truncated series tracks the curve within
        1.0 * |u|^(K+1) for 0.02 <= |u| <= 0.1 (constant calibrated once
        against the finite-difference oracle, then frozen)."""
        offset = 1.0 if kind == "shifted-logistic" else 0.0
        spec = ActivationSpec(kind=kind, bias_offset=offset)
        cs = taylor_coeffs(spec, order)
        u = np.concatenate([np.linspace(-0.1, -0.02, 81), np.linspace(0.02, 0.1, 81)])
        truncated = sum(c * u**k for k, c in enumerate(cs.coefficients))
        remainder = np.abs(eval_activation(spec, u) - truncated)
        assert np.all(remainder <= 1.0 * np.abs(u) ** (order + 1))

    def test_hard_threshold_has_no_series(self):
        with pytest.raises(ValueError, match="undefined for kind"):
            taylor_coeffs(ActivationSpec.hard_threshold(), 3)

    def test_negative_order_rejected(self):
        with pytest.raises(ValueError, match="order"):
            taylor_coeffs(ActivationSpec.logistic(), -1)


class TestCheckSigmoidalBounded:
    def test_logistic_passes_tight_tolerance(self):
        """The logistic hits its 0/1 limits to within 1e-9 by |u| = 50."""
        result = check_sigmoidal_bounded(ActivationSpec.logistic(), U=50.0, tol=1e-9)
        assert result.passed
        assert result.upper_gap <= 1e-9
        assert result.lower_gap <= 1e-9
        assert result.max_abs <= 1.0

    def test_identity_function_fails(self):
        """The identity has no horizontal limits and is unbounded."""
        result = check_sigmoidal_bounded(lambda u: u, U=50.0, tol=1e-6)
        assert not result.passed
        assert result.max_abs == 50.0

    def test_hard_threshold_passes_exactly(self):
        """The step function reaches its limits exactly, so tol=0 passes."""
        result = check_sigmoidal_bounded(ActivationSpec.hard_threshold(), U=1.0, tol=0.0)
        assert result.passed
        assert result.upper_gap == 0.0
        assert result.lower_gap == 0.0

    def test_nonpositive_probe_magnitude_rejected(self):
        with pytest.raises(ValueError, match="positive"):
            check_sigmoidal_bounded(ActivationSpec.logistic(), U=0.0)

    def test_record_carries_probe_parameters(self):
        result = check_sigmoidal_bounded(ActivationSpec.logistic(), U=30.0, tol=1e-6)
        assert result.tol == 1e-6
        assert result.bound == 1.0


class TestDiscriminatoryLimitProbe:
    def test_positive_side_converges_to_one(self):
        """Where w.x + w0 > 0, growing steepness drives the value to 1."""
        result = discriminatory_limit_probe(
            ActivationSpec.logistic(), w=[1.0, 1.0], w0=0.0, phi=0.0,
            lambda_schedule=[1.0, 10.0, 100.0], x=[1.0, 1.0],
        )
        assert result.case == "positive"
        assert result.limit_value == 1.0
        assert abs(result.values[-1][1] - 1.0) <= 1e-8

    def test_negative_side_converges_to_zero(self):
        """Where w.x + w0 < 0, the value decays to 0."""
        result = discriminatory_limit_probe(
            ActivationSpec.logistic(), w=[1.0], w0=0.0, phi=0.0,
            lambda_schedule=[1.0, 10.0, 100.0], x=[-1.0],
        )
        assert result.case == "negative"
        assert result.limit_value == 0.0
        assert abs(result.values[-1][1]) <= 1e-8

    def test_hyperplane_point_is_pinned_at_phi_value(self):
        """Exactly on the hyperplane the steepness cancels out of the
        argument and every probe value equals the curve at phi."""
        result = discriminatory_limit_probe(
            ActivationSpec.logistic(), w=[1.0, -1.0], w0=0.0, phi=0.0,
            lambda_schedule=[1.0, 10.0, 100.0, 1000.0], x=[0.5, 0.5],
        )
        assert result.case == "hyperplane"
        for _, value in result.values:
            assert value == 0.5

    def test_hyperplane_limit_reports_phi_value(self):
        result = discriminatory_limit_probe(
            ActivationSpec.logistic(), w=[1.0], w0=-2.0, phi=0.7,
            lambda_schedule=[1.0, 2.0], x=[2.0],
        )
        assert result.case == "hyperplane"
        assert result.limit_value == eval_activation(ActivationSpec.logistic(), 0.7)

    def test_values_are_monotone_off_the_hyperplane(self):
        """With phi = 0, probe values increase in steepness on the positive
        side and decrease on the negative side."""
        rng = np.random.default_rng(11)
        schedule = [0.5, 1.0, 2.0, 4.0, 8.0, 16.0]
        for _ in range(25):
            w = rng.normal(size=3)
            x = rng.normal(size=3)
            t = float(w @ x)
            if abs(t) < 1e-6:
                continue
            result = discriminatory_limit_probe(
                ActivationSpec.logistic(), w=w, w0=0.0, phi=0.0,
                lambda_schedule=schedule, x=x,
            )
            vals = [v for _, v in result.values]
            diffs = np.diff(vals)
            if t > 0:
                assert np.all(diffs >= 0)
            else:
                assert np.all(diffs <= 0)

    def test_empty_schedule_rejected(self):
        with pytest.raises(ValueError, match="non-empty"):
            discriminatory_limit_probe(
                ActivationSpec.logistic(), [1.0], 0.0, 0.0, [], [1.0]
            )

    def test_nonpositive_schedule_rejected(self):
        with pytest.raises(ValueError, match="positive"):
            discriminatory_limit_probe(
                ActivationSpec.logistic(), [1.0], 0.0, 0.0, [0.0, 1.0], [1.0]
            )

    def test_non_increasing_schedule_rejected(self):
        with pytest.raises(ValueError, match="strictly increasing"):
            discriminatory_limit_probe(
                ActivationSpec.logistic(), [1.0], 0.0, 0.0, [1.0, 1.0, 2.0], [1.0]
            )

    def test_mismatched_vectors_rejected(self):
        with pytest.raises(ValueError, match="equal length"):
            discriminatory_limit_probe(
                ActivationSpec.logistic(), [1.0, 2.0], 0.0, 0.0, [1.0], [1.0]
            )
