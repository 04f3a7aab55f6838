"""
Tests for single nonlinear layers: activations, the memorization assumption,
adaptive training and the φ-probes.
"""

import numpy as np
import pytest
from numpy.testing import assert_allclose

from memolab.errors import InvalidInputError
from memolab.linear_fc import TrainingSet
from memolab.nonlinear_fc import (
    Activation,
    ActivationKind,
    AdaptiveGdConfig,
    adaptive_gd,
    check_assumption1,
    constant_lr_gd,
    leaky_relu,
    linear_surrogate_gd,
    phi_eigencheck,
    phi_span_membership,
    ratio_bound,
    reconstruction_residual,
    sigmoid,
    slope_table,
    tanh,
)

BELOW_HALF = TrainingSet(np.array([[0.2, 0.3, 0.25]]))


class TestActivation:
    """Test activation values, derivatives and pre-images."""

    @pytest.mark.parametrize("kind", list(ActivationKind))
    def test_derivative_matches_finite_difference(self, kind):
        """Test φ' against central differences away from the kink."""
        phi = Activation(kind, alpha=0.1)
        z = np.array([-2.0, -0.7, -0.3, 0.4, 1.1, 2.5])
        h = 1e-6
        numeric = (phi(z + h) - phi(z - h)) / (2 * h)
        assert_allclose(phi.derivative(z), numeric, atol=1e-8)

    @pytest.mark.parametrize(
        "phi, y",
        [
            (sigmoid(), [0.01, 0.3, 0.5, 0.97]),
            (tanh(), [-0.9, -0.1, 0.0, 0.6]),
            (leaky_relu(0.2), [-1.5, -0.1, 0.0, 3.0]),
        ],
    )
    def test_inverse_is_right_inverse(self, phi, y):
        """Test φ(φ⁻¹(y)) = y inside the range."""
        assert_allclose(phi(phi.inverse(y)), y, atol=1e-12)

    def test_inverse_rejects_out_of_range(self):
        """Test sigmoid has no pre-image for 1.0."""
        with pytest.raises(InvalidInputError, match="outside the range"):
            sigmoid().inverse([0.5, 1.0])

    def test_sigmoid_is_stable_for_large_inputs(self):
        """Test no overflow at ±800."""
        values = sigmoid()(np.array([-800.0, 800.0]))
        assert_allclose(values, [0.0, 1.0])

    def test_value_at_zero(self):
        """Test φ(0) for sigmoid and tanh."""
        assert sigmoid().value_at_zero == 0.5
        assert tanh().value_at_zero == 0.0

    def test_unknown_name(self):
        """Test unknown activation names are rejected."""
        with pytest.raises(InvalidInputError, match="unknown activation"):
            Activation.from_name("softplus")

    def test_leaky_alpha_range(self):
        """Test leaky ReLU alpha must lie in (0, 1)."""
        with pytest.raises(InvalidInputError, match="alpha"):
            leaky_relu(1.5)


class TestAssumption:
    """Test the three clauses of the memorization assumption."""

    def test_sigmoid_below_half_passes(self):
        """Test examples below φ(0) = 0.5 satisfy every clause."""
        report = check_assumption1(BELOW_HALF, sigmoid())
        assert report.passed
        assert report.clause("c").cases == {0: "convex-increasing", 1: "convex-increasing", 2: "convex-increasing"}

    def test_sigmoid_above_half_passes(self):
        """Test examples above 0.5 use the concave-increasing case."""
        ts = TrainingSet(np.array([[0.7, 0.8], [0.9, 0.6]]))
        report = check_assumption1(ts, sigmoid())
        assert report.passed
        assert set(report.clause("c").cases.values()) == {"concave-increasing"}

    def test_tanh_positive_passes(self):
        """Test positive examples with tanh (φ(0) = 0)."""
        assert check_assumption1(TrainingSet(np.array([[0.2, 0.4]])), tanh()).passed

    def test_boundary_value_fails_clause_a(self):
        """Test an entry equal to 1.0 fails clause (a)."""
        ts = TrainingSet(np.array([[0.2, 1.0]]))
        report = check_assumption1(ts, sigmoid())
        assert not report.passed
        assert not report.clause("a").passed
        assert report.clause("a").failing_coordinates == (1,)

    def test_straddling_coordinate_fails_clause_b(self):
        """Test one coordinate on both sides of φ(0) fails clause (b) only there."""
        ts = TrainingSet(np.array([[0.3, 0.2], [0.7, 0.1]]))
        report = check_assumption1(ts, sigmoid())
        assert report.clause("a").passed
        assert report.clause("b").failing_coordinates == (0,)

    def test_all_failures_are_reported(self):
        """Test a failing clause does not hide the others."""
        ts = TrainingSet(np.array([[0.5, 1.2]]))
        failures = check_assumption1(ts, sigmoid()).failures()
        assert any(f.startswith("(a)") for f in failures)
        assert any(f.startswith("(b)") for f in failures)
        assert any(f.startswith("(c)") for f in failures)

    def test_unknown_clause(self):
        """Test asking for a clause that does not exist."""
        with pytest.raises(KeyError):
            check_assumption1(BELOW_HALF, sigmoid()).clause("z")


class TestAdaptiveGd:
    """Test adaptive-rate training."""

    def test_ratio_bound(self):
        """Test L = max ratio of coordinates within an example."""
        assert ratio_bound(BELOW_HALF) == pytest.approx(1.5)

    def test_ratio_bound_needs_positive_examples(self):
        """Test non-positive entries are rejected."""
        with pytest.raises(InvalidInputError, match="strictly positive"):
            ratio_bound(TrainingSet(np.array([[0.0, 1.0]])))

    def test_slope_table_rejects_zero_preimage(self):
        """Test an entry equal to φ(0) has no secant slope."""
        with pytest.raises(InvalidInputError, match="slope undefined"):
            slope_table(TrainingSet(np.array([[0.5, 0.2]])), sigmoid())

    def test_default_gamma(self):
        """Test γ = 0.9 / (n L d)."""
        cfg = AdaptiveGdConfig.from_training_set(BELOW_HALF, sigmoid())
        assert cfg.gamma == pytest.approx(0.9 / (1 * 1.5 * 3))

    def test_single_example_converges(self):
        """Test one example below 0.5 is memorized."""
        result = adaptive_gd(BELOW_HALF, sigmoid())
        assert result.converged
        assert reconstruction_residual(result.weights, BELOW_HALF, sigmoid()) < 1e-6
        assert np.all(result.weights <= 0.0)

    def test_several_examples_converge(self):
        """Test three examples on the same side of 0.5."""
        ts = TrainingSet(np.array([[0.2, 0.3, 0.25, 0.1], [0.15, 0.35, 0.3, 0.2], [0.3, 0.2, 0.1, 0.25]]))
        result = adaptive_gd(ts, sigmoid())
        assert result.converged
        assert result.residuals[-1] < result.residuals[0]

    def test_iterates_dominated_by_linear_surrogate(self):
        """Test |A⁽ᵗ⁾| ≤ |B⁽ᵗ⁾| entrywise for a single example."""
        phi = sigmoid()
        base = AdaptiveGdConfig.from_training_set(BELOW_HALF, phi)
        cfg = AdaptiveGdConfig(
            gamma=base.gamma,
            slopes=base.slopes,
            ratio_bound=base.ratio_bound,
            max_steps=60,
            tol=0.0,
        )
        adaptive = [np.zeros((3, 3))]
        adaptive_gd(BELOW_HALF, phi, cfg, callback=lambda t, a: adaptive.append(a.copy()))
        surrogate = linear_surrogate_gd(BELOW_HALF, phi, cfg.gamma, 60)
        assert len(adaptive) == len(surrogate) == 61
        for a, b in zip(adaptive, surrogate, strict=True):
            assert np.all(np.abs(a) <= np.abs(b) + 1e-12)

    def test_rejects_assumption_violation(self):
        """Test training refuses data that fails the assumption."""
        with pytest.raises(InvalidInputError, match="memorization assumption"):
            adaptive_gd(TrainingSet(np.array([[0.3, 0.7]])), sigmoid())

    @pytest.mark.parametrize(
        "examples",
        [
            [[0.2, 0.3, 0.25], [0.15, 0.35, 0.3], [0.3, 0.2, 0.1]],
            [[0.2, 0.3], [0.1, 0.4], [0.25, 0.15]],
        ],
    )
    def test_rejects_n_not_below_d(self, examples):
        """Test square and underparameterized sets are refused even when the assumption holds."""
        ts = TrainingSet(np.array(examples))
        assert check_assumption1(ts, sigmoid()).passed
        with pytest.raises(InvalidInputError, match="n < d"):
            adaptive_gd(ts, sigmoid())

    def test_rejects_gamma_outside_range(self):
        """Test γ at or beyond 1/(nLd) is refused."""
        base = AdaptiveGdConfig.from_training_set(BELOW_HALF, sigmoid())
        cfg = AdaptiveGdConfig(gamma=1.0, slopes=base.slopes, ratio_bound=base.ratio_bound)
        with pytest.raises(InvalidInputError, match="gamma must lie"):
            adaptive_gd(BELOW_HALF, sigmoid(), cfg)

    def test_constant_rate_converges(self):
        """Test plain gradient descent also memorizes one example."""
        result = constant_lr_gd(BELOW_HALF, sigmoid(), max_steps=200_000)
        assert result.converged
        assert result.residuals[-1] < 1e-6


class TestProbes:
    """Test φ-eigenvector and φ-span probes."""

    def test_zero_weights_give_half(self):
        """Test A = 0 with the all-ones probe: φ(0) = 0.5 u."""
        report = phi_eigencheck(np.zeros((4, 4)), sigmoid(), np.ones(4))
        assert report.eigenvalue == pytest.approx(0.5)
        assert report.residual == pytest.approx(0.0, abs=1e-15)
        assert report.is_eigenvector

    def test_trained_example_is_eigenvector(self):
        """Test a memorized example satisfies φ(A x) = x."""
        result = adaptive_gd(BELOW_HALF, sigmoid())
        report = phi_eigencheck(result.weights, sigmoid(), BELOW_HALF.examples[0])
        assert report.eigenvalue == pytest.approx(1.0, abs=1e-4)
        assert report.is_eigenvector

    def test_zero_probe_rejected(self):
        """Test the zero vector cannot be probed."""
        with pytest.raises(InvalidInputError, match="non-zero"):
            phi_eigencheck(np.eye(2), sigmoid(), np.zeros(2))

    def test_training_example_is_member(self):
        """Test x⁽¹⁾ lies in the φ-span of the training set."""
        ts = TrainingSet(np.array([[0.2, 0.3, 0.25, 0.1], [0.15, 0.35, 0.3, 0.2]]))
        membership = phi_span_membership(ts, sigmoid(), ts.examples[0])
        assert membership.member
        assert membership.distance < 1e-10

    def test_unrelated_probe_is_not_member(self):
        """Test a probe whose pre-image is not parallel to the single example."""
        membership = phi_span_membership(BELOW_HALF, sigmoid(), np.array([0.7, 0.2, 0.4]))
        assert not membership.member
        assert membership.relative_distance > 0.1

    def test_probe_shape_checked(self):
        """Test the probe dimension must match the training set."""
        with pytest.raises(InvalidInputError, match="shape"):
            phi_span_membership(BELOW_HALF, sigmoid(), np.array([0.2, 0.3]))
