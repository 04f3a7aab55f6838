"""
Tests for the piecewise-linear ε-interpolant and its ReLU realisation.
"""

import numpy as np
import pytest
from numpy.testing import assert_allclose

from memolab.errors import InvalidInputError
from memolab.robustness import (
    PiecewiseLinear1D,
    construct_interpolant,
    expected_reconstruction_error,
    interpolant_attractor_check,
    interpolant_frame,
    pointwise_error_bound,
    to_relu_network,
)

ABS = PiecewiseLinear1D(
    changepoints=np.array([0.0]), slopes=np.array([-1.0, 1.0]), intercepts=np.array([0.0, 0.0])
)


class TestConstruction:
    """Test the interpolant's shape."""

    def test_single_midpoint(self):
        """Test x₁ = 0.5: δ = 1/8 and, with ε clipped to δ, a flat segment."""
        f = construct_interpolant([0.5], epsilon=0.2)
        assert f.delta == pytest.approx(0.125)
        assert f.epsilon == pytest.approx(0.125)
        assert f(0.5) == pytest.approx(0.5)
        assert f.slope_at(0.5) == pytest.approx(0.0)

    def test_two_points_half_slope(self):
        """Test {0.25, 0.75} with ε = δ/2 has slope 1/2 at both points."""
        delta = 0.0625
        f = construct_interpolant([0.75, 0.25], epsilon=delta / 2)
        assert f.delta == pytest.approx(delta)
        assert_allclose(f.slope_at([0.25, 0.75]), [0.5, 0.5])

    def test_fixes_endpoints_and_training_points(self):
        """Test f(0) = 0, f(1) = 1 and f(xᵢ) = xᵢ."""
        xs = np.array([0.1, 0.4, 0.45, 0.8])
        f = construct_interpolant(xs, epsilon=0.01)
        assert_allclose(f(xs), xs, atol=1e-12)
        assert f(0.0) == pytest.approx(0.0, abs=1e-12)
        assert f(1.0) == pytest.approx(1.0)

    def test_error_within_epsilon(self):
        """Test |f(x) − x| ≤ ε everywhere and the integrated error below ε."""
        eps = 0.005
        f = construct_interpolant([0.2, 0.35, 0.6, 0.9], epsilon=eps)
        grid = np.linspace(0.0, 1.0, 20001)
        assert np.max(np.abs(f(grid) - grid)) <= eps + 1e-12
        assert pointwise_error_bound(f) <= eps + 1e-12
        assert expected_reconstruction_error(f) < eps

    @pytest.mark.parametrize(
        "points, match",
        [
            ([], "at least one"),
            ([0.0, 0.5], "strictly inside"),
            ([0.3, 1.0], "strictly inside"),
            ([0.3, 0.3], "distinct"),
        ],
    )
    def test_rejects_bad_points(self, points, match):
        """Test training points must be distinct and inside (0, 1)."""
        with pytest.raises(InvalidInputError, match=match):
            construct_interpolant(points, epsilon=0.01)

    def test_rejects_non_positive_epsilon(self):
        """Test ε must be positive."""
        with pytest.raises(InvalidInputError, match="epsilon"):
            construct_interpolant([0.5], epsilon=0.0)

    def test_discontinuous_segments_rejected(self):
        """Test segments must meet at their changepoints."""
        with pytest.raises(InvalidInputError, match="continuously"):
            PiecewiseLinear1D(
                changepoints=np.array([0.5]),
                slopes=np.array([1.0, 1.0]),
                intercepts=np.array([0.0, 0.1]),
            )

    def test_frame(self):
        """Test the plotting frame samples [0, 1]."""
        frame = interpolant_frame(construct_interpolant([0.5], epsilon=0.01), points=11)
        assert list(frame.columns) == ["x", "fx"]
        assert len(frame) == 11


class TestAttractors:
    """Test that training points attract every start in [0, 1]."""

    def test_every_start_is_captured(self):
        """Test random starts converge to training points."""
        xs = [0.15, 0.5, 0.7]
        f = construct_interpolant(xs, epsilon=0.01)
        report = interpolant_attractor_check(f, starts=100, seed=3)
        assert report.all_attracting
        assert report.all_converged
        assert set(np.unique(report.limits)) <= set(xs)
        assert_allclose(report.fixed_point_offsets, 0.0, atol=1e-12)

    def test_boundary_segments_repel_the_ends(self):
        """Test slopes on the outer segments exceed 1."""
        report = interpolant_attractor_check(construct_interpolant([0.5], epsilon=0.05), starts=10)
        left, right = report.boundary_slopes
        assert left > 1.0 and right > 1.0

    def test_needs_training_points(self):
        """Test a plain piecewise map cannot be checked."""
        with pytest.raises(InvalidInputError, match="training points"):
            interpolant_attractor_check(ABS)


class TestReluNetwork:
    """Test the exact two-layer ReLU realisation."""

    def test_absolute_value_uses_two_units(self):
        """Test |x| is realised with two hidden units."""
        net = to_relu_network(ABS)
        assert net.params[0][0].shape == (2, 1)
        xs = np.array([[-2.0], [-0.5], [0.0], [0.3], [4.0]])
        assert_allclose(net(xs), np.abs(xs), atol=1e-12)

    def test_matches_interpolant(self):
        """Test the network agrees with a three-point interpolant on a fine grid."""
        f = construct_interpolant([0.2, 0.5, 0.85], epsilon=0.02)
        net = to_relu_network(f)
        grid = np.linspace(0.0, 1.0, 2001)[:, None]
        assert np.max(np.abs(net(grid)[:, 0] - f(grid[:, 0]))) < 1e-9

    def test_coordinatewise_width(self):
        """Test d = 2 with two training points needs 10 hidden units."""
        f = construct_interpolant([0.3, 0.6], epsilon=0.01)
        net = to_relu_network(f, dim=2)
        assert net.params[0][0].shape == (10, 2)
        x = np.array([0.31, 0.9])
        assert_allclose(net(x), f(x), atol=1e-12)

    def test_separate_maps_per_coordinate(self):
        """Test each coordinate can carry its own map."""
        f = construct_interpolant([0.3], epsilon=0.01)
        net = to_relu_network([f, ABS])
        x = np.array([0.25, -0.7])
        assert_allclose(net(x), [f(0.25), 0.7], atol=1e-12)

    def test_empty_sequence(self):
        """Test at least one coordinate map is required."""
        with pytest.raises(InvalidInputError, match="at least one"):
            to_relu_network([])
