"""
Tests for explicit convolution and upsampling matrices.
"""

import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal

from memolab.errors import InvalidInputError
from memolab.net_engine import ConvSpec, Network, UpsampleSpec, build_layer, conv_stack, fully_connected_stack
from memolab.conv_linear import (
    ConvFilterParams,
    compose,
    create_filter_matrix,
    create_upsampling_matrix,
    forced_zero_count,
    forced_zero_mask,
    heuristic_depth,
    interior_indices,
    linearize_network,
    pad_image,
    save_linearized_op,
    spectrum,
)
from memolab.numkit import load_matrix
from memolab.scenarios.convolution import golden_filter_interior


def random_params(f_out: int, f_in: int, side: int, stride: int = 1, seed: int = 0) -> ConvFilterParams:
    rng = np.random.default_rng(seed)
    return ConvFilterParams(rng.standard_normal((f_out, f_in, 9)), side, stride)


class TestFilterMatrix:
    """Test the linearized 3×3 convolution."""

    def test_golden_full_matrix(self):
        """Test weights 1..9 on a 3×3 image reproduce the worked 9×9 operator row by row."""
        expected = np.array(
            [
                [5, 6, 0, 8, 9, 0, 0, 0, 0],
                [4, 5, 6, 7, 8, 9, 0, 0, 0],
                [0, 4, 5, 0, 7, 8, 0, 0, 0],
                [2, 3, 0, 5, 6, 0, 8, 9, 0],
                [1, 2, 3, 4, 5, 6, 7, 8, 9],
                [0, 1, 2, 0, 4, 5, 0, 7, 8],
                [0, 0, 0, 2, 3, 0, 5, 6, 0],
                [0, 0, 0, 1, 2, 3, 4, 5, 6],
                [0, 0, 0, 0, 1, 2, 0, 4, 5],
            ],
            dtype=float,
        )
        interior = create_filter_matrix(ConvFilterParams(np.arange(1.0, 10.0), side=3)).interior()
        assert_array_equal(interior, expected)
        assert_array_equal(golden_filter_interior(np.arange(1.0, 10.0), 3), expected)

    def test_padded_shape_and_padding_rows(self):
        """Test padding rows of the output frame stay zero."""
        op = create_filter_matrix(random_params(2, 3, side=4))
        assert op.matrix.shape == (2 * 36, 3 * 36)
        padding = np.setdiff1d(np.arange(72), interior_indices(4, 2))
        assert not np.any(op.matrix[padding])

    @pytest.mark.parametrize("stride", [1, 2])
    def test_matches_direct_convolution(self, stride):
        """Test the matrix against the network engine's convolution layer."""
        params = random_params(2, 3, side=4, stride=stride, seed=stride)
        layer = build_layer(
            ConvSpec(in_channels=3, out_channels=2, side=4, stride=stride)
        )
        kernels = params.weights.reshape(2, 3, 3, 3)
        x = np.random.default_rng(7).standard_normal((5, 3 * 16))
        direct, _ = layer.forward([kernels], x)
        assert_allclose(x @ create_filter_matrix(params).interior().T, direct, atol=1e-12)

    def test_zero_parameters(self):
        """Test all-zero kernels give the zero operator."""
        op = create_filter_matrix(ConvFilterParams(np.zeros((2, 2, 9)), side=3))
        assert not np.any(op.matrix)
        assert np.any(op.mask)

    def test_rejects_bad_shape(self):
        """Test weights must be (f_out, f_in, 9)."""
        with pytest.raises(InvalidInputError, match="f_out, f_in, 9"):
            ConvFilterParams(np.zeros((2, 9)), side=3)

    def test_rejects_incompatible_stride(self):
        """Test stride 2 needs an even side."""
        with pytest.raises(InvalidInputError, match="incompatible"):
            ConvFilterParams(np.zeros(9), side=3, stride=2)

    def test_pad_image(self):
        """Test interior values land at interior positions."""
        x = np.arange(1.0, 5.0)
        padded = pad_image(x, side=2)
        assert padded.size == 16
        assert_array_equal(padded[interior_indices(2)], x)
        assert padded.sum() == x.sum()


class TestUpsampling:
    """Test the nearest-neighbour upsampling operator."""

    def test_golden_single_pixel(self):
        """Test a 1×1 image doubled into the padded 4×4 frame."""
        op = create_upsampling_matrix(side=1, scale=2)
        assert op.matrix.shape == (16, 9)
        expected = np.zeros((16, 9))
        expected[[5, 6, 9, 10], 4] = 1.0
        assert_array_equal(op.matrix, expected)

    def test_scale_one_is_identity(self):
        """Test scale 1 is the identity on interior pixels."""
        assert_array_equal(create_upsampling_matrix(side=3, channels=2, scale=1).interior(), np.eye(18))

    def test_matches_upsample_layer(self):
        """Test the matrix against the network engine's upsample layer."""
        layer = build_layer(UpsampleSpec(channels=2, side=3, scale=2))
        x = np.random.default_rng(3).standard_normal((4, 18))
        direct, _ = layer.forward([], x)
        op = create_upsampling_matrix(side=3, channels=2, scale=2)
        assert_allclose(x @ op.interior().T, direct)

    def test_rejects_non_positive(self):
        """Test zero scale is refused."""
        with pytest.raises(InvalidInputError, match="positive"):
            create_upsampling_matrix(side=2, scale=0)


class TestCompose:
    """Test operator products."""

    def test_identity_factor(self):
        """Test composing with a scale-1 upsampling leaves a conv unchanged."""
        conv = create_filter_matrix(random_params(1, 1, side=3, seed=4))
        ident = create_upsampling_matrix(side=3, scale=1)
        assert_allclose(compose([conv, ident]).matrix, conv.matrix)
        assert_allclose(compose([ident, conv]).interior(), conv.interior())

    def test_order(self):
        """Test ops[0] acts first."""
        a = create_filter_matrix(random_params(2, 1, side=3, seed=5))
        b = create_filter_matrix(random_params(1, 2, side=3, seed=6))
        assert_allclose(compose([a, b]).matrix, b.matrix @ a.matrix)

    def test_mismatch(self):
        """Test incompatible operators are refused."""
        a = create_filter_matrix(random_params(2, 1, side=3))
        with pytest.raises(InvalidInputError, match="expects"):
            compose([a, a])

    def test_empty(self):
        """Test at least one operator is needed."""
        with pytest.raises(InvalidInputError):
            compose([])

    def test_save(self, tmp_path):
        """Test the saved matrix reloads and the mask is written beside it."""
        op = create_filter_matrix(random_params(1, 1, side=2, seed=8))
        save_linearized_op(op, tmp_path / "op.txt")
        assert_allclose(load_matrix(tmp_path / "op.txt"), op.matrix)
        lines = (tmp_path / "op.txt.mask").read_text().splitlines()
        assert len(lines) == op.matrix.shape[0]
        assert set("".join(lines)) <= {"0", "1"}


class TestForcedZeros:
    """Test structural zeros of stride-1 stacks."""

    def test_single_layer_has_zeros(self):
        """Test one layer on a 3×3 image cannot connect opposite corners."""
        assert forced_zero_count(1, 3) > 0
        assert not forced_zero_mask(1, 3)[0, 8]

    def test_two_layers_side_four(self):
        """Test two layers on 4×4 still have forced zeros."""
        assert forced_zero_count(2, 4) > 0

    def test_two_layers_side_three(self):
        """Test two layers on 3×3 connect every pixel pair."""
        assert forced_zero_count(2, 3) == 0

    @pytest.mark.parametrize("side", [3, 4, 5, 6])
    def test_zeros_vanish_at_side_minus_one(self, side):
        """Test forced zeros persist for L < s − 1 and vanish at L = s − 1."""
        for layers in range(1, side - 1):
            assert forced_zero_count(layers, side) > 0
        assert forced_zero_count(side - 1, side) == 0

    def test_matches_random_product(self):
        """Test forced zeros are zero in a product of random filters."""
        ops = [create_filter_matrix(random_params(1, 1, side=5, seed=s)) for s in range(2)]
        product = compose(ops).interior()
        mask = forced_zero_mask(2, 5)
        assert not np.any(product[~mask])
        assert np.all(product[mask] != 0.0)

    @pytest.mark.parametrize(
        "side, depth", [(2, 2), (3, 9), (4, 29), (5, 70), (6, 144), (7, 267)]
    )
    def test_heuristic_depth(self, side, depth):
        """Test ⌈s⁴/9⌉."""
        assert heuristic_depth(side) == depth

    def test_rejects_non_positive(self):
        """Test zero layers are refused."""
        with pytest.raises(InvalidInputError):
            forced_zero_mask(0, 3)


class TestSpectrum:
    """Test eigenvalue summaries."""

    def test_identity(self):
        """Test the identity has unit magnitudes and full rank."""
        report = spectrum(np.eye(4))
        assert_allclose(report.magnitudes, np.ones(4))
        assert report.leading.size == 4
        assert report.tail_bound == 0.0
        assert report.rank_estimate == 4

    def test_rank_one(self):
        """Test a rank-one projector: one unit eigenvalue, the rest in the tail."""
        u = np.array([1.0, 2.0, 2.0]) / 3.0
        report = spectrum(np.outer(u, u))
        assert report.leading.size == 1
        assert report.magnitudes[0] == pytest.approx(1.0)
        assert report.tail_bound < 1e-8
        assert report.rank_estimate == 1

    def test_operator_uses_interior(self):
        """Test a LinearizedOp is reduced to its interior first."""
        report = spectrum(create_upsampling_matrix(side=2, scale=1))
        assert report.magnitudes.size == 4

    def test_rejects_rectangular(self):
        """Test non-square operators are refused."""
        with pytest.raises(InvalidInputError):
            spectrum(np.ones((2, 3)))


class TestLinearize:
    """Test end-to-end matrices of linear networks."""

    @pytest.mark.parametrize("skip_every", [None, 2])
    def test_matches_forward(self, skip_every):
        """Test M x = f(x) for a linear conv stack."""
        net = Network(conv_stack(side=3, depth=2, filters=2, skip_every=skip_every, seed=2))
        m = linearize_network(net)
        x = np.random.default_rng(1).standard_normal((3, 9))
        assert_allclose(x @ m.T, net(x), atol=1e-12)

    def test_dense_stack(self):
        """Test a linear dense stack is its weight product."""
        net = Network(fully_connected_stack(dim=3, width=4, depth=2, activation="identity", seed=3))
        assert_allclose(linearize_network(net), net.params[1][0] @ net.params[0][0])

    def test_rejects_nonlinear(self):
        """Test a tanh layer cannot be linearized."""
        net = Network(conv_stack(side=3, depth=2, activation="tanh"))
        with pytest.raises(InvalidInputError, match="only linear networks"):
            linearize_network(net)

    def test_rejects_bias(self):
        """Test biased layers are affine and refused."""
        net = Network(fully_connected_stack(dim=2, width=2, depth=1, bias=True))
        with pytest.raises(InvalidInputError, match="bias"):
            linearize_network(net)
