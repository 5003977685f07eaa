"""Doubled-space construction and the block identities."""

import numpy as np
import pytest

from semirad import (
    DimensionMismatch,
    NotAdjointable,
    a_numerical_radius,
    bind,
    block_identity_residuals,
    double_metric,
    make_block,
    new_metric,
)
from helpers import null_preserving, random_psd_metric
from semirad.prng import Stream


class TestDoubleMetric:
    def test_identity(self):
        m2 = double_metric(new_metric(np.eye(2, dtype=complex)))
        assert np.allclose(m2.a, np.eye(4))
        assert m2.rank == 4

    def test_rank_one_diagonal(self):
        m2 = double_metric(new_metric(np.diag([1.0, 0.0]).astype(complex)))
        assert np.allclose(m2.a, np.diag([1.0, 0.0, 1.0, 0.0]))
        assert m2.rank == 2

    def test_inner_product_splits(self):
        m = random_psd_metric(13, 3, 2)
        m2 = double_metric(m)
        s = Stream(14, "pairs")
        for _ in range(100):
            x1, x2, y1, y2 = (s.complex_gaussians(3) for _ in range(4))
            lhs = m2.inner(np.concatenate([x1, x2]), np.concatenate([y1, y2]))
            rhs = m.inner(x1, y1) + m.inner(x2, y2)
            assert lhs == pytest.approx(rhs, abs=1e-12)

    def test_cached_per_metric(self):
        m = new_metric(np.eye(2, dtype=complex))
        assert double_metric(m) is double_metric(m)


class TestMakeBlock:
    def test_assembly_layout(self):
        m = new_metric(np.eye(2, dtype=complex))
        t = np.full((2, 2), 1.0)
        x = np.full((2, 2), 2.0)
        y = np.full((2, 2), 3.0)
        s = np.full((2, 2), 4.0)
        blk = make_block(m, t, x, y, s)
        assert np.allclose(blk.assembled[:2, :2], 1.0)
        assert np.allclose(blk.assembled[:2, 2:], 2.0)
        assert np.allclose(blk.assembled[2:, :2], 3.0)
        assert np.allclose(blk.assembled[2:, 2:], 4.0)
        assert blk.op.in_full

    def test_zero_blocks(self):
        m = new_metric(np.eye(2, dtype=complex))
        z = np.zeros((2, 2))
        blk = make_block(m, z, z, z, z)
        assert np.allclose(blk.assembled, 0.0)
        assert a_numerical_radius(blk.op) == 0.0

    def test_dimension_mismatch(self):
        m = new_metric(np.eye(2, dtype=complex))
        with pytest.raises(DimensionMismatch):
            make_block(m, np.eye(3), np.eye(2), np.eye(2), np.eye(2))


class TestBlockIdentities:
    def test_identity_metric_real_diagonal(self):
        # analytic case: diagonal real blocks make every residual essentially 0
        m = new_metric(np.eye(2, dtype=complex))
        x = np.diag([1.0, -2.0]).astype(complex)
        y = np.diag([0.5, 3.0]).astype(complex)
        z = np.zeros((2, 2), dtype=complex)
        res = block_identity_residuals(make_block(m, x, x, y, y))
        assert res.sharp_block <= 1e-12
        res2 = block_identity_residuals(make_block(m, z, x, y, z))
        assert max(res2) <= 1e-10

    def test_equal_offdiagonal_blocks_collapse(self):
        # with X = Y the symmetric part identity reduces to w(off) = w(X)
        m = random_psd_metric(21, 3, 2)
        x = null_preserving(22, m)
        zero = np.zeros((3, 3), dtype=complex)
        blk = make_block(m, zero, x, x, zero)
        w_off = a_numerical_radius(blk.op)
        w_x = a_numerical_radius(bind(m, x))
        assert w_off == pytest.approx(w_x, abs=1e-8 * (1 + w_x))

    def test_random_rank_deficient_residuals(self):
        m = random_psd_metric(23, 3, 2)
        mats = [null_preserving(30 + k, m) for k in range(4)]
        res = block_identity_residuals(make_block(m, *mats))
        assert max(res) <= 1e-7

    def test_sharp_block_structure(self):
        # the adjoint of the block matrix swaps the off-diagonal adjoints
        from semirad import sharp

        m = random_psd_metric(25, 2, 1)
        mats = [null_preserving(50 + k, m) for k in range(4)]
        blk = make_block(m, *mats)
        got = sharp(blk.op)
        t, x, y, s = (sharp(bind(m, mm)) for mm in mats)
        want = np.block([[t, y], [x, s]])
        assert np.linalg.norm(got - want) <= 1e-9

    def test_not_adjointable_block(self):
        m = new_metric(np.diag([1.0, 0.0]).astype(complex))
        swap = np.array([[0, 1], [1, 0]], dtype=complex)
        zero = np.zeros((2, 2), dtype=complex)
        with pytest.raises(NotAdjointable):
            block_identity_residuals(make_block(m, swap, zero, zero, zero))

    def test_lower_bound_of_off_radius(self):
        # w(off(X,Y))^2 is at least max(w(XY), w(YX)) for bounded blocks
        m = random_psd_metric(27, 3, 3)
        x = null_preserving(60, m)
        y = null_preserving(61, m)
        zero = np.zeros((3, 3), dtype=complex)
        woff = a_numerical_radius(make_block(m, zero, x, y, zero).op)
        wxy = a_numerical_radius(bind(m, x @ y))
        wyx = a_numerical_radius(bind(m, y @ x))
        assert woff**2 >= max(wxy, wyx) - 1e-8 * (1 + max(wxy, wyx))
