"""Instance generation, check families, the suite runner and the probe."""

import numpy as np
import pytest

from semirad import (
    CHECK_FAMILIES,
    BadShape,
    DegenerateZ,
    NotAnInequality,
    UnknownCheck,
    buzano_check,
    double_metric,
    gen_instance,
    gen_vector_triple,
    new_metric,
    run_check,
    run_suite,
    tightness_probe,
    validate_radius_methods,
)


class TestGenInstance:
    def test_full_rank_membership_trivial(self):
        inst = gen_instance(0, 3, 3)
        assert all(op.in_half and op.in_full for op in inst.ops.values())

    def test_rank_deficient_null_space_residual(self):
        inst = gen_instance(1, 2, 1)
        null = inst.metric.null_basis
        for op in inst.ops.values():
            resid = np.linalg.norm(inst.metric.proj @ op.mat @ null)
            assert resid <= 1e-12 * (1 + np.linalg.norm(op.mat))
            assert op.in_half and op.in_full

    def test_bit_identical_regeneration(self):
        a = gen_instance(99, 4, 2)
        b = gen_instance(99, 4, 2)
        assert np.array_equal(a.metric.a, b.metric.a)
        for name in a.named:
            assert np.array_equal(a.named[name], b.named[name])

    def test_requested_rank_detected(self):
        for dim in (2, 4, 6):
            for rank in (1, dim // 2, dim):
                if rank < 1:
                    continue
                inst = gen_instance(7, dim, rank)
                assert inst.metric.rank == rank
                assert inst.metric2.rank == 2 * rank

    def test_bad_shapes_rejected(self):
        for dim, rank in ((0, 0), (3, 0), (3, 4), (9, 2)):
            with pytest.raises(BadShape):
                gen_instance(0, dim, rank)


class TestRunCheck:
    @pytest.mark.parametrize("family", CHECK_FAMILIES)
    def test_family_passes_on_random_instances(self, family):
        for seed, dim, rank in ((3, 2, 1), (4, 3, 2), (5, 4, 4)):
            inst = gen_instance(seed, dim, rank)
            rows = run_check(family, inst)
            assert rows
            for row in rows:
                assert row.passed, (family, row.check, row.slack, row.seed)

    def test_zero_operators_trivially_pass(self):
        inst = gen_instance(11, 2, 2)
        zero = np.zeros((2, 2), dtype=complex)
        from semirad.certifier import Instance

        zinst = Instance(0, 2, 2, inst.metric, dict.fromkeys("TSXY", zero))
        for family in CHECK_FAMILIES:
            for row in run_check(family, zinst):
                assert row.passed
                assert abs(row.slack) <= row.tol or row.slack >= 0

    def test_unknown_check(self):
        inst = gen_instance(12, 2, 1)
        with pytest.raises(UnknownCheck):
            run_check("NoSuchFamily", inst)

    def test_nilpotent_half_weighted_example(self):
        # A = diag(2,1), X = [[0,1],[0,0]]: both corner radii equal sqrt(2)/2
        from semirad.certifier import Instance

        metric = new_metric(np.diag([2.0, 1.0]).astype(complex))
        nil = np.array([[0, 1], [0, 0]], dtype=complex)
        zero = np.zeros((2, 2), dtype=complex)
        inst = Instance(0, 2, 2, metric, {"T": zero, "S": zero, "X": nil, "Y": zero})
        rows = run_check("NilpotentHalf", inst)
        for row in rows:
            assert row.lhs == pytest.approx(np.sqrt(2) / 2, abs=1e-10)
            assert row.rhs == pytest.approx(np.sqrt(2) / 2, abs=1e-10)

    def test_off_diag_bound_tight_at_nilpotent_pair(self):
        # identity metric, X = Y = [[0,1],[0,0]]: lhs = w(X)^2 = 1/4 and
        # rhs = max-gram/4 + w(X^2)/2 = 1/4 + 0, an exact equality case
        from semirad.certifier import Instance

        metric = new_metric(np.eye(2, dtype=complex))
        nil = np.array([[0, 1], [0, 0]], dtype=complex)
        zero = np.zeros((2, 2), dtype=complex)
        inst = Instance(0, 2, 2, metric, {"T": zero, "S": zero, "X": nil, "Y": nil})
        (row,) = run_check("OffDiagBound", inst)
        assert row.lhs == pytest.approx(0.25, abs=1e-12)
        assert row.rhs == pytest.approx(0.25, abs=1e-12)
        assert abs(row.slack) <= 1e-12

    def test_chain_lower_consistent_with_bound_radius(self):
        # the chain's lower bound can never exceed the radius certified by
        # the squared off-diagonal bound on the same instance
        for seed in range(8):
            inst = gen_instance(seed, 3, 2)
            (bound,) = run_check("OffDiagBound", inst)
            lower, _ = run_check("OffDiagChain", inst)
            assert lower.lhs <= np.sqrt(bound.lhs) + 1e-10

    def test_off_diag_bound_reduces_to_self_bound_when_equal(self):
        # X = Y collapses the off-diagonal bound to the single-operator bound
        inst = gen_instance(13, 3, 2)
        from semirad.certifier import Instance

        x = inst.named["X"]
        zero = np.zeros((3, 3), dtype=complex)
        pair = Instance(0, 3, 2, inst.metric, {"T": zero, "S": zero, "X": x, "Y": x})
        (row,) = run_check("OffDiagBound", pair)
        (self_row,) = run_check("SelfBound", pair)
        assert row.lhs == pytest.approx(pair.w("X") ** 2, abs=1e-8)
        assert np.sqrt(row.rhs) >= self_row.lhs - 1e-8


class TestCrossValidation:
    def test_methods_agree_on_instances(self):
        for seed in range(5):
            inst = gen_instance(seed, 3, 2)
            dev = validate_radius_methods(inst)
            assert dev <= 1e-6 * (1 + inst.w("T"))


class TestBuzano:
    def test_equality_at_coincident_vectors(self):
        m2 = double_metric(new_metric(np.eye(2, dtype=complex)))
        z = np.array([1.0, 0, 0, 0], dtype=complex)
        res = buzano_check(z, z, z, m2)
        assert res.lhs == pytest.approx(res.rhs, abs=1e-14)
        assert res.passed

    def test_orthogonal_strict(self):
        m2 = double_metric(new_metric(np.eye(2, dtype=complex)))
        x = np.array([1.0, 0, 0, 0], dtype=complex)
        y = np.array([0, 1.0, 0, 0], dtype=complex)
        res = buzano_check(x, y, x, m2)
        assert res.rhs > res.lhs
        assert res.passed

    def test_degenerate_pivot(self):
        m2 = double_metric(new_metric(np.diag([1.0, 0.0]).astype(complex)))
        z = np.array([0, 1.0, 0, 0], dtype=complex)  # in the null space
        with pytest.raises(DegenerateZ):
            buzano_check(z, z, z, m2)

    def test_random_sweep_rank_deficient(self):
        m2 = double_metric(new_metric(np.diag([1.0, 0.7, 0.0]).astype(complex)))
        for k in range(500):
            x, y, z = gen_vector_triple(k, m2)
            res = buzano_check(x, y, z, m2)
            assert res.slack >= -1e-10


class TestRunSuite:
    def test_small_suite_passes_and_reports(self):
        rep = run_suite([2], trials=2, base_seed=0)
        assert rep.global_pass
        assert rep.meta["instances"] == 4  # ranks 1, 2 x 2 trials
        families = {c.split(".")[0] for c in rep.summary}
        assert families == set(CHECK_FAMILIES)
        assert all(s.count == 4 for s in rep.summary.values())

    def test_rejects_zero_trials(self):
        with pytest.raises(ValueError):
            run_suite([2], trials=0)

    def test_deterministic_repetition(self):
        a = run_suite([2], trials=2, base_seed=7)
        b = run_suite([2], trials=2, base_seed=7)
        assert len(a.results) == len(b.results)
        for ra, rb in zip(a.results, b.results):
            assert (ra.check, ra.seed, ra.lhs, ra.rhs, ra.slack) == (
                rb.check,
                rb.seed,
                rb.lhs,
                rb.rhs,
                rb.slack,
            )

    def test_explicit_ranks(self):
        rep = run_suite([3], ranks=[1], trials=1, base_seed=0)
        assert rep.meta["instances"] == 1
        assert rep.meta["ranks"] == {"3": [1]}


class TestTightnessProbe:
    def test_rejects_equality_family(self):
        with pytest.raises(NotAnInequality):
            tightness_probe("SharpOffDiag", [2], 10, 0)

    def test_rejects_unknown(self):
        with pytest.raises(UnknownCheck):
            tightness_probe("Nope", [2], 10, 0)

    def test_rejects_zero_iterations(self):
        with pytest.raises(ValueError):
            tightness_probe("SelfBound", [2], 0, 0)

    def test_probe_never_certifies_negative(self):
        res = tightness_probe("FullBlock", [2], 400, 3, restarts=2)
        assert res.slack >= -1e-8 * 10
        assert not res.falsification
        assert res.evaluations <= 400 + 2

    def test_probe_normalizes_scale(self):
        res = tightness_probe("SelfBound", [2], 300, 1, restarts=1)
        mx = max(
            new_metric(res.metric_a).seminorm_of(m) for m in res.op_mats.values()
        )
        assert mx == pytest.approx(1.0, abs=1e-9)


def test_instance_seeds_distinct_per_cell():
    # the suite derives distinct instance seeds per (dim, rank, trial)
    from semirad.prng import derive_seed

    seen = {
        derive_seed(0, "instance", dim, rank, trial)
        for dim in (2, 3)
        for rank in range(1, dim + 1)
        for trial in range(3)
    }
    assert len(seen) == (2 + 3) * 3
