import numpy as np
import pytest

import sparsecode as sc
from sparsecode.errors import CapExceededError, DimensionError
from sparsecode.oracle import (
    claim_bounds_check,
    dense_reference,
    exhaustive_decodability,
    hall_check,
)


class TestDenseReference:
    def test_identity_vector(self):
        from sparsecode.sparse import identity
        x = np.array([1.0, 2.0, 3.0, 4.0])
        assert np.allclose(dense_reference(identity(4), x), x)

    def test_matches_kernels(self):
        a = sc.random_sparse(25, 10, 0.3, seed=0)
        b = sc.random_sparse(25, 7, 0.3, seed=1)
        x = np.random.default_rng(2).standard_normal(25)
        assert np.allclose(dense_reference(a, x), sc.spmv_t(a, x))
        assert np.allclose(dense_reference(a, b), sc.spmm_t(a, b))

    def test_accepts_dense_arrays(self):
        rng = np.random.default_rng(3)
        a, b = rng.standard_normal((6, 4)), rng.standard_normal((6, 3))
        assert np.allclose(dense_reference(a, b), a.T @ b)

    def test_dimension_errors(self):
        a = sc.random_sparse(5, 3, 0.5, seed=4)
        with pytest.raises(DimensionError):
            dense_reference(a, np.zeros(6))
        with pytest.raises(DimensionError):
            dense_reference(a, np.zeros((6, 2)))


class TestHallCheck:
    def test_small_mv_plan_passes(self):
        plan = sc.proposed_mv_plan(6, 4, 2, seed=0)
        reports = hall_check(plan)
        assert len(reports) == 4
        assert all(r.passed for r in reports)
        assert all(r.mode == "exhaustive" for r in reports)

    def test_mm_plan_passes(self):
        plan = sc.proposed_mm_plan(20, 4, 4, 4, seed=1)
        assert all(r.passed for r in hall_check(plan))

    def test_detects_broken_supports(self):
        import dataclasses
        plan = sc.proposed_mv_plan(6, 4, 2, seed=0)
        # all workers on the same two unknowns: 3 workers only span 2
        sup = tuple((0, 1) for _ in range(6))
        broken = dataclasses.replace(plan, supports_a=sup)
        reports = hall_check(broken)
        assert not reports[2].passed
        assert reports[2].min_union == 2

    def test_sampled_mode_under_cap(self):
        plan = sc.proposed_mv_plan(12, 9, 3, seed=2)
        reports = hall_check(plan, cap=50, samples=20)
        assert any(r.mode == "sampled" for r in reports)
        assert all(r.passed for r in reports)

    def test_max_m_limits_levels(self):
        plan = sc.proposed_mv_plan(12, 9, 3, seed=0)
        assert len(hall_check(plan, max_m=3)) == 3


class TestClaimBounds:
    def test_mv_plan_passes(self):
        plan = sc.proposed_mv_plan(6, 4, 2, seed=0)
        out = claim_bounds_check(plan)
        assert out["pass"]
        assert all(e["pass"] for e in out["w0_window_unions"])
        assert all(e["pass"] for e in out["w1_saturation"])

    def test_mm_plan_passes_with_class_checks(self):
        plan = sc.proposed_mm_plan(20, 4, 4, 4, seed=1)
        out = claim_bounds_check(plan)
        assert out["pass"]
        assert "class_window_unions" in out and "per_class_unknowns" in out
        assert all(e["pass"] for e in out["class_window_unions"])
        assert all(e["pass"] for e in out["per_class_unknowns"])

    def test_w1_saturation_content(self):
        plan = sc.proposed_mv_plan(12, 9, 3, seed=0)
        out = claim_bounds_check(plan)
        # any omega=3 of the 3 block workers cover all 9 unknowns
        assert all(e["union"] == 9 for e in out["w1_saturation"])

    def test_detects_violation(self):
        import dataclasses
        plan = sc.proposed_mv_plan(6, 4, 2, seed=0)
        sup = list(plan.supports_a)
        sup[4] = (0, 1)
        sup[5] = (0, 1)    # the block workers no longer saturate
        broken = dataclasses.replace(plan, supports_a=tuple(sup))
        assert not claim_bounds_check(broken)["pass"]


class TestExhaustiveDecodability:
    def test_zero_failures_reference_plans(self):
        assert exhaustive_decodability(sc.proposed_mv_plan(6, 4, 2, seed=0)) == 0
        assert exhaustive_decodability(sc.proposed_mv_plan(12, 9, 3, seed=0)) == 0

    def test_counts_failures(self):
        import dataclasses
        plan = sc.proposed_mv_plan(6, 4, 2, seed=0)
        coeffs = list(plan.coeffs_a)
        coeffs[4] = coeffs[0]    # workers 0 and 4 become identical equations
        broken = dataclasses.replace(plan, coeffs_a=tuple(coeffs))
        # every 4-subset containing both 0 and 4 is singular: C(4,2)=6
        assert exhaustive_decodability(broken) == 6

    def test_cap(self):
        plan = sc.proposed_mv_plan(12, 9, 3, seed=0)
        with pytest.raises(CapExceededError):
            exhaustive_decodability(plan, cap=10)
