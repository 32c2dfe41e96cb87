import itertools

import numpy as np
import pytest

import sparsecode as sc
from sparsecode.errors import ProfileError
from sparsecode.hetero import DeviceProfile


EXAMPLE_PROFILE = DeviceProfile(capacities=(3, 2, 2, 1, 1, 1, 1, 1),
                                split_index=5)


class TestProfileValidation:
    def test_requires_nonincreasing(self):
        with pytest.raises(ProfileError):
            DeviceProfile(capacities=(1, 2, 1), split_index=1)

    def test_requires_unit_tail(self):
        with pytest.raises(ProfileError):
            DeviceProfile(capacities=(3, 2), split_index=1)

    def test_requires_positive(self):
        with pytest.raises(ProfileError):
            DeviceProfile(capacities=(2, 0, 1), split_index=1)

    def test_split_index_range(self):
        with pytest.raises(ProfileError):
            DeviceProfile(capacities=(2, 1), split_index=5)


class TestExpandProfile:
    def test_example_dimensions(self):
        vmap = sc.expand_profile(EXAMPLE_PROFILE)
        assert (vmap.n, vmap.k_a, vmap.s) == (12, 9, 3)

    def test_ranges_are_contiguous_and_tile(self):
        vmap = sc.expand_profile(EXAMPLE_PROFILE)
        assert vmap.ranges == ((0, 3), (3, 5), (5, 7), (7, 8), (8, 9),
                               (9, 10), (10, 11), (11, 12))
        flat = [t for d in range(8) for t in vmap.device_tasks(d)]
        assert flat == list(range(12))

    def test_unit_capacities_reduce_to_homogeneous(self):
        profile = DeviceProfile(capacities=(1,) * 6, split_index=4)
        vmap = sc.expand_profile(profile)
        assert (vmap.n, vmap.k_a, vmap.s) == (6, 4, 2)
        plan, _ = sc.assign_hetero(profile, seed=5)
        assert plan == sc.proposed_mv_plan(6, 4, 2, seed=5)


class TestAssignAndRecover:
    def _setup(self, seed=0):
        plan, vmap = sc.assign_hetero(EXAMPLE_PROFILE, seed=seed)
        return plan, vmap

    def test_plan_matches_virtual_system(self):
        plan, vmap = self._setup()
        assert (plan.n, plan.k_a, plan.s) == (vmap.n, vmap.k_a, vmap.s)

    def test_full_completion_recovers(self):
        plan, vmap = self._setup()
        done = {(d, t) for d in range(8)
                for t in range(len(vmap.device_tasks(d)))}
        ok, subset = sc.recover_from_partial(done, plan, vmap)
        assert ok and len(subset) == 9

    def test_partial_straggler_scenario(self):
        # the capacity-3 device finishes 2 of 3 tasks, one unit device is out
        plan, vmap = self._setup()
        done = {(0, 0), (0, 1)}
        done |= {(d, t) for d in range(1, 7)
                 for t in range(len(vmap.device_tasks(d)))}
        ok, subset = sc.recover_from_partial(done, plan, vmap)
        assert ok
        finished = {vmap.device_tasks(d)[t] for d, t in done}
        assert len(set(subset)) == 9
        assert set(subset) <= finished

    def test_not_enough_results(self):
        plan, vmap = self._setup()
        done = {(d, 0) for d in range(8)}   # only 8 virtual results, k_a=9
        ok, subset = sc.recover_from_partial(done, plan, vmap)
        assert not ok and subset is None

    def test_any_three_virtual_stragglers_recoverable(self):
        plan, vmap = self._setup(seed=1)
        all_tasks = [(d, t) for d in range(8)
                     for t in range(len(vmap.device_tasks(d)))]
        for missing in itertools.combinations(range(12), 3):
            done = {all_tasks[i] for i in range(12) if i not in missing}
            ok, subset = sc.recover_from_partial(done, plan, vmap)
            assert ok, f"undecodable with virtual stragglers {missing}"

    def test_invalid_task_index(self):
        plan, vmap = self._setup()
        with pytest.raises(ProfileError):
            sc.recover_from_partial({(3, 2)}, plan, vmap)

    def test_returned_subset_actually_decodes(self):
        plan, vmap = self._setup(seed=2)
        a = sc.random_sparse(40, 18, 0.2, seed=3)
        x = np.random.default_rng(4).standard_normal(40)
        part = sc.partition_columns(a, plan.k_a)
        coded = sc.encode_blocks(a, part, plan.supports_a, plan.coeffs_a)
        results = [sc.spmv_t(c, x) for c in coded]
        done = {(d, t) for d in range(1, 8)
                for t in range(len(vmap.device_tasks(d)))}   # device 0 dead
        ok, subset = sc.recover_from_partial(done, plan, vmap)
        assert ok
        got = sc.decode_mv([results[i] for i in subset], plan, subset, part)
        assert np.allclose(got, a.toarray().T @ x, atol=1e-8)
