"""Heterogeneous devices: one fast machine counts as several slow ones.

An 8-device fleet with capacities (3, 2, 2, 1, 1, 1, 1, 1) behaves like a
homogeneous system of 12 unit workers with k_a = 9 and s = 3: it survives
any three unit-equivalents of failure, e.g. the capacity-3 device dying
outright, or three of the weakest devices stalling.
"""

import numpy as np

import sparsecode as sc
from sparsecode.hetero import DeviceProfile

profile = DeviceProfile(capacities=(3, 2, 2, 1, 1, 1, 1, 1), split_index=5)
plan, vmap = sc.assign_hetero(profile, seed=0)
print(f"virtual system: n={vmap.n}, k_a={vmap.k_a}, s={vmap.s}")
for d in range(8):
    print(f"  device {d} (capacity {profile.capacities[d]}): "
          f"virtual tasks {list(vmap.device_tasks(d))}")

a = sc.random_sparse(500, 360, 0.02, seed=5)
x = np.random.default_rng(6).standard_normal(500)
part = sc.partition_columns(a, plan.k_a)
coded = sc.encode_blocks(a, part, plan.supports_a, plan.coeffs_a)
results = [sc.spmv_t(c, x) for c in coded]

# the big device dies entirely; everything else finishes
completed = {(d, t) for d in range(1, 8)
             for t in range(len(vmap.device_tasks(d)))}
ok, subset = sc.recover_from_partial(completed, plan, vmap)
print(f"\ndevice 0 (capacity 3) failed -> recoverable: {ok}, "
      f"using virtual tasks {subset}")

decoded = sc.decode_mv([results[i] for i in subset], plan, subset, part)
truth = a.toarray().T @ x
print(f"relative error {np.linalg.norm(decoded - truth) / np.linalg.norm(truth):.2e}")

# a partial straggler: device 1 finishes only one of its two tasks
completed = {(0, t) for t in range(3)} | {(1, 0)} | {
    (d, t) for d in range(2, 7) for t in range(len(vmap.device_tasks(d)))}
ok, subset = sc.recover_from_partial(completed, plan, vmap)
print(f"\ndevice 1 half done, device 7 dead -> recoverable: {ok}")
