"""Straggler-resilient sparse matrix-matrix multiplication.

20 workers compute A^T B with A and B each split into 4 block-columns
(k = 16 unknown block products), tolerating any 4 stragglers with the
minimum possible encoding weight omega_A * omega_B = 4.
"""

import numpy as np

import sparsecode as sc

n, k_a, k_b, s = 20, 4, 4, 4
a = sc.random_sparse(rows=300, cols=240, density=0.02, seed=3)
b = sc.random_sparse(rows=300, cols=160, density=0.02, seed=4)

plan = sc.proposed_mm_plan(n, k_a, k_b, s, seed=0)
wp = plan.weight_plan
print(f"weight split: omega_A={wp.omega_a}, omega_B={wp.omega_b}, "
      f"product {wp.omega} (lower bound {wp.omega_hat})")
for i in (0, 7, 17, 19):
    print(f"  worker {i}: A-blocks {plan.supports_a[i]}, "
          f"B-blocks {plan.supports_b[i]}")

pa, pb = sc.partition_columns(a, k_a), sc.partition_columns(b, k_b)
ca = sc.encode_blocks(a, pa, plan.supports_a, plan.coeffs_a)
cb = sc.encode_blocks(b, pb, plan.supports_b, plan.coeffs_b)
results = [sc.spmm_t(x, y) for x, y in zip(ca, cb)]

survivors = tuple(i for i in range(n) if i not in {2, 9, 13, 18})
decoded = sc.decode_mm([results[i] for i in survivors], plan, survivors, pa, pb)
truth = a.toarray().T @ b.toarray()
err = np.linalg.norm(decoded - truth) / np.linalg.norm(truth)
print(f"\ndecoded with workers 2, 9, 13, 18 missing; relative error {err:.2e}")
