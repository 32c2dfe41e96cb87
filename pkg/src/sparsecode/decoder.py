"""Decoding-system assembly, solvability tests, and the actual solves.

The system for a chosen worker subset is a k x k real matrix: one row per
worker, one column per unknown (a block index for matrix-vector, an
(i, j) block pair for matrix-matrix).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .encoder import EncodingPlan
from .errors import DecodeFailureError, DimensionError
from .sparse import BlockPartition

DECODABLE_TOL = 1e-10


@dataclass(frozen=True)
class DecodingSystem:
    subset: tuple[int, ...]
    matrix: np.ndarray
    unknown_labels: tuple


def _check_subset(plan: EncodingPlan, subset) -> tuple[int, ...]:
    subset = tuple(int(i) for i in subset)
    k = plan.k_a if plan.is_mv else plan.k
    if len(subset) != k:
        raise DimensionError(f"subset size {len(subset)} != k={k}")
    if len(set(subset)) != len(subset):
        raise DimensionError("duplicate worker ids in subset")
    if any(not 0 <= i < plan.n for i in subset):
        raise DimensionError("worker id out of range")
    return subset


def assemble(plan: EncodingPlan, subset) -> DecodingSystem:
    """Coefficient matrix of the worker subset's equations."""
    subset = _check_subset(plan, subset)
    if plan.is_mv:
        k = plan.k_a
        mat = np.zeros((k, k))
        for r, i in enumerate(subset):
            for q, c in zip(plan.supports_a[i], plan.coeffs_a[i]):
                mat[r, q] = c
        labels = tuple(range(k))
    else:
        k = plan.k
        mat = np.zeros((k, k))
        for r, i in enumerate(subset):
            for u, cu in zip(plan.supports_a[i], plan.coeffs_a[i]):
                for v, cv in zip(plan.supports_b[i], plan.coeffs_b[i]):
                    mat[r, u * plan.k_b + v] = cu * cv
        labels = tuple((u, v) for u in range(plan.k_a) for v in range(plan.k_b))
    return DecodingSystem(subset, mat, labels)


def condition_number(m: np.ndarray) -> float:
    """Ratio of extreme singular values; +inf encodes a singular matrix."""
    m = np.asarray(m, dtype=np.float64)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionError("condition_number expects a square matrix")
    sv = np.linalg.svd(m, compute_uv=False)
    if sv[-1] == 0.0:
        return float("inf")
    return float(sv[0] / sv[-1])


def is_decodable(plan: EncodingPlan, subset, tol: float = DECODABLE_TOL) -> bool:
    """True iff the subset's system is numerically full rank."""
    sv = np.linalg.svd(assemble(plan, subset).matrix, compute_uv=False)
    return bool(sv[-1] > tol * sv[0])


def _solve(plan: EncodingPlan, subset, rhs: np.ndarray) -> np.ndarray:
    system = assemble(plan, subset)
    try:
        return np.linalg.solve(system.matrix, rhs)
    except np.linalg.LinAlgError:
        raise DecodeFailureError(subset) from None


def decode_mv(results, plan: EncodingPlan, subset,
              partition: BlockPartition | None = None) -> np.ndarray:
    """Recover A^T x of length r from any k_a worker vectors.

    ``results`` aligns with ``subset``; one factorized solve covers all
    output coordinates.  ``partition`` trims zero-padded block tails when the
    block widths are uneven.
    """
    subset = _check_subset(plan, subset)
    if len(results) != len(subset):
        raise DimensionError("results must align with subset")
    rhs = np.asarray(results, dtype=np.float64)
    unknowns = _solve(plan, subset, rhs)  # row q = A_q^T x (padded width)
    if partition is None:
        return unknowns.reshape(-1)
    widths = partition.widths()
    return np.concatenate([unknowns[q, :widths[q]] for q in range(partition.k)])


def decode_mm(results, plan: EncodingPlan, subset,
              partition_a: BlockPartition | None = None,
              partition_b: BlockPartition | None = None) -> np.ndarray:
    """Recover the r x w product A^T B from any k_a*k_b worker blocks."""
    subset = _check_subset(plan, subset)
    if len(results) != len(subset):
        raise DimensionError("results must align with subset")
    blocks = [np.asarray(r, dtype=np.float64) for r in results]
    aw, bw = blocks[0].shape
    rhs = np.stack([b.reshape(-1) for b in blocks])
    unknowns = _solve(plan, subset, rhs)
    grid = unknowns.reshape(plan.k_a, plan.k_b, aw, bw)
    wa = partition_a.widths() if partition_a else [aw] * plan.k_a
    wb = partition_b.widths() if partition_b else [bw] * plan.k_b
    out = np.zeros((sum(wa), sum(wb)))
    r0 = 0
    for u in range(plan.k_a):
        c0 = 0
        for v in range(plan.k_b):
            out[r0:r0 + wa[u], c0:c0 + wb[v]] = grid[u, v, :wa[u], :wb[v]]
            c0 += wb[v]
        r0 += wa[u]
    return out
