"""Seeded straggler simulation and the scheme-comparison harness.

Time is simulated, not measured: a worker's finish time is its counted FLOPs
divided by a rate, plus shifted-exponential noise.  That reproduces straggler
phenomenology deterministically; absolute seconds are out of scope.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np

from . import sparse
from .decoder import condition_number, assemble, decode_mm, decode_mv
from .encoder import (
    EncodingPlan,
    baseline_cyclic_plan,
    baseline_dense_random_plan,
    baseline_poly_plan,
    encode_blocks,
    proposed_mm_plan,
    proposed_mv_plan,
)
from .errors import DecodeFailureError, InfeasibleSplitError, UnsupportedRegimeError


@dataclass(frozen=True)
class DelayModel:
    """Shifted-exponential per-worker delay on top of proportional compute time."""
    rate: float = 1e6            # FLOPs per simulated time unit
    shift_factor: float = 1.0
    forced_slow: frozenset[int] = frozenset()
    slowdown: float = 10.0

    def finish_times(self, flops, seed: int) -> np.ndarray:
        times = np.empty(len(flops))
        for i, work in enumerate(flops):
            rng = np.random.default_rng([seed, i])  # one stream per worker
            base = work / self.rate
            t = self.shift_factor * base + rng.exponential(base if base > 0 else 1.0)
            if i in self.forced_slow:
                t *= self.slowdown
            times[i] = t
        return times


@dataclass(frozen=True)
class ExperimentResult:
    scheme: str
    n: int
    k_a: int
    k_b: int
    s: int
    omega_a: int
    omega_b: int
    seed: int
    coded_nnz: tuple[int, ...]
    flops: tuple[int, ...]
    tx_nnz: tuple[int, ...]
    finish_times: tuple[float, ...]
    recovery_subset: tuple[int, ...]
    decode_ok: bool
    rel_err: float | None
    kappa_subset: float

    @property
    def finish_time(self) -> float:
        """Job completion: when the recovery subset's slowest worker finishes."""
        return max(self.finish_times[i] for i in self.recovery_subset)


def _coded_tasks(plan: EncodingPlan, a: sparse.SparseMatrix,
                 b_or_x) -> tuple[list, list | None, object, object]:
    part_a = sparse.partition_columns(a, plan.k_a)
    coded_a = encode_blocks(a, part_a, plan.supports_a, plan.coeffs_a)
    if plan.is_mv:
        return coded_a, None, part_a, None
    part_b = sparse.partition_columns(b_or_x, plan.k_b)
    coded_b = encode_blocks(b_or_x, part_b, plan.supports_b, plan.coeffs_b)
    return coded_a, coded_b, part_a, part_b


def communication_cost(plan: EncodingPlan, a: sparse.SparseMatrix,
                       b: sparse.SparseMatrix | None = None) -> list[int]:
    """Exact per-worker transmitted nonzeros (x counts as a dense length-t vector)."""
    coded_a, coded_b, _, _ = _coded_tasks(plan, a, b if b is not None else
                                          np.zeros(a.rows))
    if coded_b is None:
        return [ca.nnz + a.rows for ca in coded_a]
    return [ca.nnz + cb.nnz for ca, cb in zip(coded_a, coded_b)]


def simulate_run(plan: EncodingPlan, a: sparse.SparseMatrix, b_or_x,
                 delay: DelayModel, seed: int) -> ExperimentResult:
    """One full encode -> compute -> fastest-k -> decode round, fully seeded."""
    coded_a, coded_b, part_a, part_b = _coded_tasks(plan, a, b_or_x)
    k = plan.k_a if plan.is_mv else plan.k
    if plan.is_mv:
        x = np.asarray(b_or_x, dtype=np.float64)
        results = [sparse.spmv_t(ca, x) for ca in coded_a]
        flops = [sparse.flop_estimate(ca.nnz, 1) for ca in coded_a]
        tx = [ca.nnz + a.rows for ca in coded_a]
        truth = a.toarray().T @ x
    else:
        results = [sparse.spmm_t(ca, cb) for ca, cb in zip(coded_a, coded_b)]
        flops = [sparse.flop_estimate(ca.nnz, cb.cols)
                 for ca, cb in zip(coded_a, coded_b)]
        tx = [ca.nnz + cb.nnz for ca, cb in zip(coded_a, coded_b)]
        truth = a.toarray().T @ b_or_x.toarray()
    times = delay.finish_times(flops, seed)
    order = sorted(range(plan.n), key=lambda i: (times[i], i))
    subset = tuple(sorted(order[:k]))
    decode_ok, rel_err = True, None
    try:
        if plan.is_mv:
            decoded = decode_mv([results[i] for i in subset], plan, subset, part_a)
        else:
            decoded = decode_mm([results[i] for i in subset], plan, subset,
                                part_a, part_b)
        denom = np.linalg.norm(truth)
        rel_err = float(np.linalg.norm(decoded - truth) / (denom if denom else 1.0))
    except DecodeFailureError:
        decode_ok = False
    kappa = condition_number(assemble(plan, subset).matrix)
    return ExperimentResult(
        scheme=plan.scheme, n=plan.n, k_a=plan.k_a, k_b=plan.k_b, s=plan.s,
        omega_a=plan.weight_plan.omega_a, omega_b=plan.weight_plan.omega_b,
        seed=seed, coded_nnz=tuple(ca.nnz for ca in coded_a),
        flops=tuple(flops), tx_nnz=tuple(tx),
        finish_times=tuple(float(t) for t in times),
        recovery_subset=subset, decode_ok=decode_ok, rel_err=rel_err,
        kappa_subset=kappa)


def build_plan(scheme: str, n: int, k_a: int, k_b: int, s: int,
               seed: int) -> EncodingPlan:
    if scheme == "proposed":
        if k_b == 1:
            return proposed_mv_plan(n, k_a, s, seed)
        return proposed_mm_plan(n, k_a, k_b, s, seed)
    if scheme == "poly":
        return baseline_poly_plan(n, k_a, k_b)
    if scheme == "dense-random":
        return baseline_dense_random_plan(n, k_a, k_b, seed)
    if scheme == "cyclic":
        return baseline_cyclic_plan(n, k_a, k_b, s, seed)
    raise ValueError(f"unknown scheme {scheme!r}")


def compare_schemes(n: int, k_a: int, k_b: int, s: int, density: float,
                    dims: tuple[int, int] | tuple[int, int, int],
                    schemes, seeds, delay: DelayModel | None = None,
                    ) -> tuple[list[ExperimentResult], list[str]]:
    """One simulated run per (scheme, seed) on shared seeded sparse inputs.

    ``dims`` is (t, r) for matrix-vector or (t, r, w) for matrix-matrix.
    Returns the result rows plus notices for schemes skipped as infeasible.
    """
    delay = delay or DelayModel()
    rows, notices = [], []
    for seed in seeds:
        t, r = dims[0], dims[1]
        a = sparse.random_sparse(t, r, density, seed=seed * 7919 + 1)
        if k_b == 1:
            rng = np.random.default_rng(seed * 7919 + 2)
            b_or_x = rng.standard_normal(t)
        else:
            b_or_x = sparse.random_sparse(t, dims[2], density, seed=seed * 7919 + 3)
        for scheme in schemes:
            try:
                plan = build_plan(scheme, n, k_a, k_b, s, seed)
            except (InfeasibleSplitError, UnsupportedRegimeError) as exc:
                notices.append(f"skipping {scheme} at n={n}: {exc}")
                continue
            rows.append(simulate_run(plan, a, b_or_x, delay, seed))
    return rows, notices


CSV_COLUMNS = ["scheme", "n", "k_a", "k_b", "s", "omega_a", "omega_b",
               "coded_nnz_mean", "flops_mean", "tx_nnz_mean", "finish_time",
               "decode_ok", "rel_err", "kappa_subset"]


def write_csv(rows: list[ExperimentResult], path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_COLUMNS)
        for r in rows:
            writer.writerow([
                r.scheme, r.n, r.k_a, r.k_b, r.s, r.omega_a, r.omega_b,
                float(np.mean(r.coded_nnz)), float(np.mean(r.flops)),
                float(np.mean(r.tx_nnz)), r.finish_time,
                int(r.decode_ok), "" if r.rel_err is None else r.rel_err,
                r.kappa_subset])
