"""Independent brute-force verifiers.

Nothing here shares arithmetic with the sparse kernels or the decoder: the
dense reference is a plain triple loop, and the combinatorial checks
enumerate worker subsets directly.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .decoder import is_decodable
from .encoder import EncodingPlan
from .errors import CapExceededError, DimensionError
from .sparse import SparseMatrix

DEFAULT_SUBSET_CAP = 100_000
DEFAULT_SAMPLES_PER_LEVEL = 10_000


def _to_dense(m) -> np.ndarray:
    if isinstance(m, SparseMatrix):
        dense = np.zeros((m.rows, m.cols))
        cols = m.col_indices()
        for r, c, v in zip(m.rowidx, cols, m.values):
            dense[r, c] = v
        return dense
    return np.asarray(m, dtype=np.float64)


def dense_reference(a, b_or_x) -> np.ndarray:
    """Ground-truth A^T x or A^T B by explicit loops; slow but independent."""
    a = _to_dense(a)
    other = _to_dense(b_or_x)
    if other.ndim == 1:
        if other.shape[0] != a.shape[0]:
            raise DimensionError("vector length does not match row count")
        out = np.zeros(a.shape[1])
        for j in range(a.shape[1]):
            acc = 0.0
            for t in range(a.shape[0]):
                acc += a[t, j] * other[t]
            out[j] = acc
        return out
    if other.shape[0] != a.shape[0]:
        raise DimensionError("row counts differ")
    out = np.zeros((a.shape[1], other.shape[1]))
    for j in range(a.shape[1]):
        for c in range(other.shape[1]):
            acc = 0.0
            for t in range(a.shape[0]):
                acc += a[t, j] * other[t, c]
            out[j, c] = acc
    return out


@dataclass(frozen=True)
class UnionReport:
    m: int
    mode: str               # exhaustive | sampled
    subsets_checked: int
    min_union: int
    bound: int
    worst_subset: tuple[int, ...]

    @property
    def passed(self) -> bool:
        return self.min_union >= self.bound


def _level_subsets(n: int, m: int, cap: int, samples: int, rng: np.random.Generator):
    """All m-subsets when C(n, m) fits under the cap, else seeded samples."""
    total = math.comb(n, m)
    if total <= cap:
        return "exhaustive", itertools.combinations(range(n), m), total
    samples = min(samples, total)
    def sampled():
        seen = set()
        while len(seen) < samples:
            pick = tuple(sorted(rng.choice(n, size=m, replace=False).tolist()))
            if pick not in seen:
                seen.add(pick)
                yield pick
    return "sampled", sampled(), samples


def hall_check(plan: EncodingPlan, max_m: int | None = None,
               cap: int = DEFAULT_SUBSET_CAP,
               samples: int = DEFAULT_SAMPLES_PER_LEVEL,
               seed: int = 0) -> list[UnionReport]:
    """Verify that any m workers touch at least m distinct unknowns.

    This is the Hall condition behind decodability: its failure at any level
    would make some straggler pattern undecodable regardless of coefficients.
    """
    k = plan.k_a if plan.is_mv else plan.k
    max_m = k if max_m is None else min(max_m, k)
    unknowns = [plan.worker_unknowns(i) for i in range(plan.n)]
    rng = np.random.default_rng(seed)
    reports = []
    for m in range(1, max_m + 1):
        mode, subsets, count = _level_subsets(plan.n, m, cap, samples, rng)
        min_union, worst = plan.n * k, ()
        for sub in subsets:
            size = len(set().union(*(unknowns[i] for i in sub)))
            if size < min_union:
                min_union, worst = size, tuple(sub)
        reports.append(UnionReport(m, mode, count, min_union, m, worst))
    return reports


def claim_bounds_check(plan: EncodingPlan,
                       cap: int = DEFAULT_SUBSET_CAP,
                       samples: int = DEFAULT_SAMPLES_PER_LEVEL,
                       seed: int = 0) -> dict:
    """Enumerate the structural union bounds of the cyclic assignment.

    Checks, per subset size: cyclic-window unions over the first k workers
    (>= min(m0 + omega - 1, k)), saturation of the last s workers (any omega
    of them cover all k unknowns), and for matrix-matrix plans the class
    structure: unions of q A-windows (>= omega_a + q - 1) and per-class
    unknown counts (>= omega_a * min(omega_b + delta - 1, k_b)).
    """
    results = {}
    k = plan.k_a if plan.is_mv else plan.k
    omega = plan.weight_plan.omega
    unknowns = [plan.worker_unknowns(i) for i in range(plan.n)]
    rng = np.random.default_rng(seed)

    # Cyclic-window unions within W0 = workers 0..k-1.
    checks = []
    for m0 in range(1, k + 1):
        mode, subsets, count = _level_subsets(k, m0, cap, samples, rng)
        bound = min(m0 + omega - 1, k)
        worst = min(len(set().union(*(unknowns[i] for i in sub))) for sub in subsets)
        checks.append({"m0": m0, "mode": mode, "subsets": count,
                       "min_union": worst, "bound": bound,
                       "pass": worst >= bound})
    results["w0_window_unions"] = checks

    # Saturation of W1 = workers k..n-1: any omega of them cover everything.
    w1 = list(range(k, plan.n))
    sat = []
    for m1 in range(omega, len(w1) + 1):
        for sub in itertools.combinations(w1, m1):
            union = set().union(*(unknowns[i] for i in sub))
            sat.append({"m1": m1, "subset": sub, "union": len(union),
                        "pass": len(union) == k})
    results["w1_saturation"] = sat

    if not plan.is_mv:
        k_a, k_b = plan.k_a, plan.k_b
        omega_a, omega_b = plan.weight_plan.omega_a, plan.weight_plan.omega_b
        # A-side window unions over distinct classes M_i (workers i mod k_a).
        class_windows = [set(plan.supports_a[i]) for i in range(k_a)]
        class_checks = []
        for q in range(1, k_a - omega_a + 2):
            for combo in itertools.combinations(range(k_a), q):
                union = set().union(*(class_windows[i] for i in combo))
                class_checks.append({"q": q, "classes": combo, "union": len(union),
                                     "bound": omega_a + q - 1,
                                     "pass": len(union) >= omega_a + q - 1})
        results["class_window_unions"] = class_checks
        # Unknown counts within delta devices of one class.
        per_class = []
        for q in range(k_a):
            members = [q + t * k_a for t in range(k_b)]
            for delta in range(1, k_b + 1):
                worst = min(
                    len(set().union(*(unknowns[i] for i in sub)))
                    for sub in itertools.combinations(members, delta))
                bound = omega_a * min(omega_b + delta - 1, k_b)
                per_class.append({"class": q, "delta": delta,
                                  "min_unknowns": worst, "bound": bound,
                                  "pass": worst >= bound})
        results["per_class_unknowns"] = per_class

    results["pass"] = all(
        entry["pass"]
        for val in results.values() if isinstance(val, list)
        for entry in val)
    return results


def exhaustive_decodability(plan: EncodingPlan,
                            cap: int = DEFAULT_SUBSET_CAP) -> int:
    """Count k-subsets whose decoding system is rank deficient (expected 0)."""
    k = plan.k_a if plan.is_mv else plan.k
    total = math.comb(plan.n, k)
    if total > cap:
        raise CapExceededError(
            f"C({plan.n},{k})={total} exceeds cap {cap}")
    failures = 0
    for sub in itertools.combinations(range(plan.n), k):
        if not is_decodable(plan, sub):
            failures += 1
    return failures
