"""Worst-case condition number over straggler choices, and the trial loop
that picks the best random coefficient set."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .decoder import assemble
from .encoder import EncodingPlan
from .errors import CapExceededError

EXHAUSTIVE_CAP = 100_000
DEFAULT_SAMPLES = 2000
_CHUNK = 512


@dataclass(frozen=True)
class KappaReport:
    plan_seed: int
    mode: str                    # "exhaustive" or "sampled"
    kappa_worst: float
    argmax_subset: tuple[int, ...]
    subsets_evaluated: int
    sample_count: int | None = None


def _batched_kappa(plan: EncodingPlan, subsets: list[tuple[int, ...]]):
    """Condition numbers for many subsets at once via stacked SVDs."""
    kappas = np.empty(len(subsets))
    for lo in range(0, len(subsets), _CHUNK):
        chunk = subsets[lo:lo + _CHUNK]
        mats = np.stack([assemble(plan, sub).matrix for sub in chunk])
        sv = np.linalg.svd(mats, compute_uv=False)
        smin = sv[:, -1]
        with np.errstate(divide="ignore"):
            kappas[lo:lo + len(chunk)] = np.where(smin > 0.0, sv[:, 0] / smin, np.inf)
    return kappas


def _argmax_colex(subsets, kappas) -> int:
    """Index of the max kappa; ties go to the colex-smallest subset so
    parallel or reordered evaluation cannot change the report."""
    best = None
    for idx, (sub, kap) in enumerate(zip(subsets, kappas)):
        if best is None:
            best = idx
            continue
        if kap > kappas[best] or (kap == kappas[best]
                                  and sub[::-1] < subsets[best][::-1]):
            best = idx
    return best


def kappa_worst(plan: EncodingPlan, mode: str = "exhaustive",
                cap: int = EXHAUSTIVE_CAP, samples: int = DEFAULT_SAMPLES,
                sample_seed: int = 0) -> KappaReport:
    """Max condition number over straggler choices (all, or a seeded sample)."""
    k = plan.k_a if plan.is_mv else plan.k
    total = math.comb(plan.n, k)
    if mode == "exhaustive":
        if total > cap:
            raise CapExceededError(
                f"C({plan.n},{k})={total} exceeds cap {cap}; use mode='sampled'")
        subsets = list(itertools.combinations(range(plan.n), k))
        sample_count = None
    elif mode == "sampled":
        rng = np.random.default_rng(sample_seed)
        seen: set[tuple[int, ...]] = set()
        target = min(samples, total)
        while len(seen) < target:
            seen.add(tuple(sorted(rng.choice(plan.n, size=k, replace=False).tolist())))
        subsets = sorted(seen)
        sample_count = target
    else:
        raise ValueError(f"unknown mode {mode!r}")
    kappas = _batched_kappa(plan, subsets)
    best = _argmax_colex(subsets, kappas)
    return KappaReport(plan_seed=plan.seed, mode=mode,
                       kappa_worst=float(kappas[best]),
                       argmax_subset=subsets[best],
                       subsets_evaluated=len(subsets),
                       sample_count=sample_count)


def best_of_trials(make_plan: Callable[[int], EncodingPlan], trials: int,
                   base_seed: int, mode: str = "exhaustive",
                   cap: int = EXHAUSTIVE_CAP, samples: int = DEFAULT_SAMPLES,
                   ) -> tuple[EncodingPlan, KappaReport]:
    """Generate plans with seeds base..base+trials-1 and keep the lowest kappa_worst."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    best: tuple[EncodingPlan, KappaReport] | None = None
    for t in range(trials):
        plan = make_plan(base_seed + t)
        report = kappa_worst(plan, mode=mode, cap=cap, samples=samples)
        if best is None or report.kappa_worst < best[1].kappa_worst:
            best = (plan, report)
    return best


def search_cost_estimate(n: int, k: int, dim: int) -> int:
    """Operation count of one full kappa_worst sweep: C(n, k) solves of size dim."""
    return math.comb(n, k) * dim ** 3
