"""Minimum encoding weights and feasible weight splits.

The weight of a coded task is the number of uncoded unknowns combined into
it; keeping it small is what preserves sparsity.  All functions here are
pure integer arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InfeasibleSplitError, UnsupportedRegimeError


@dataclass(frozen=True)
class WeightPlan:
    n: int
    s: int
    k: int
    omega_hat: int
    omega_a: int
    omega_b: int = 1

    @property
    def omega(self) -> int:
        return self.omega_a * self.omega_b


def min_weight(n: int, s: int) -> int:
    """Smallest homogeneous weight resilient to any s of n stragglers.

    Counting bound: each of the k = n - s unknowns must appear in at least
    s + 1 devices, and n devices carry omega unknowns each.
    """
    if s < 0:
        raise UnsupportedRegimeError("straggler count must be nonnegative")
    if s > n - s:
        raise UnsupportedRegimeError(
            f"s={s} > k={n - s}: more than half the devices would be stragglers")
    return math.ceil((n - s) * (s + 1) / n)


def weight_regime(k: int, s: int) -> dict:
    """Classify the bound by the size of k relative to s^2.

    k > s^2 pins the bound at exactly s + 1; for s <= k <= s^2 it lies in
    [ceil((s+1)/2), s].
    """
    if s > k:
        raise UnsupportedRegimeError(f"s={s} > k={k} is not supported")
    value = min_weight(k + s, s)
    if k > s * s:
        return {"regime": "exact", "value": value, "interval": (s + 1, s + 1)}
    return {"regime": "interval", "value": value,
            "interval": (math.ceil((s + 1) / 2), s)}


def _feasible_mm_pairs(k_a: int, k_b: int, target: int,
                       lo_a: int = 2, hi_a: int | None = None):
    hi_a = k_a - 1 if hi_a is None else hi_a
    pairs = []
    for wa in range(lo_a, hi_a + 1):
        for wb in range(wa, k_b + 1):
            if wa * wb >= target:
                pairs.append((wa, wb))
                break  # larger wb only increases the product
    return pairs


def split_weight_mm(k_a: int, k_b: int, omega_hat: int) -> tuple[int, int]:
    """Cheapest (omega_a, omega_b) with omega_a * omega_b >= omega_hat.

    Requires k_a <= k_b (swap-and-transpose the product otherwise).  Among
    minimal products, pairs where omega_a | k_a and omega_b | k_b win, then
    the smallest omega_a; this keeps the A side sparser.
    """
    if k_a > k_b:
        raise InfeasibleSplitError("requires k_a <= k_b; transpose the product")
    if omega_hat < 1:
        raise InfeasibleSplitError("omega_hat must be >= 1")
    pairs = _feasible_mm_pairs(k_a, k_b, omega_hat)
    if not pairs:
        raise InfeasibleSplitError(
            f"no weight split for k_a={k_a}, k_b={k_b}, omega_hat={omega_hat}")
    best = min(wa * wb for wa, wb in pairs)
    minimal = [p for p in pairs if p[0] * p[1] == best]
    divisor_pairs = [p for p in minimal if k_a % p[0] == 0 and k_b % p[1] == 0]
    return min(divisor_pairs or minimal)


def baseline_weight_cyclic(k_a: int, k_b: int, s: int) -> tuple[int, int]:
    """Weight chosen by the cyclic-code baseline: min(s+1, k) unknowns per task.

    k_b = 1 signals matrix-vector, returning (weight, 1).  The matrix-matrix
    split takes the minimal product >= min(s+1, k_a*k_b) with both factors
    >= 2, preferring the largest omega_a on ties.
    """
    if k_b == 1:
        return (min(s + 1, k_a), 1)
    target = min(s + 1, k_a * k_b)
    pairs = []
    for wa in range(2, k_a + 1):
        for wb in range(2, k_b + 1):
            if wa * wb >= target:
                pairs.append((wa, wb))
                break
    if not pairs:
        raise InfeasibleSplitError(
            f"no cyclic weight split for k_a={k_a}, k_b={k_b}, s={s}")
    best = min(wa * wb for wa, wb in pairs)
    minimal = [p for p in pairs if p[0] * p[1] == best]
    return max(minimal)


def weight_plan_mv(n: int, s: int) -> WeightPlan:
    w = min_weight(n, s)
    return WeightPlan(n=n, s=s, k=n - s, omega_hat=w, omega_a=w, omega_b=1)


def weight_plan_mm(n: int, k_a: int, k_b: int, s: int) -> WeightPlan:
    if k_a * k_b + s != n:
        raise UnsupportedRegimeError(f"n={n} != k_a*k_b+s={k_a * k_b + s}")
    w_hat = min_weight(n, s)
    wa, wb = split_weight_mm(k_a, k_b, w_hat)
    return WeightPlan(n=n, s=s, k=k_a * k_b, omega_hat=w_hat, omega_a=wa, omega_b=wb)
