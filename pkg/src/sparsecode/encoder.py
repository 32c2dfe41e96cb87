"""Support-set generation, coefficient draws and sparse block encoding.

The proposed schemes assign each worker a short cyclic window of block
indices with random real coefficients; the baselines (polynomial,
dense-random, cyclic) are generated here too so every scheme shares one
plan representation.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from . import sparse
from .errors import DimensionError, UnsupportedRegimeError
from .weights import (
    WeightPlan,
    baseline_weight_cyclic,
    min_weight,
    weight_plan_mm,
    weight_plan_mv,
)

SCHEMES = ("proposed-mv", "proposed-mm", "poly", "dense-random", "cyclic-baseline")


@dataclass(frozen=True)
class EncodingPlan:
    scheme: str
    n: int
    k_a: int
    k_b: int
    s: int
    weight_plan: WeightPlan
    supports_a: tuple[tuple[int, ...], ...]
    supports_b: tuple[tuple[int, ...], ...]
    coeffs_a: tuple[tuple[float, ...], ...]
    coeffs_b: tuple[tuple[float, ...], ...]
    seed: int
    metadata: dict = field(default_factory=dict)

    @property
    def k(self) -> int:
        return self.k_a * self.k_b

    @property
    def is_mv(self) -> bool:
        return self.k_b == 1 and not self.supports_b

    def worker_unknowns(self, i: int) -> set:
        """Unknown labels participating in worker i's task."""
        if self.is_mv:
            return set(self.supports_a[i])
        return {(u, v) for u in self.supports_a[i] for v in self.supports_b[i]}

    def to_json(self) -> str:
        payload = {
            "scheme": self.scheme, "n": self.n, "k_a": self.k_a, "k_b": self.k_b,
            "s": self.s, "seed": self.seed,
            "weight_plan": {"n": self.weight_plan.n, "s": self.weight_plan.s,
                            "k": self.weight_plan.k,
                            "omega_hat": self.weight_plan.omega_hat,
                            "omega_a": self.weight_plan.omega_a,
                            "omega_b": self.weight_plan.omega_b},
            "supports_a": [list(t) for t in self.supports_a],
            "supports_b": [list(t) for t in self.supports_b],
            "coeffs_a": [list(c) for c in self.coeffs_a],
            "coeffs_b": [list(c) for c in self.coeffs_b],
            "metadata": self.metadata,
        }
        return json.dumps(payload, indent=2)

    @staticmethod
    def from_json(text: str) -> "EncodingPlan":
        d = json.loads(text)
        wp = WeightPlan(**d["weight_plan"])
        return EncodingPlan(
            scheme=d["scheme"], n=d["n"], k_a=d["k_a"], k_b=d["k_b"], s=d["s"],
            weight_plan=wp,
            supports_a=tuple(tuple(t) for t in d["supports_a"]),
            supports_b=tuple(tuple(t) for t in d["supports_b"]),
            coeffs_a=tuple(tuple(c) for c in d["coeffs_a"]),
            coeffs_b=tuple(tuple(c) for c in d["coeffs_b"]),
            seed=d["seed"], metadata=d.get("metadata", {}))


def _window(offset: int, width: int, modulus: int) -> tuple[int, ...]:
    return tuple((offset + t) % modulus for t in range(width))


def mv_supports(n: int, k_a: int, s: int) -> list[tuple[int, ...]]:
    """Per-worker block-index windows for the matrix-vector scheme.

    Workers below k_a get cyclic windows shifted by one; the remaining s
    workers get block windows at stride omega_a.
    """
    if n != k_a + s:
        raise UnsupportedRegimeError(f"n={n} != k_a+s={k_a + s}")
    omega = min_weight(n, s)
    out = []
    for i in range(n):
        if i < k_a:
            out.append(_window(i, omega, k_a))
        else:
            out.append(_window(i * omega, omega, k_a))
    return out


def mm_supports(n: int, k_a: int, k_b: int, s: int,
                omega_a: int, omega_b: int) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Per-worker (T, S) block windows for the matrix-matrix scheme."""
    k = k_a * k_b
    if n != k + s:
        raise UnsupportedRegimeError(f"n={n} != k_a*k_b+s={k + s}")
    if s > k:
        raise UnsupportedRegimeError(f"s={s} > k={k}")
    if k_a > k_b:
        raise UnsupportedRegimeError("requires k_a <= k_b; transpose the product")
    out = []
    for i in range(n):
        if i < k:
            t_set = _window(i, omega_a, k_a)
            s_set = _window(i // k_a, omega_b, k_b)
        else:
            ell = i % k_a
            m = (i * omega_a) // k_a
            t_set = _window(ell * omega_a, omega_a, k_a)
            s_set = _window(m * omega_b, omega_b, k_b)
        out.append((t_set, s_set))
    return out


def draw_coefficients(supports_a, supports_b, seed: int):
    """Standard-normal coefficients, one stream per plan, drawn in worker order.

    Exact zero draws are redrawn so every coefficient is nonzero.
    """
    rng = np.random.default_rng(seed)

    def draw(count):
        vals = rng.standard_normal(count)
        while np.any(vals == 0.0):  # probability-zero, but determinism needs a rule
            redo = vals == 0.0
            vals[redo] = rng.standard_normal(int(redo.sum()))
        return tuple(float(v) for v in vals)

    coeffs_a, coeffs_b = [], []
    for i, sup in enumerate(supports_a):
        coeffs_a.append(draw(len(sup)))
        if supports_b:
            coeffs_b.append(draw(len(supports_b[i])))
    return tuple(coeffs_a), tuple(coeffs_b)


def encode_blocks(m: sparse.SparseMatrix, partition: sparse.BlockPartition,
                  supports, coeffs) -> list[sparse.SparseMatrix]:
    """Worker-wise sparse linear combinations of the partition blocks.

    Blocks are padded to the widest block so uneven partitions stay
    combinable; decoding trims the padding back off.
    """
    if len(supports) != len(coeffs):
        raise DimensionError("supports and coeffs must align")
    if partition.source_cols != m.cols:
        raise DimensionError("partition does not match the matrix")
    width = partition.max_width()
    blocks = [m.col_slice(partition.boundaries[q], partition.boundaries[q + 1])
                 .pad_cols(width)
              for q in range(partition.k)]
    coded = []
    for sup, cf in zip(supports, coeffs):
        if len(sup) != len(cf):
            raise DimensionError("coefficient list does not match support")
        for q in sup:
            if not 0 <= q < partition.k:
                raise IndexError(f"block index {q} out of range")
        coded.append(sparse.linear_combination([blocks[q] for q in sup], cf))
    return coded


def proposed_mv_plan(n: int, k_a: int, s: int, seed: int) -> EncodingPlan:
    wp = weight_plan_mv(n, s)
    if wp.k != k_a:
        raise UnsupportedRegimeError(f"k_a={k_a} != n-s={wp.k}")
    sup_a = tuple(mv_supports(n, k_a, s))
    ca, cb = draw_coefficients(sup_a, (), seed)
    return EncodingPlan("proposed-mv", n, k_a, 1, s, wp, sup_a, (), ca, cb, seed)


def proposed_mm_plan(n: int, k_a: int, k_b: int, s: int, seed: int) -> EncodingPlan:
    wp = weight_plan_mm(n, k_a, k_b, s)
    pairs = mm_supports(n, k_a, k_b, s, wp.omega_a, wp.omega_b)
    sup_a = tuple(t for t, _ in pairs)
    sup_b = tuple(s_ for _, s_ in pairs)
    ca, cb = draw_coefficients(sup_a, sup_b, seed)
    return EncodingPlan("proposed-mm", n, k_a, k_b, s, wp, sup_a, sup_b, ca, cb, seed)


def baseline_poly_plan(n: int, k_a: int, k_b: int = 1) -> EncodingPlan:
    """Polynomial code: full-weight powers of n equispaced nodes in [-1, 1].

    A-side exponent j, B-side exponent j * k_a, so a worker's products carry
    distinct powers of its node and any k-subset decodes via a Vandermonde
    system.
    """
    k = k_a * k_b
    if n < k:
        raise UnsupportedRegimeError(f"n={n} < k={k}")
    s = n - k
    nodes = np.linspace(-1.0, 1.0, n)
    sup_a = tuple(tuple(range(k_a)) for _ in range(n))
    coeffs_a = tuple(tuple(float(z ** j) for j in range(k_a)) for z in nodes)
    if k_b == 1:
        wp = WeightPlan(n=n, s=s, k=k, omega_hat=min_weight(n, min(s, k)),
                        omega_a=k_a, omega_b=1)
        return EncodingPlan("poly", n, k_a, 1, s, wp, sup_a, (), coeffs_a, (), 0,
                            {"nodes": "equispaced[-1,1]"})
    sup_b = tuple(tuple(range(k_b)) for _ in range(n))
    coeffs_b = tuple(tuple(float(z ** (j * k_a)) for j in range(k_b)) for z in nodes)
    wp = WeightPlan(n=n, s=s, k=k, omega_hat=min_weight(n, min(s, k)),
                    omega_a=k_a, omega_b=k_b)
    return EncodingPlan("poly", n, k_a, k_b, s, wp, sup_a, sup_b, coeffs_a, coeffs_b,
                        0, {"nodes": "equispaced[-1,1]"})


def baseline_dense_random_plan(n: int, k_a: int, k_b: int, seed: int) -> EncodingPlan:
    """Full-weight i.i.d. normal combinations (RKRP-style)."""
    k = k_a * k_b
    if n < k:
        raise UnsupportedRegimeError(f"n={n} < k={k}")
    s = n - k
    sup_a = tuple(tuple(range(k_a)) for _ in range(n))
    sup_b = tuple(tuple(range(k_b)) for _ in range(n)) if k_b > 1 else ()
    ca, cb = draw_coefficients(sup_a, sup_b, seed)
    wp = WeightPlan(n=n, s=s, k=k, omega_hat=min_weight(n, min(s, k)),
                    omega_a=k_a, omega_b=max(k_b, 1))
    if k_b == 1:
        wp = WeightPlan(n=n, s=s, k=k, omega_hat=wp.omega_hat, omega_a=k_a, omega_b=1)
    return EncodingPlan("dense-random", n, k_a, max(k_b, 1), s, wp, sup_a, sup_b,
                        ca, cb, seed)


def baseline_cyclic_plan(n: int, k_a: int, k_b: int, s: int, seed: int) -> EncodingPlan:
    """Cyclic baseline with weight min(s+1, k): same window layout, bigger windows."""
    if k_b == 1:
        if n != k_a + s:
            raise UnsupportedRegimeError(f"n={n} != k_a+s={k_a + s}")
        omega, _ = baseline_weight_cyclic(k_a, 1, s)
        sup_a = tuple(_window(i % k_a, omega, k_a) for i in range(n))
        ca, cb = draw_coefficients(sup_a, (), seed)
        wp = WeightPlan(n=n, s=s, k=k_a, omega_hat=omega, omega_a=omega, omega_b=1)
        return EncodingPlan("cyclic-baseline", n, k_a, 1, s, wp, sup_a, (), ca, cb, seed)
    omega_a, omega_b = baseline_weight_cyclic(k_a, k_b, s)
    pairs = mm_supports(n, k_a, k_b, s, omega_a, omega_b)
    sup_a = tuple(t for t, _ in pairs)
    sup_b = tuple(s_ for _, s_ in pairs)
    ca, cb = draw_coefficients(sup_a, sup_b, seed)
    wp = WeightPlan(n=n, s=s, k=k_a * k_b, omega_hat=omega_a * omega_b,
                    omega_a=omega_a, omega_b=omega_b)
    return EncodingPlan("cyclic-baseline", n, k_a, k_b, s, wp, sup_a, sup_b, ca, cb, seed)
