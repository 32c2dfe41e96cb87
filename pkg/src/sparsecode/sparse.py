"""Column-compressed sparse matrices and the product kernels the coding schemes need.

Everything here is pure and operates on immutable inputs; matrices are stored
in CSC form with 0-based indices (Matrix Market files on disk are 1-based).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DimensionError,
    InvalidPartitionError,
    MatrixMarketError,
)


@dataclass(frozen=True)
class SparseMatrix:
    """Real sparse matrix in column-compressed form.

    ``indptr`` has length ``cols + 1``; rows within a column are sorted and
    unique.  Build instances with :func:`from_coo` unless the arrays are
    already valid CSC.
    """

    rows: int
    cols: int
    indptr: np.ndarray
    rowidx: np.ndarray
    values: np.ndarray

    @property
    def nnz(self) -> int:
        return int(self.values.size)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def column(self, j: int) -> tuple[np.ndarray, np.ndarray]:
        lo, hi = self.indptr[j], self.indptr[j + 1]
        return self.rowidx[lo:hi], self.values[lo:hi]

    def col_indices(self) -> np.ndarray:
        """Per-entry column index, expanded from indptr."""
        counts = np.diff(self.indptr)
        return np.repeat(np.arange(self.cols), counts)

    def toarray(self) -> np.ndarray:
        dense = np.zeros((self.rows, self.cols))
        dense[self.rowidx, self.col_indices()] = self.values
        return dense

    def col_slice(self, start: int, stop: int) -> "SparseMatrix":
        """Contiguous column block [start, stop) as a new matrix."""
        lo, hi = self.indptr[start], self.indptr[stop]
        indptr = self.indptr[start : stop + 1] - lo
        return SparseMatrix(self.rows, stop - start, indptr.copy(),
                            self.rowidx[lo:hi].copy(), self.values[lo:hi].copy())

    def pad_cols(self, width: int) -> "SparseMatrix":
        """Append empty columns on the right up to ``width``."""
        if width < self.cols:
            raise DimensionError(f"cannot pad {self.cols} columns down to {width}")
        if width == self.cols:
            return self
        indptr = np.concatenate([self.indptr,
                                 np.full(width - self.cols, self.indptr[-1])])
        return SparseMatrix(self.rows, width, indptr, self.rowidx, self.values)


def from_coo(rows: int, cols: int, i, j, v) -> SparseMatrix:
    """Build a SparseMatrix from coordinate triplets.

    Rejects out-of-range indices, duplicate (row, col) pairs and non-finite
    values; nnz accounting must be deterministic for the cost model.
    """
    i = np.asarray(i, dtype=np.int64)
    j = np.asarray(j, dtype=np.int64)
    v = np.asarray(v, dtype=np.float64)
    if not (i.shape == j.shape == v.shape):
        raise DimensionError("coordinate arrays must have equal length")
    if i.size:
        if i.min() < 0 or i.max() >= rows or j.min() < 0 or j.max() >= cols:
            raise DimensionError("coordinate index out of range")
        if not np.all(np.isfinite(v)):
            raise ValueError("stored values must be finite")
        keys = j * rows + i
        order = np.argsort(keys, kind="stable")
        keys = keys[order]
        if np.any(np.diff(keys) == 0):
            raise ValueError("duplicate (row, col) entry")
        i, j, v = i[order], j[order], v[order]
    indptr = np.zeros(cols + 1, dtype=np.int64)
    np.add.at(indptr, j + 1, 1)
    np.cumsum(indptr, out=indptr)
    return SparseMatrix(rows, cols, indptr, i, v)


def zeros(rows: int, cols: int) -> SparseMatrix:
    return SparseMatrix(rows, cols, np.zeros(cols + 1, dtype=np.int64),
                        np.empty(0, dtype=np.int64), np.empty(0))


def identity(n: int) -> SparseMatrix:
    idx = np.arange(n)
    return from_coo(n, n, idx, idx, np.ones(n))


def random_sparse(rows: int, cols: int, density: float, seed: int) -> SparseMatrix:
    """Seeded i.i.d. Bernoulli sparsity pattern with standard-normal values."""
    rng = np.random.default_rng(seed)
    mask = rng.random(rows * cols) < density
    flat = np.flatnonzero(mask)
    vals = rng.standard_normal(flat.size)
    vals[vals == 0.0] = 1.0
    return from_coo(rows, cols, flat // cols, flat % cols, vals)


@dataclass(frozen=True)
class BlockPartition:
    """k contiguous column blocks; wider blocks come first when k does not divide cols."""

    source_cols: int
    k: int
    boundaries: tuple[int, ...] = field(default=())

    def widths(self) -> list[int]:
        return [self.boundaries[q + 1] - self.boundaries[q] for q in range(self.k)]

    def max_width(self) -> int:
        return max(self.widths())


def partition_columns(m: SparseMatrix | int, k: int) -> BlockPartition:
    """Split the columns of ``m`` (or an integer column count) into k blocks."""
    cols = m if isinstance(m, int) else m.cols
    if not 1 <= k <= cols:
        raise InvalidPartitionError(f"k={k} out of range for {cols} columns")
    base, rem = divmod(cols, k)
    widths = [base + 1] * rem + [base] * (k - rem)
    boundaries = tuple(np.cumsum([0] + widths).tolist())
    return BlockPartition(cols, k, boundaries)


def spmv_t(m: SparseMatrix, x: np.ndarray) -> np.ndarray:
    """Exact A^T x using only the stored nonzeros."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (m.rows,):
        raise DimensionError(f"vector length {x.shape} does not match {m.rows} rows")
    return np.bincount(m.col_indices(), weights=m.values * x[m.rowidx],
                       minlength=m.cols)


def spmm_t(a: SparseMatrix, b: SparseMatrix) -> np.ndarray:
    """Dense A^T B for sparse A, B sharing the row dimension."""
    if a.rows != b.rows:
        raise DimensionError(f"row counts differ: {a.rows} vs {b.rows}")
    b_dense = b.toarray()
    out = np.zeros((a.cols, b.cols))
    np.add.at(out, a.col_indices(), a.values[:, None] * b_dense[a.rowidx])
    return out


def flop_estimate(nnz: int, result_cols: int) -> int:
    """FLOPs for a sparse transpose-product: one multiply + one add per nonzero per output column."""
    if nnz < 0 or result_cols < 0:
        raise ValueError("flop_estimate arguments must be nonnegative")
    return 2 * nnz * result_cols


def expected_coded_nnz(rows: int, cols: int, k: int, density: float, weight: int) -> float:
    """Expected nonzeros of one coded block under i.i.d. density, first order in density."""
    if weight < 1 or k < 1:
        raise ValueError("weight and k must be >= 1")
    return (rows * cols / k) * density * weight


def linear_combination(blocks: list[SparseMatrix], coeffs) -> SparseMatrix:
    """Sparse sum of scaled equal-shape matrices; exact zeros are dropped."""
    coeffs = np.asarray(coeffs, dtype=np.float64)
    if len(blocks) != coeffs.size:
        raise DimensionError("one coefficient per block required")
    rows, cols = blocks[0].rows, blocks[0].cols
    for blk in blocks:
        if blk.shape != (rows, cols):
            raise DimensionError("blocks must share a shape")
    i = np.concatenate([blk.rowidx for blk in blocks])
    j = np.concatenate([blk.col_indices() for blk in blocks])
    v = np.concatenate([c * blk.values for blk, c in zip(blocks, coeffs)])
    if i.size == 0:
        return zeros(rows, cols)
    keys = j * rows + i
    order = np.argsort(keys, kind="stable")
    keys, i, j, v = keys[order], i[order], j[order], v[order]
    starts = np.flatnonzero(np.concatenate([[True], np.diff(keys) != 0]))
    summed = np.add.reduceat(v, starts)
    keep = summed != 0.0
    return from_coo(rows, cols, i[starts][keep], j[starts][keep], summed[keep])


# ---------------------------------------------------------------------------
# Matrix Market coordinate format (real general), 1-based on disk.

MM_HEADER = "%%MatrixMarket matrix coordinate real general"


def write_matrix_market(m: SparseMatrix, path) -> None:
    with open(path, "w") as fh:
        fh.write(MM_HEADER + "\n")
        fh.write(f"{m.rows} {m.cols} {m.nnz}\n")
        cols = m.col_indices()
        for r, c, v in zip(m.rowidx, cols, m.values):
            fh.write(f"{r + 1} {c + 1} {float(v)!r}\n")


def read_matrix_market(path) -> SparseMatrix:
    with open(path) as fh:
        lines = fh.readlines()
    if not lines or not lines[0].strip().lower().startswith("%%matrixmarket"):
        raise MatrixMarketError("missing MatrixMarket header", line=1)
    header = lines[0].strip().lower().split()
    if header[1:5] != ["matrix", "coordinate", "real", "general"]:
        raise MatrixMarketError("only 'matrix coordinate real general' is supported", line=1)
    body = [(no, ln.strip()) for no, ln in enumerate(lines[1:], start=2)
            if ln.strip() and not ln.lstrip().startswith("%")]
    if not body:
        raise MatrixMarketError("missing size line")
    size_no, size_line = body[0]
    parts = size_line.split()
    if len(parts) != 3:
        raise MatrixMarketError("size line must be 'rows cols nnz'", line=size_no)
    try:
        rows, cols, nnz = (int(p) for p in parts)
    except ValueError as exc:
        raise MatrixMarketError(str(exc), line=size_no) from None
    entries = body[1:]
    if len(entries) != nnz:
        raise MatrixMarketError(f"expected {nnz} entries, found {len(entries)}")
    i = np.empty(nnz, dtype=np.int64)
    j = np.empty(nnz, dtype=np.int64)
    v = np.empty(nnz)
    for idx, (no, ln) in enumerate(entries):
        parts = ln.split()
        if len(parts) != 3:
            raise MatrixMarketError("entry must be 'row col value'", line=no)
        try:
            i[idx], j[idx], v[idx] = int(parts[0]) - 1, int(parts[1]) - 1, float(parts[2])
        except ValueError as exc:
            raise MatrixMarketError(str(exc), line=no) from None
        if v[idx] == 0.0:
            raise MatrixMarketError("explicit zero entry", line=no)
    try:
        return from_coo(rows, cols, i, j, v)
    except (ValueError, DimensionError) as exc:
        raise MatrixMarketError(str(exc)) from None
