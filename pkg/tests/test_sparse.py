import numpy as np
import pytest

import sparsecode as sc
from sparsecode.errors import (
    DimensionError,
    InvalidPartitionError,
    MatrixMarketError,
)


def dense_mv_oracle(a_dense, x):
    # plain triple-loop reference, kept independent of the CSC kernels
    cols = a_dense.shape[1]
    out = np.zeros(cols)
    for j in range(cols):
        for t in range(a_dense.shape[0]):
            out[j] += a_dense[t, j] * x[t]
    return out


class TestPartition:
    def test_even_six_block_split(self):
        part = sc.partition_columns(15000, 6)
        assert part.widths() == [2500] * 6

    def test_identity_partition(self):
        part = sc.partition_columns(5, 5)
        assert part.widths() == [1] * 5

    def test_remainder_to_leading_blocks(self):
        part = sc.partition_columns(10, 3)
        assert part.widths() == [4, 3, 3]

    def test_blocks_tile_exactly(self):
        for cols in (7, 12, 31):
            for k in range(1, cols + 1):
                part = sc.partition_columns(cols, k)
                assert part.boundaries[0] == 0
                assert part.boundaries[-1] == cols
                assert all(w >= 1 for w in part.widths())
                assert max(part.widths()) - min(part.widths()) <= 1

    def test_k_out_of_range(self):
        with pytest.raises(InvalidPartitionError):
            sc.partition_columns(4, 5)
        with pytest.raises(InvalidPartitionError):
            sc.partition_columns(4, 0)


class TestProducts:
    def test_spmv_identity(self):
        m = sc.from_coo(3, 3, [0, 1, 2], [0, 1, 2], [1.0, 1.0, 1.0])
        assert np.allclose(sc.spmv_t(m, np.array([1.0, 2.0, 3.0])), [1, 2, 3])

    def test_spmv_zero_matrix(self):
        m = sc.from_coo(4, 3, [], [], [])
        assert np.allclose(sc.spmv_t(m, np.ones(4)), np.zeros(3))

    def test_spmv_matches_dense_oracle(self):
        rng = np.random.default_rng(0)
        m = sc.random_sparse(50, 20, 0.2, seed=5)
        x = rng.standard_normal(50)
        got = sc.spmv_t(m, x)
        ref = dense_mv_oracle(m.toarray(), x)
        assert np.allclose(got, ref, rtol=1e-12, atol=1e-14)

    def test_spmv_dimension_mismatch(self):
        m = sc.random_sparse(10, 5, 0.3, seed=1)
        with pytest.raises(DimensionError):
            sc.spmv_t(m, np.ones(11))

    def test_spmm_identity(self):
        eye = sc.from_coo(3, 3, range(3), range(3), np.ones(3))
        assert np.allclose(sc.spmm_t(eye, eye), np.eye(3))

    def test_spmm_zero(self):
        z = sc.from_coo(4, 2, [], [], [])
        b = sc.random_sparse(4, 3, 0.5, seed=2)
        assert np.allclose(sc.spmm_t(z, b), np.zeros((2, 3)))

    def test_spmm_matches_dense(self):
        a = sc.random_sparse(40, 8, 0.25, seed=3)
        b = sc.random_sparse(40, 6, 0.25, seed=4)
        assert np.allclose(sc.spmm_t(a, b), a.toarray().T @ b.toarray(),
                           rtol=1e-12, atol=1e-14)

    def test_spmm_dimension_mismatch(self):
        a = sc.random_sparse(10, 4, 0.3, seed=6)
        b = sc.random_sparse(11, 4, 0.3, seed=7)
        with pytest.raises(DimensionError):
            sc.spmm_t(a, b)

    @pytest.mark.parametrize("seed", range(8))
    def test_random_agreement_up_to_100(self, seed):
        rng = np.random.default_rng(seed)
        rows, cols = rng.integers(2, 100, size=2)
        a = sc.random_sparse(int(rows), int(cols), 0.1, seed=seed)
        x = rng.standard_normal(int(rows))
        ref = a.toarray().T @ x
        got = sc.spmv_t(a, x)
        assert np.allclose(got, ref, rtol=1e-12, atol=1e-13)


class TestCostModel:
    def test_flops_sparse_dot(self):
        assert sc.flop_estimate(50, 1) == 100  # psi=0.05, m=1000

    def test_flops_zero(self):
        assert sc.flop_estimate(0, 10) == 0

    def test_flops_formula(self):
        assert sc.flop_estimate(10, 3) == 60

    def test_expected_nnz_known_totals(self):
        prop = (sc.expected_coded_nnz(20000, 15000, 6, 0.01, 2)
                + sc.expected_coded_nnz(20000, 12000, 6, 0.01, 3))
        cyc = (sc.expected_coded_nnz(20000, 15000, 6, 0.01, 4)
               + sc.expected_coded_nnz(20000, 12000, 6, 0.01, 2))
        assert prop == pytest.approx(2.2e6)
        assert cyc == pytest.approx(2.8e6)

    def test_expected_nnz_dense_case(self):
        assert sc.expected_coded_nnz(30, 12, 4, 1.0, 4) == pytest.approx(360)

    def test_monotonicity(self):
        base = sc.expected_coded_nnz(100, 60, 4, 0.1, 2)
        assert sc.expected_coded_nnz(200, 60, 4, 0.1, 2) >= base
        assert sc.expected_coded_nnz(100, 60, 4, 0.2, 2) >= base
        assert sc.expected_coded_nnz(100, 60, 4, 0.1, 3) >= base
        assert sc.flop_estimate(11, 3) >= sc.flop_estimate(10, 3)
        assert sc.flop_estimate(10, 4) >= sc.flop_estimate(10, 3)


class TestConstruction:
    def test_duplicate_entry_rejected(self):
        with pytest.raises(ValueError):
            sc.from_coo(2, 2, [0, 0], [1, 1], [1.0, 2.0])

    def test_out_of_range_rejected(self):
        with pytest.raises(DimensionError):
            sc.from_coo(2, 2, [2], [0], [1.0])

    def test_nonfinite_rejected(self):
        with pytest.raises(ValueError):
            sc.from_coo(2, 2, [0], [0], [np.inf])

    def test_nnz_counts_entries(self):
        m = sc.random_sparse(30, 30, 0.1, seed=8)
        assert m.nnz == m.values.size == np.count_nonzero(m.toarray())


class TestMatrixMarket:
    def test_round_trip(self, tmp_path):
        m = sc.random_sparse(12, 9, 0.3, seed=9)
        path = tmp_path / "m.mtx"
        sc.write_matrix_market(m, path)
        back = sc.read_matrix_market(path)
        assert back.shape == m.shape
        assert np.allclose(back.toarray(), m.toarray())

    def test_malformed_header(self, tmp_path):
        path = tmp_path / "bad.mtx"
        path.write_text("not a header\n1 1 0\n")
        with pytest.raises(MatrixMarketError):
            sc.read_matrix_market(path)

    def test_explicit_zero_rejected(self, tmp_path):
        path = tmp_path / "zero.mtx"
        path.write_text("%%MatrixMarket matrix coordinate real general\n"
                        "2 2 1\n1 1 0.0\n")
        with pytest.raises(MatrixMarketError) as exc:
            sc.read_matrix_market(path)
        assert exc.value.line == 3

    def test_duplicate_in_file_rejected(self, tmp_path):
        path = tmp_path / "dup.mtx"
        path.write_text("%%MatrixMarket matrix coordinate real general\n"
                        "2 2 2\n1 1 1.0\n1 1 2.0\n")
        with pytest.raises(MatrixMarketError):
            sc.read_matrix_market(path)
