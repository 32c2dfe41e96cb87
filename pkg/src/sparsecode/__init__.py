"""Sparsity-preserving coded distributed matrix computation.

Cyclic low-weight encodings for A^T x and A^T B that stay resilient to the
maximum number of stragglers, plus decoding, condition-number search,
heterogeneous-device mapping, brute-force verifiers and a seeded simulator.
"""

from .sparse import (
    BlockPartition,
    SparseMatrix,
    expected_coded_nnz,
    flop_estimate,
    from_coo,
    partition_columns,
    random_sparse,
    read_matrix_market,
    spmm_t,
    spmv_t,
    write_matrix_market,
)
from .weights import (
    WeightPlan,
    baseline_weight_cyclic,
    min_weight,
    split_weight_mm,
    weight_regime,
)
from .encoder import (
    EncodingPlan,
    baseline_cyclic_plan,
    baseline_dense_random_plan,
    baseline_poly_plan,
    draw_coefficients,
    encode_blocks,
    mm_supports,
    mv_supports,
    proposed_mm_plan,
    proposed_mv_plan,
)
from .decoder import (
    DecodingSystem,
    assemble,
    condition_number,
    decode_mm,
    decode_mv,
    is_decodable,
)
from .stability import KappaReport, best_of_trials, kappa_worst, search_cost_estimate
from .hetero import (
    DeviceProfile,
    VirtualMap,
    assign_hetero,
    expand_profile,
    recover_from_partial,
)
from .simulator import (
    DelayModel,
    ExperimentResult,
    build_plan,
    communication_cost,
    compare_schemes,
    simulate_run,
)
from .oracle import (
    UnionReport,
    claim_bounds_check,
    dense_reference,
    exhaustive_decodability,
    hall_check,
)

__version__ = "0.1.0"
