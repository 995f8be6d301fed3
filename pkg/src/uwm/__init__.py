"""Exact construction, verification and classification of unit weighing matrices."""
from .blocks import (
    LABELS,
    BlockId,
    block_b2,
    block_e2m,
    block_f5,
    block_identity,
    block_uw33,
    block_uw43,
    block_uw65,
    block_w5,
    block_w6,
    block_w7,
    block_w8,
    build_block,
    e2m_sign_swap_equivalence,
)
from .compose import (
    Existence,
    PartMultiset,
    compose_from_parts,
    count_decompositions,
    decomposition_table,
    direct_sum,
    enumerate_part_multisets,
    exists_uw,
    exists_w_real,
)
from .cyclotomic import (
    ONE,
    ZERO,
    X,
    CycloNumber,
    LaurentCyclo,
    UnitEntry,
    cyc_add,
    cyc_conj,
    cyc_is_zero,
    cyc_mul,
    cyclotomic_polynomial,
    entry_mul_conj,
    float_probe,
    lc_add,
    lc_is_zero,
)
from .errors import BudgetExceeded, FormatError, InvariantError, UWMError
from .fileformat import parse_matrix, serialize_matrix
from .matrix import (
    UnitMatrix,
    canonical_form,
    entry_less,
    equivalent,
    gram_check,
    hermitian_transpose,
    is_standard_form,
    permute_cols,
    permute_rows,
    random_equivalence_scramble,
    replay,
    scale_col,
    scale_row,
    standardize,
    standardize_with_ops,
)
from .refute import RefutationCertificate, uw75_refute, verify_certificate
from .search import (
    OrthTuple,
    SearchConfig,
    Verdict,
    dfs_classify,
    disjoint_zero_triple,
    m_orth_solutions,
    orth_brute,
    zero_pattern_necessary,
)

__version__ = "0.1.0"
