"""All-pairs LCA algorithms on DAGs, their brute-force oracles, and the
reductions between LCA problems and clique detection."""

from .errors import (
    CycleDetected,
    DagLcaError,
    DimensionMismatch,
    IndexOutOfRange,
    InvalidBlockSize,
    InvalidGraph,
    NotFourPartite,
    ParseError,
    PartitionMismatch,
    RetryLimitExceeded,
    SolverContractViolation,
)
from .exact import ExactReport, exact1_lca, exact2_lca
from .graph import (
    Dag,
    TopoOrder,
    ancestors,
    layered_dag,
    random_dag,
    suffix_subgraph,
    topological_order,
    transitive_closure,
)
from .listing import ap2_lca, ap3_lca, atleast_k, atmost_k, exact_k, latest_lca, list_k_lcas
from .matrix import BoolMatrix, Fingerprint, bool_product, count_product
from .oracle import (
    NONE,
    LcaReport,
    VerifyResult,
    all_lcas,
    ap_verify,
    count_lcas,
    is_lca,
    k_lcas_bruteforce,
    oracle_atleast,
    threshold,
    verify_candidates,
)
from .witness import max_witness_direct, max_witness_naive, max_witness_via_verlca

__version__ = "0.1.0"

__all__ = [
    "NONE",
    "BoolMatrix",
    "CycleDetected",
    "Dag",
    "DagLcaError",
    "DimensionMismatch",
    "ExactReport",
    "Fingerprint",
    "IndexOutOfRange",
    "InvalidBlockSize",
    "InvalidGraph",
    "LcaReport",
    "NotFourPartite",
    "ParseError",
    "PartitionMismatch",
    "RetryLimitExceeded",
    "SolverContractViolation",
    "TopoOrder",
    "VerifyResult",
    "all_lcas",
    "ancestors",
    "ap2_lca",
    "ap3_lca",
    "ap_verify",
    "atleast_k",
    "atmost_k",
    "bool_product",
    "count_lcas",
    "count_product",
    "exact1_lca",
    "exact2_lca",
    "exact_k",
    "is_lca",
    "k_lcas_bruteforce",
    "latest_lca",
    "layered_dag",
    "list_k_lcas",
    "max_witness_direct",
    "max_witness_naive",
    "max_witness_via_verlca",
    "oracle_atleast",
    "random_dag",
    "suffix_subgraph",
    "threshold",
    "topological_order",
    "transitive_closure",
    "verify_candidates",
]
