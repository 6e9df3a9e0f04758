"""Sperner hypergraphs, partition-reduction matrices and entanglement signals."""
from .hypergraph import (
    Hypergraph,
    antichain_normalize,
    dominates,
    enumerate_antichains,
    join,
    k_uniform_complete,
    meet,
)
from .linalg import RationalMatrix, in_span, left_nullspace, rank, rref, same_span
from .partitions import (
    Partition,
    bell_number,
    enumerate_nontrivial_partitions,
    extend_singleton,
    partition_index,
    restrict,
)
from .reduction import (
    SignalSet,
    build_reduction_matrix,
    rank_by_formula,
    rank_by_matrix,
    signal_to_text,
    signals,
)
from .structure import (
    MemsPoint,
    classify_point,
    count_sensitive,
    indicator_vector,
    recover_hypergraph,
    subspace_basis,
    verify_lattice_correspondence,
    witness,
)

__version__ = "0.1.0"

__all__ = [
    "Hypergraph",
    "antichain_normalize",
    "dominates",
    "enumerate_antichains",
    "join",
    "k_uniform_complete",
    "meet",
    "Partition",
    "bell_number",
    "enumerate_nontrivial_partitions",
    "extend_singleton",
    "partition_index",
    "restrict",
    "SignalSet",
    "build_reduction_matrix",
    "rank_by_formula",
    "rank_by_matrix",
    "signal_to_text",
    "signals",
    "MemsPoint",
    "classify_point",
    "count_sensitive",
    "indicator_vector",
    "recover_hypergraph",
    "subspace_basis",
    "verify_lattice_correspondence",
    "witness",
    "RationalMatrix",
    "in_span",
    "left_nullspace",
    "rank",
    "rref",
    "same_span",
]
