"""Boundary distance matrices of graphs: recognition, reconstruction and
uniqueness experiments for trees, block graphs and unicyclic graphs."""

from .errors import GraphboundError
from .graph import (
    BoundaryPartition,
    EccentricityProfile,
    Family,
    Graph,
    Label,
    apsp,
    boundary,
    boundary_fast,
    boundary_matrix,
    classify_family,
    eccentricity_profile,
    is_doubly_resolving,
    is_maximally_distant,
    is_strong_resolving,
)
from .lab import (
    ConjectureReport,
    are_isomorphic,
    canonical_matrix,
    enumerate_connected_graphs,
    h_class_membership,
    test_conjecture,
)
from .matrix import (
    BlockSizeSequence,
    DissimilarityMatrix,
    block_det_formula,
    check_lemma23,
    det_exact,
    is_additive,
    is_metric,
    tree_det_formula,
)
from .realize import (
    RecognitionReport,
    is_block_boundary_matrix,
    is_block_distance_matrix,
    is_cycle_distance_matrix,
    is_tree_boundary_matrix,
    is_tree_distance_matrix,
    is_unicyclic_distance_matrix,
    realize_distance_matrix,
)
from .reconstruct import (
    ReconstructionResult,
    detect_siblings,
    discriminate_leaves,
    recognize_unicyclic_boundary,
    reconstruct_1block,
    reconstruct_from_3x3,
    reconstruct_tree,
    reconstruct_unicyclic,
)

__version__ = "0.1.0"
