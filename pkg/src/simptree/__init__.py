"""Decide simplicial trees and forests, certify cycles, check graftedness."""
from .complex import (
    AntichainError,
    ComplexError,
    DuplicateFacetError,
    FacetComplex,
    ParseError,
    connected_components,
    facet_ideal_generators,
    format_complex,
    free_vertices,
    is_connected,
    parse_complex,
)
from .cycles import CycleCertificate, certificate_from_cycle, cone_reduce, cycle_from_triple, verify_certificate
from .decision import (
    DecisionStats,
    DisconnectedComplexError,
    TripleOutcome,
    Verdict,
    cyclic_facets,
    is_forest,
    is_tree,
    is_tree_baseline,
    is_tree_connection_set,
    is_tree_incidence_matrix,
    is_tree_useless_removal,
    reducible_leaves,
    strip_reducible,
    triple_condition,
)
from .grafting import CoverReport, GraftReport, cm_report, is_grafted, minimal_vertex_covers
from .relations import LeafStatus, connected_outside, leaf_status, leq, residue, strong_neighbors

__version__ = "0.1.0"
