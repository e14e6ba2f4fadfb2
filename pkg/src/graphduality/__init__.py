"""Directed-graph duality: line-digraph recognition, arc subdivision,
converting traces, growth classes and Hamilton cycles via edge graphs."""
from .classify import (
    ClassReport,
    L31Interval,
    classify_graph,
    delta_nu,
    find_l31_intervals,
    holonomic_check,
    predict_growth,
)
from .convert import (
    ConvertStep,
    ConvertTrace,
    augment_entrance_exit,
    iterate_convert,
    paths_of_length,
    reverse_convert,
    straight_convert,
)
from .core import (
    DegreeProfile,
    Digraph,
    FValidityReport,
    GraphError,
    build_digraph,
    cyclomatic_number,
    degrees,
    has_contour,
    validate_f_requirements,
    weak_components,
)
from .duality import (
    CQuantities,
    DualityVerdict,
    Role,
    RoleMatrix,
    VertexKind,
    c_matrix,
    classify_vertices,
    is_canonical,
    is_quasi_canonical,
    s_matrix,
)
from .hamilton import (
    brute_force_hamilton,
    build_marked_edge_graph,
    euler_partial_subgraphs,
    hamilton_cycles_via_duality,
)
from .normalize import (
    NormalizationReport,
    delta_n_insert,
    normalize_canonical,
    quasi_normalize,
    reduce,
)

__version__ = "0.1.0"
