"""Vietoris-Rips (clique) complexes of graphs and finite metric spaces, exact
integral (co)homology, and Kunneth checks for strong and max-metric products."""

__version__ = "0.1.0"

from .algebra import (
    AbelianGroup,
    Coefficients,
    GF,
    NotComputedError,
    QQ,
    ResourceLimitError,
    SmithForm,
    SparseIntMatrix,
    ZZ,
    direct_sum,
    groups_isomorphic,
    smith_normal_form,
    tensor_groups,
    tor_groups,
)
from .flag import (
    ChainComplex,
    FlagComplex,
    boundary_matrix,
    build_flag_complex,
    chain_complex,
    cohomology_at,
    homology_at,
    point_complex,
    tensor_chain_complex,
)
from .kunneth import (
    GradedGroups,
    KunnethReport,
    predict_cohomology,
    predict_homology,
    torus_closed_form,
    verify_algebraic,
    verify_cohomology_product,
    verify_graph_product,
)
from .relations import (
    FiniteMetricSpace,
    Graph,
    Threshold,
    make_graph,
    max_metric_product,
    relation_equals,
    relation_from_metric,
    strong_product,
    tuple_count,
)
from .spaces import (
    SpaceRecipe,
    barycentric_flag,
    circle_metric,
    complete,
    cycle,
    erdos_renyi,
    load_distance_matrix,
    load_edge_list,
    power_cycle,
    rp2_flag,
)
