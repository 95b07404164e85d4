"""Exact classification of incompressible surfaces in punctured-torus
bundles over the circle, driven by invariant edge-paths in the Farey
diagram and its determinant-two forest."""

from .slopes import (
    ALPHA,
    BETA,
    INFINITY,
    Matrix2,
    ParityClass,
    RLWord,
    Slope,
    TraceClass,
    apply_matrix,
    compare_slopes,
    conjugate_to_nonneg,
    det_pair,
    matrix_power,
    mod2_permutation,
    normalize_slope,
    parity_class,
    rl_factorize,
    trace_class,
)
from .graphs import (
    EdgePath,
    Graph,
    Turn,
    TurnDirection,
    adjacent,
    bfs_geodesic_oracle,
    det2_neighbors,
    geodesic_in_What,
    is_minimal,
    tree_distance,
    turn_at,
    turn_counts,
)
from .paths import (
    InvariantPath,
    SpecialPath,
    SpecialVertex,
    axis_in_tree,
    derived_path,
    enumerate_minimal_invariant_farey,
    enumerate_special_paths,
    gamma1_prime,
    gamma1_prime_path,
    gamma2_prime,
)
from .families import (
    ClassificationReport,
    EpsilonSymbol,
    Family,
    SurfaceClass,
    classify_all,
    classify_closed,
    classify_horizontal_boundary,
    classify_transverse,
    epsilon_orbits,
    euler_characteristic,
    sigma_vector,
    table_invariants,
)
from .product_spaces import (
    PieceSurface,
    ProductSurface,
    classify_lens,
    classify_solid_torus,
    classify_t2xI,
)
from .ribbon import (
    RibbonSurface,
    SaddleSchedule,
    assemble,
    boundary_count,
    euler_char,
    is_orientable,
    schedule_of,
)

__version__ = "0.1.0"
