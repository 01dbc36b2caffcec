"""Minimum discrete Frechet distance under translation for planar point sequences.

The library splits into small layers: plain geometry, the 0/1 free-space
matrix with its stationary baselines, boundary reachability summaries of
matrix blocks, decomposition trees that answer corner-to-corner
reachability in O(1) after single-entry updates, the arrangement of
translation disks with a single-toggle traversal plan, and the decision /
optimization procedures built on top.  Brute-force oracles mirror every
fast path.
"""

from .geometry import (
    Circle,
    CollinearPoints,
    DEFAULT_TOL,
    IdenticalCircles,
    Point2,
    Tolerance,
    ZeroRadius,
    circle_circle_intersections,
    circumradius,
    dist,
    point_in_closed_disk,
    rightmost_point,
)
from .free_space import (
    FreeSpaceMatrix,
    GridStep,
    PointSequence,
    build_matrix,
    stationary_decide,
    stationary_frechet,
    toggle_entry,
)
from .block_reach import (
    BlockReachability,
    VerticalReachability,
    build_phi_bruteforce,
    build_phibar_bruteforce,
    merge_adjacent_phi,
    merge_phi,
    merge_phi_bar,
    propagate,
    propagate_vertical,
    restrict_to_vertical,
    transpose_phi,
)
from .decomp_tree import (
    RectTree,
    SquareTree,
    UpdateStats,
    build_gamma,
    build_gamma_bar,
    query_gamma,
    query_gamma_bar,
    update_gamma,
    update_gamma_bar,
)
from .arrangement import (
    ArrangementGraph,
    DiskSet,
    TraversalPlan,
    build_arrangement,
    build_disks,
    make_traversal_plan,
)
from .optimize import (
    CriticalValues,
    DecisionResult,
    critical_values,
    decide,
    optimize_bisect,
    optimize_exact,
)
from .oracles import matrix_reach_bruteforce, naive_decide, naive_optimize

__version__ = "0.1.0"
