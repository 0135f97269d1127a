"""Quasiperiodic point patterns from finite-group clusters, exactly.

The pipeline: a cluster (finite set of orbit vectors of a finite group)
defines a Gram matrix over Q(sqrt5); its scaled copy is an orthogonal
projector from a superspace lattice onto physical space.  Strip projection
selects lattice points whose perpendicular image falls in a zonotope
window; the reduction splits the same selection into finitely many cosets
with polytopal atomic surfaces in a smaller internal space.  All membership
decisions are exact.
"""

from .clusters import (
    CATALOG_NAMES,
    ClusterSpec,
    SignedPermutation,
    catalog,
    close_group,
    two_shell,
    validate,
)
from .generator import (
    NeighborGraph,
    OccupancyStats,
    Pattern,
    equivalence_check,
    generate_baake_moody,
    generate_bfs,
    generate_box,
    generic_shift,
    neighbor_graph,
    occupancy_stats,
    strip_accepts,
)
from .geometry import (
    AtomicSurface,
    HalfspaceRep,
    Zonotope,
    negate_surface,
    scale_surface,
    surface_contains,
    zonotope_contains,
    zonotope_facets,
)
from .goldfield import (
    ONE,
    SQRT5,
    TAU,
    TAU_PRIME,
    ZERO,
    GoldenScalar,
    format_golden,
    golden,
    parse_golden,
)
from .linalg import (
    GoldenMatrix,
    IntegerLatticeBasis,
    hnf,
    image_lattice_basis,
    integer_kernel,
    lattice_index,
)
from .scheme import (
    CosetSlice,
    ProjectorSet,
    ReducedScheme,
    build_projectors,
    check_embedding,
    check_invariance,
    reduce,
)
from .shell import cli_main

__version__ = "0.1.0"

__all__ = [
    "CATALOG_NAMES", "ClusterSpec", "SignedPermutation", "catalog",
    "close_group", "two_shell", "validate",
    "NeighborGraph", "OccupancyStats", "Pattern", "equivalence_check",
    "generate_baake_moody", "generate_bfs", "generate_box", "generic_shift",
    "neighbor_graph", "occupancy_stats", "strip_accepts",
    "AtomicSurface", "HalfspaceRep", "Zonotope", "negate_surface",
    "scale_surface", "surface_contains", "zonotope_contains",
    "zonotope_facets",
    "ONE", "SQRT5", "TAU", "TAU_PRIME", "ZERO", "GoldenScalar",
    "format_golden", "golden", "parse_golden",
    "GoldenMatrix", "IntegerLatticeBasis", "hnf", "image_lattice_basis",
    "integer_kernel", "lattice_index",
    "CosetSlice", "ProjectorSet", "ReducedScheme", "build_projectors",
    "check_embedding", "check_invariance", "reduce",
    "cli_main",
]
