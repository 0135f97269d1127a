"""How often is a cluster fully occupied by its arithmetic neighbors?

Every point of a generated pattern carries up to 2k neighbors, one per
cluster vector. Most copies of the cluster are only partially occupied;
fully occupied copies are rare. This experiment measures the occupancy
histogram for the icosahedron pattern and compares the fully-occupied
frequency with the two-shell cluster (icosahedron + dodecahedron shells),
for which a higher frequency has been conjectured.
"""
from __future__ import annotations

from quasilattice import (
    build_projectors,
    catalog,
    generate_bfs,
    generic_shift,
    neighbor_graph,
    occupancy_stats,
    reduce,
    two_shell,
)

RADIUS = 6


def experiment(spec):
    projectors = build_projectors(spec)
    scheme = reduce(projectors, generic_shift(spec.k), with_cosets=False)
    pattern = generate_bfs(scheme, RADIUS)
    stats = occupancy_stats(neighbor_graph(pattern), margin=1)
    return pattern, stats


for spec in (catalog("icosahedron"), two_shell(1, 1)):
    pattern, stats = experiment(spec)
    full_degree = 2 * spec.k
    print(f"{spec.name}: {len(pattern.points)} points within {RADIUS} edge units")
    print(f"  interior points (radius {stats.interior_radius}): {stats.interior_count}")
    print(f"  occupancy histogram (neighbors -> count):")
    for degree in sorted(stats.histogram):
        marker = "  <- fully occupied" if degree == full_degree else ""
        print(f"    {degree:3d}: {stats.histogram[degree]}{marker}")
    frac = stats.fully_occupied_fraction
    print(f"  fully occupied fraction: {frac} = {float(frac):.4f}\n")

print("The comparison is reported as-is: the direction of the difference "
      "is a conjecture, not an asserted fact.")
