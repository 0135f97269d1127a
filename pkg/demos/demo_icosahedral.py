"""Generate a 3D quasicrystal from the icosahedron cluster and export XYZ.

The icosahedron cluster uses a 6-dimensional superspace whose internal
rational part vanishes, so the reduction degenerates to a plain model set:
one lattice, one window (a rhombic triacontahedron). The generated points
form the vertex set of a 3D Penrose pattern.
"""
from __future__ import annotations

import pathlib

from quasilattice import (
    build_projectors,
    catalog,
    generate_box,
    generic_shift,
    neighbor_graph,
    reduce,
)
from quasilattice.shell import render_xyz

RADIUS = 4

spec = catalog("icosahedron")
projectors = build_projectors(spec)
print(f"Icosahedron cluster: k = {spec.k}, n = {spec.n}, "
      f"projector ranks {projectors.dims}")

scheme = reduce(projectors, generic_shift(spec.k))
print(f"Reduction keeps the full 6D lattice: rank {scheme.calL.rank}, "
      f"single coset: {len(scheme.cosets) == 1}")
window = scheme.cosets[0].surface
print(f"Acceptance window: {len(window.vertices)} vertices "
      "(a rhombic triacontahedron)")

pattern = generate_box(scheme, RADIUS)
graph = neighbor_graph(pattern)
print(f"\nPattern within {RADIUS} edge lengths: {len(pattern.points)} points, "
      f"{len(graph.edges)} neighbor bonds")

out = pathlib.Path(__file__).with_name("icosahedral_pattern.xyz")
out.write_text(render_xyz(pattern))
print(f"Wrote {out} (viewable in any molecular viewer)")
