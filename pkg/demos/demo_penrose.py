"""Build a planar Penrose-type pattern from the decagon cluster.

The decagon cluster lives in a 5-dimensional superspace. Selecting the
integer points whose internal projection falls in the projected unit cube
and pushing them down to the plane yields the vertex set of a Penrose
pattern. This script generates the pattern three independent ways, checks
they agree point for point, and writes an SVG picture.
"""
from __future__ import annotations

import pathlib

from quasilattice import (
    build_projectors,
    catalog,
    equivalence_check,
    generate_baake_moody,
    generate_bfs,
    generate_box,
    generic_shift,
    neighbor_graph,
    reduce,
)
from quasilattice.shell import render_svg

RADIUS = 6

print("Decagon cluster: 10 unit vectors in the plane, D10 symmetry.")
spec = catalog("decagon")
print(f"  superspace dimension k = {spec.k}, physical dimension n = {spec.n}")

projectors = build_projectors(spec)
print(f"  projector ranks (physical, internal', internal'') = {projectors.dims}")

# A generic shift keeps lattice points off the window boundary, so the three
# generators must agree exactly.
scheme = reduce(projectors, generic_shift(spec.k))

print(f"\nGenerating all points within {RADIUS} edge lengths of the origin...")
by_strip = generate_box(scheme, RADIUS)
by_walk = generate_bfs(scheme, RADIUS)
by_cosets = generate_baake_moody(scheme, RADIUS)

print(f"  strip enumeration:   {len(by_strip.points)} points")
print(f"  neighbor walk:       {len(by_walk.points)} points")
print(f"  coset windows:       {len(by_cosets.points)} points")
print(f"  agreement: {equivalence_check(by_strip, by_walk).summary()},"
      f" {equivalence_check(by_strip, by_cosets).summary()}")

graph = neighbor_graph(by_strip)
print(f"  neighbor edges: {len(graph.edges)} (every edge is a cluster vector)")

out = pathlib.Path(__file__).with_name("penrose_pattern.svg")
out.write_text(render_svg(by_strip, graph))
print(f"\nWrote {out}")
