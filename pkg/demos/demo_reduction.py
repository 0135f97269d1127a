"""Reduce the 5D decagon scheme to a 4D description with pentagon windows.

The strip-projection description of the Penrose pattern uses a
5-dimensional superspace, but one rational direction can be eliminated:
the integer lattice splits into finitely many cosets, and each coset gets
its own polytopal acceptance window (an "atomic surface"). For the decagon
these windows are four regular pentagons, scaled by golden-ratio factors.
"""
from __future__ import annotations

import pathlib

from quasilattice import build_projectors, catalog, lattice_index, reduce
from quasilattice.goldfield import format_golden
from quasilattice.shell import render_surfaces_svg

spec = catalog("decagon")
scheme = reduce(build_projectors(spec))  # shift zero: the classical choice

print("Lattice data after eliminating the rational internal direction:")
print(f"  reduced superspace lattice rank: {scheme.calL.rank}")
print(f"  internal sum-zero lattice rank:  {scheme.L.rank}")
print(f"  subgroup index [reduced : internal] = {lattice_index(scheme.L, scheme.calL)}")

print(f"\nNonempty cube slices: {len(scheme.cosets)}, "
      f"of which {scheme.m} have interior.")
for i, coset in enumerate(scheme.cosets):
    tag = "pentagon" if coset.has_interior else "corner point / degenerate"
    print(f"  slice {i}: offset {coset.z}, "
          f"{len(coset.surface.vertices)} vertices, {tag}")

pentagon = scheme.cosets[1].surface
print("\nFirst pentagon, exact vertex coordinates in the superspace basis:")
for v in pentagon.vertices:
    print("  (" + ", ".join(format_golden(x) for x in v) + ")")

out = pathlib.Path(__file__).with_name("atomic_surfaces.svg")
out.write_text(render_surfaces_svg(scheme))
print(f"\nWrote {out} (the four pentagons drawn in internal coordinates)")
