"""Command-line interface, serialization, and renderers.

Subcommands: ``catalog`` (list/show cluster definitions), ``project``
(generate a pattern, write JSON/SVG/XYZ), ``reduce`` (cut-and-project
report), ``verify`` (cross-generator equivalence and invariant suite),
``stats`` (neighbor-occupancy experiment).  All output is deterministic:
identical configuration yields byte-identical files.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

import numpy as np

from . import clusters, generator, scheme
from .goldfield import GoldenScalar, ZERO, format_golden, parse_golden
from .linalg import vec


def _fmt_float(x: float) -> float:
    """Round to 12 significant digits so output is stable across runs."""
    return float(f"{float(x):.12g}")


def _matrix_json(m):
    return [[format_golden(e) for e in row] for row in m.data]


def _vector_json(v):
    return [format_golden(e) for e in v]


def parse_shift(text: str, k: int):
    if text == "zero":
        return tuple([ZERO] * k)
    if text == "generic":
        return generator.generic_shift(k)
    if text == "center":
        return tuple([GoldenScalar.rational(-1, 2)] * k)
    parts = [p for p in text.split(",") if p.strip()]
    if len(parts) != k:
        raise ValueError(f"shift needs {k} components, got {len(parts)}")
    return tuple(parse_golden(p) for p in parts)


def load_cluster(args) -> clusters.ClusterSpec:
    if getattr(args, "cluster_file", None):
        with open(args.cluster_file) as fh:
            return clusters.ClusterSpec.from_json_dict(json.load(fh))
    name = args.cluster
    if name is None:
        raise ValueError("--cluster or --cluster-file is required")
    if name.startswith("two_shell"):
        alpha, beta = 1, 1
        if "(" in name:
            inner = name[name.index("(") + 1:name.rindex(")")]
            alpha, beta = (Fraction(p) for p in inner.split(","))
        return clusters.two_shell(alpha, beta)
    return clusters.catalog(name)


# -- pattern serialization ----------------------------------------------------

def pattern_to_json_dict(pattern, graph=None) -> dict:
    red = pattern.scheme
    phys = pattern.physical()
    index = {p: i for i, p in enumerate(pattern.points)}
    pts = []
    for i, p in enumerate(pattern.points):
        pts.append({
            "lattice": list(p),
            "phys": [_fmt_float(c) for c in phys[i]],
            "boundary": p in pattern.boundary,
        })
    edges = []
    if graph is not None:
        for x, y, label in graph.edges:
            edges.append([index[x], index[y], label])
        edges.sort()
    return {
        "cluster": red.cluster.name,
        "gamma": _vector_json(red.shift),
        "radius": str(pattern.radius),
        "kappa_float": _fmt_float(np.sqrt(red.projectors.kappa_sq.to_float())),
        "method": pattern.method,
        "points": pts,
        "edges": edges,
    }


def pattern_points_from_json(doc):
    return tuple(tuple(int(c) for c in p["lattice"]) for p in doc["points"])


def reduction_to_json_dict(red) -> dict:
    ps = red.projectors
    cosets = []
    for c in red.cosets:
        verts_exact = [_vector_json(v) for v in c.surface.vertices]
        coords_float = [[_fmt_float(x.to_float()) for x in v]
                        for v in c.surface.coords]
        cosets.append({
            "z": list(c.z),
            "offset": _vector_json(c.offset),
            "surface_dim": c.surface.dim,
            "surface_vertices": verts_exact,
            "surface_coords_float": coords_float,
            "has_interior": c.has_interior,
        })
    return {
        "cluster": red.cluster.name,
        "gamma": _vector_json(red.shift),
        "dims": {"n": ps.dims[0], "s": ps.dims[1], "d": ps.dims[2]},
        "rho_sq": format_golden(ps.rho_sq),
        "kappa_sq": format_golden(ps.kappa_sq),
        "pi": _matrix_json(ps.pi),
        "pi_prime": _matrix_json(ps.pi_prime),
        "pi_dprime": _matrix_json(ps.pi_dprime),
        "lattice_phys_internal": {
            "basis": [list(r) for r in red.calL.basis],
            "denominator": red.calL.denominator,
        },
        "sublattice": {
            "basis": [list(r) for r in red.L.basis],
            "denominator": red.L.denominator,
        },
        "coset_count": len(red.cosets),
        "m": red.m,
        "cosets": cosets,
    }


# -- renderers ----------------------------------------------------------------

def render_svg(pattern, graph=None, point_size=0.08) -> str:
    """SVG for a planar pattern: circles for points, segments for edges."""
    red = pattern.scheme
    if red.projectors.dims[0] != 2:
        raise ValueError("SVG pattern rendering needs 2-dimensional "
                         "physical space")
    phys = pattern.physical()
    if len(phys):
        lo = phys.min(axis=0) - 1.0
        hi = phys.max(axis=0) + 1.0
    else:
        lo = np.array([-1.0, -1.0])
        hi = np.array([1.0, 1.0])
    w, h = hi - lo
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" '
        f'viewBox="{_c(lo[0])} {_c(-hi[1])} {_c(w)} {_c(h)}" '
        f'width="800" height="{_c(800 * h / w)}">',
    ]
    if graph is not None:
        index = {p: i for i, p in enumerate(pattern.points)}
        for x, y, _ in graph.edges:
            a, b = phys[index[x]], phys[index[y]]
            parts.append(
                f'<line x1="{_c(a[0])}" y1="{_c(-a[1])}" '
                f'x2="{_c(b[0])}" y2="{_c(-b[1])}" '
                f'stroke="#888" stroke-width="{_c(point_size / 3)}"/>')
    for i, p in enumerate(pattern.points):
        fill = "#c33" if p in pattern.boundary else "#036"
        parts.append(
            f'<circle cx="{_c(phys[i][0])}" cy="{_c(-phys[i][1])}" '
            f'r="{_c(point_size)}" fill="{fill}"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def render_surfaces_svg(red) -> str:
    """SVG of the 2-dimensional atomic surfaces of a reduced scheme."""
    if red.projectors.dims[1] != 2:
        raise ValueError("surface rendering needs a 2-dimensional internal "
                         "space")
    polys = []
    all_pts = []
    for c in red.cosets:
        pts = np.array([[x.to_float() for x in v] for v in c.surface.coords])
        if len(pts) == 0:
            continue
        all_pts.append(pts)
        if len(pts) >= 3:
            center = pts.mean(axis=0)
            ang = np.arctan2(pts[:, 1] - center[1], pts[:, 0] - center[0])
            pts = pts[np.argsort(ang)]
        polys.append(pts)
    if all_pts:
        cat = np.vstack(all_pts)
        lo = cat.min(axis=0) - 0.2
        hi = cat.max(axis=0) + 0.2
    else:
        lo, hi = np.array([-1.0, -1.0]), np.array([1.0, 1.0])
    w, h = hi - lo
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" '
        f'viewBox="{_c(lo[0])} {_c(-hi[1])} {_c(w)} {_c(h)}" '
        f'width="600" height="{_c(600 * h / w)}">',
    ]
    for pts in polys:
        if len(pts) >= 3:
            coords = " ".join(f"{_c(p[0])},{_c(-p[1])}" for p in pts)
            parts.append(f'<polygon points="{coords}" fill="none" '
                         f'stroke="#036" stroke-width="0.01"/>')
        else:
            for p in pts:
                parts.append(f'<circle cx="{_c(p[0])}" cy="{_c(-p[1])}" '
                             f'r="0.02" fill="#c33"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _c(x) -> str:
    return f"{float(x):.12g}"


def render_xyz(pattern) -> str:
    """XYZ text for a spatial pattern: one 'Q x y z' line per point."""
    if pattern.scheme.projectors.dims[0] != 3:
        raise ValueError("XYZ rendering needs 3-dimensional physical space")
    phys = pattern.physical()
    lines = [str(len(pattern.points)),
             f"pattern {pattern.scheme.cluster.name} radius {pattern.radius}"]
    for p in phys:
        lines.append(f"Q {_c(p[0])} {_c(p[1])} {_c(p[2])}")
    return "\n".join(lines) + "\n"


# -- subcommands --------------------------------------------------------------

def _prepare(args, with_cosets=True):
    spec = load_cluster(args)
    projectors = scheme.build_projectors(spec)
    shift = parse_shift(args.shift, spec.k)
    red = scheme.reduce(projectors, shift, with_cosets=with_cosets)
    return spec, red


def _write(path, text):
    if path == "-" or path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _json_text(doc) -> str:
    return json.dumps(doc, indent=2) + "\n"


def cmd_catalog(args) -> int:
    if args.action == "list":
        for name in clusters.CATALOG_NAMES:
            print(name)
        return 0
    spec = clusters.catalog(args.name)
    _write(args.out, _json_text(spec.to_json_dict()))
    return 0


def cmd_project(args) -> int:
    spec, red = _prepare(args)
    radius = Fraction(args.radius)
    if args.mode == "box":
        pattern = generator.generate_box(red, radius, workers=args.workers)
    elif args.mode == "bfs":
        pattern = generator.generate_bfs(red, radius)
    elif args.mode == "bm":
        pattern = generator.generate_baake_moody(red, radius,
                                                 workers=args.workers)
    else:
        raise ValueError(f"unknown mode {args.mode!r}")
    graph = generator.neighbor_graph(pattern)
    _write(args.out, _json_text(pattern_to_json_dict(pattern, graph)))
    if args.svg:
        _write(args.svg, render_svg(pattern, graph if args.edges else None))
    if args.xyz:
        _write(args.xyz, render_xyz(pattern))
    return 0


def cmd_reduce(args) -> int:
    spec, red = _prepare(args)
    _write(args.out, _json_text(reduction_to_json_dict(red)))
    if args.svg:
        _write(args.svg, render_surfaces_svg(red))
    return 0


def cmd_verify(args) -> int:
    spec, red = _prepare(args)
    radius = Fraction(args.radius)
    checks = []

    inv = scheme.check_invariance(spec, red.projectors)
    checks.append(("projector-invariance", inv.ok,
                   "" if inv.ok else str(inv.failures)))
    emb = scheme.check_embedding(spec, red.projectors)
    checks.append(("embedding", emb.ok, f"max_error={emb.max_error:.2e}"))

    box = generator.generate_box(red, radius, workers=args.workers)
    bfs = generator.generate_bfs(red, radius)
    bm = generator.generate_baake_moody(red, radius, workers=args.workers)
    r1 = generator.equivalence_check(box, bfs)
    r2 = generator.equivalence_check(box, bm)
    checks.append(("box-vs-bfs", r1.equal, r1.summary()))
    checks.append(("box-vs-baake-moody", r2.equal, r2.summary()))

    graph = generator.neighbor_graph(box)
    A = np.array(spec.embedding, dtype=float)
    worst = 0.0
    for x, y, label in graph.edges:
        diff = np.array(y, dtype=float) - np.array(x, dtype=float)
        worst = max(worst, float(np.max(np.abs(
            diff @ A - A[label - 1]))))
    neighbors_ok = worst <= 1e-9
    checks.append(("arithmetic-neighbors", neighbors_ok,
                   f"max_deviation={worst:.2e}"))

    ok = all(c[1] for c in checks)
    for name, passed, detail in checks:
        status = "ok" if passed else "FAIL"
        print(f"{status:4s} {name} {detail}".rstrip())
    if r1.equal and r2.equal:
        print(f"box = bfs = baake-moody ({len(box.points)} points)")
    return 0 if ok else 1


def cmd_stats(args) -> int:
    # Occupancy only needs the strip window, so skip the (possibly very
    # expensive) coset enumeration.
    spec, red = _prepare(args, with_cosets=False)
    radius = Fraction(args.radius)
    pattern = generator.generate_bfs(red, radius)
    stats = generator.occupancy_stats(generator.neighbor_graph(pattern))
    doc = {
        "cluster": spec.name,
        "radius": str(radius),
        "interior_radius": str(stats.interior_radius),
        "interior_count": stats.interior_count,
        "histogram": {str(k): v for k, v in stats.histogram.items()},
        "fully_occupied_fraction": str(stats.fully_occupied_fraction),
        "fully_occupied_float": _fmt_float(
            float(stats.fully_occupied_fraction)),
    }
    if args.compare:
        cargs = argparse.Namespace(cluster=args.compare, cluster_file=None,
                                   shift=args.shift)
        cspec, cred = _prepare(cargs, with_cosets=False)
        cpat = generator.generate_bfs(cred, radius)
        cstats = generator.occupancy_stats(generator.neighbor_graph(cpat))
        doc["comparison"] = {
            "cluster": cspec.name,
            "interior_count": cstats.interior_count,
            "histogram": {str(k): v for k, v in cstats.histogram.items()},
            "fully_occupied_fraction": str(cstats.fully_occupied_fraction),
            "fully_occupied_float": _fmt_float(
                float(cstats.fully_occupied_fraction)),
        }
    _write(args.out, _json_text(doc))
    return 0


def _add_common(p):
    p.add_argument("--cluster", help="catalog name (or two_shell(a,b))")
    p.add_argument("--cluster-file", help="path to a cluster JSON definition")
    p.add_argument("--shift", default="zero",
                   help="strip shift: zero | generic | center | "
                        "comma-separated exact values")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", default="-", help="output path (default stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quasilattice",
        description="quasiperiodic point patterns from finite-group "
                    "clusters, exactly")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("catalog", help="list or show cluster definitions")
    p.add_argument("action", choices=["list", "show"])
    p.add_argument("name", nargs="?")
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("project", help="generate a pattern")
    _add_common(p)
    p.add_argument("--radius", required=True)
    p.add_argument("--mode", choices=["box", "bfs", "bm"], default="bfs")
    p.add_argument("--svg", help="write an SVG rendering (2D patterns)")
    p.add_argument("--xyz", help="write an XYZ file (3D patterns)")
    p.add_argument("--edges", action="store_true",
                   help="draw neighbor edges in the SVG")
    p.set_defaults(func=cmd_project)

    p = sub.add_parser("reduce", help="cut-and-project reduction report")
    _add_common(p)
    p.add_argument("--svg", help="write surface SVG (2D internal space)")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("verify", help="cross-generator equivalence suite")
    _add_common(p)
    p.add_argument("--radius", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("stats", help="neighbor-occupancy experiment")
    _add_common(p)
    p.add_argument("--radius", required=True)
    p.add_argument("--compare", help="second cluster for a side-by-side "
                                     "occupancy report")
    p.set_defaults(func=cmd_stats)
    return parser


def cli_main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        if args.command == "catalog" and args.action == "show" \
                and not args.name:
            parser.error("catalog show needs a name")
        return args.func(args)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    except (ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(cli_main())
