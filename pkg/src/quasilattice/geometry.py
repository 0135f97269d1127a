"""Exact convex geometry in internal spaces.

Zonotope windows get a tight halfspace representation (facet normals from
generator subsets, support-function bounds).  Atomic surfaces are kept as
exact vertex sets; membership and extreme-point decisions run through a
small exact simplex over Q(sqrt5), so no floating point ever decides a
point's fate.  Floats appear only as a conservative pre-screen inside the
extreme-point filter, and every suggestion is certified exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .goldfield import ZERO, ONE, GoldenScalar
from .linalg import (
    GoldenMatrix,
    kernel_basis,
    vec,
    vec_dot,
    vec_scale,
    vec_sub,
)

INSIDE = "inside"
BOUNDARY = "boundary"
OUTSIDE = "outside"


# -- exact simplex ------------------------------------------------------------

def _simplex_max(A, b, c):
    """Maximize c.x subject to A x = b, x >= 0, all exact.

    Returns (status, value, x) with status in {"optimal", "infeasible",
    "unbounded"}.  Two phases, Bland's rule, so termination is guaranteed.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    rows = []
    rhs = []
    for i in range(m):
        if b[i].sign() < 0:
            rows.append([-x for x in A[i]])
            rhs.append(-b[i])
        else:
            rows.append(list(A[i]))
            rhs.append(b[i])
    # phase 1: artificial variables n..n+m-1
    tab = [rows[i] + [ONE if j == i else ZERO for j in range(m)] + [rhs[i]]
           for i in range(m)]
    basis = list(range(n, n + m))
    total = n + m

    def pivot(r, col):
        inv = tab[r][col].inverse()
        tab[r] = [x * inv for x in tab[r]]
        for i in range(m):
            if i != r and not tab[i][col].is_zero():
                f = tab[i][col]
                tab[i] = [x - f * y for x, y in zip(tab[i], tab[r])]
        basis[r] = col

    def optimize(costs, allowed):
        while True:
            # reduced costs for a max problem: pick entering with positive rc
            duals = [costs[basis[i]] for i in range(m)]
            entering = None
            for j in range(allowed):
                if j in basis:
                    continue
                rc = costs[j]
                for i in range(m):
                    rc = rc - duals[i] * tab[i][j]
                if rc.sign() > 0:
                    entering = j
                    break
            if entering is None:
                return
            leaving = None
            best = None
            for i in range(m):
                if tab[i][entering].sign() > 0:
                    ratio = tab[i][total] / tab[i][entering]
                    if best is None or ratio < best or (
                        ratio == best and basis[i] < basis[leaving]
                    ):
                        best = ratio
                        leaving = i
            if leaving is None:
                raise _Unbounded
            pivot(leaving, entering)

    phase1 = [ZERO] * n + [-ONE] * m
    try:
        optimize(phase1, total)
    except _Unbounded:  # pragma: no cover - phase 1 is always bounded
        raise RuntimeError("phase 1 unbounded")
    infeas = ZERO
    for i in range(m):
        if basis[i] >= n:
            infeas = infeas + tab[i][total]
    if infeas.sign() != 0:
        return "infeasible", None, None
    # drive leftover artificials out of the basis
    for i in range(m):
        if basis[i] >= n:
            col = next(
                (j for j in range(n) if not tab[i][j].is_zero()), None
            )
            if col is not None:
                pivot(i, col)
    costs = list(c) + [GoldenScalar(-(10 ** 9))] * m  # artificials stay out
    try:
        optimize(costs, n)
    except _Unbounded:
        return "unbounded", None, None
    x = [ZERO] * n
    for i in range(m):
        if basis[i] < n:
            x[basis[i]] = tab[i][total]
    value = ZERO
    for j in range(n):
        value = value + c[j] * x[j]
    return "optimal", value, tuple(x)


class _Unbounded(Exception):
    pass


def in_convex_hull(points, q) -> bool:
    """Exact test q in conv(points); q and points share a coordinate frame."""
    if not points:
        return False
    d = len(q)
    A = [[p[i] for p in points] for i in range(d)]
    A.append([ONE] * len(points))
    b = list(q) + [ONE]
    status, _, _ = _simplex_max(A, b, [ZERO] * len(points))
    return status == "optimal"


def hull_location(points, q) -> str:
    """Three-valued location of q relative to conv(points) within its
    affine hull: inside means relative interior."""
    if not points:
        return OUTSIDE
    d = len(q)
    npts = len(points)
    # columns: weights w_i >= 0 and slack t >= 0 with lambda_i = w_i + t
    A = []
    for i in range(d):
        row = [p[i] for p in points]
        s = ZERO
        for p in points:
            s = s + p[i]
        row.append(s)
        A.append(row)
    A.append([ONE] * npts + [GoldenScalar(npts)])
    b = list(q) + [ONE]
    c = [ZERO] * npts + [ONE]
    status, value, _ = _simplex_max(A, b, c)
    if status == "infeasible":
        return OUTSIDE
    if status != "optimal":  # pragma: no cover
        raise RuntimeError("hull location LP failed")
    return INSIDE if value.sign() > 0 else BOUNDARY


# -- zonotopes ----------------------------------------------------------------

@dataclass(frozen=True)
class Zonotope:
    """base + sum_i [0,1]*generator_i in an m-dimensional coordinate frame."""

    dim: int
    generators: tuple
    base: tuple

    def __post_init__(self):
        if any(len(g) != self.dim for g in self.generators):
            raise ValueError("generator dimension mismatch")
        if len(self.base) != self.dim:
            raise ValueError("base dimension mismatch")


@dataclass(frozen=True)
class HalfspaceRep:
    """Intersection of slabs lower <= <normal, x> <= upper (all tight)."""

    dim: int
    slabs: tuple  # of (normal tuple, lower, upper)

    def locate(self, p) -> str:
        if len(p) != self.dim:
            raise ValueError("dimension mismatch")
        on_boundary = False
        for normal, lo, hi in self.slabs:
            v = vec_dot(normal, p)
            if v < lo or v > hi:
                return OUTSIDE
            if v == lo or v == hi:
                on_boundary = True
        return BOUNDARY if on_boundary else INSIDE

    def translated(self, offset) -> "HalfspaceRep":
        slabs = []
        for normal, lo, hi in self.slabs:
            d = vec_dot(normal, offset)
            slabs.append((normal, lo + d, hi + d))
        return HalfspaceRep(self.dim, tuple(slabs))


def _canonical_normal(u):
    lead = next((x for x in u if not x.is_zero()), None)
    if lead is None:
        return None
    inv = lead.inverse()
    return tuple(x * inv for x in u)


def zonotope_facets(z: Zonotope) -> HalfspaceRep:
    """Tight halfspace representation from (m-1)-subsets of generators.

    Every facet of a zonotope is spanned by generators, so enumerating
    subset normals and taking support-function bounds is exact and tight.
    """
    m = z.dim
    gens = z.generators
    if m == 0:
        return HalfspaceRep(0, ())
    normals = set()
    if m == 1:
        normals.add((ONE,))
    else:
        for subset in combinations(range(len(gens)), m - 1):
            mat = GoldenMatrix([gens[i] for i in subset])
            kb = kernel_basis(mat)
            if len(kb) != 1:
                continue  # degenerate subset; facet found via another one
            u = _canonical_normal(kb[0])
            if u is not None:
                normals.add(u)
    if not normals:
        raise ValueError("generators do not span the ambient space")
    slabs = []
    for u in sorted(normals, key=lambda t: tuple((x.a, x.b) for x in t)):
        base_val = vec_dot(u, z.base)
        lo = base_val
        hi = base_val
        for g in gens:
            d = vec_dot(u, g)
            s = d.sign()
            if s > 0:
                hi = hi + d
            elif s < 0:
                lo = lo + d
        slabs.append((u, lo, hi))
    return HalfspaceRep(m, tuple(slabs))


def zonotope_contains(h: HalfspaceRep, p) -> str:
    return h.locate(p)


# -- atomic surfaces ----------------------------------------------------------

@dataclass(frozen=True)
class AtomicSurface:
    """Compact polytope in the internal space E', as exact extreme points.

    ``vertices`` are ambient k-vectors (lying inside E'); ``coords`` are
    the same points in an s-dimensional coordinate frame of E', used for
    membership tests.  ``dim`` is the affine dimension.
    """

    vertices: tuple
    coords: tuple
    dim: int

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    def vertex_set(self):
        return frozenset(self.vertices)


def affine_dimension(coords) -> int:
    if len(coords) <= 1:
        return 0
    diffs = [vec_sub(p, coords[0]) for p in coords[1:]]
    from .linalg import rank as _rank

    return _rank(GoldenMatrix(diffs))


def extreme_points(points):
    """Indices of the extreme points of an exact point set.

    A floating convex hull only suggests structure; every keep/drop
    decision carries an exact certificate.  Hull vertices are certified by
    a rationalized functional they uniquely maximize; interior points by
    exact barycentric weights in a containing simplex; anything that
    resists both certificates falls back to an exact LP.
    """
    pts = list(points)
    n = len(pts)
    if n <= 2:
        return list(range(n))
    dim = affine_dimension(pts)
    if dim == 0:
        return [0]
    if dim == 1:
        # endpoints of the segment along any coordinate that varies
        j = next(
            j for j in range(len(pts[0]))
            if any(p[j] != pts[0][j] for p in pts)
        )
        lo = min(range(n), key=lambda i: pts[i][j])
        hi = max(range(n), key=lambda i: pts[i][j])
        return sorted({lo, hi})
    aff = _affine_coords(pts, dim)
    if aff is not None:
        result = _certified_extremes(pts, aff, dim)
        if result is not None:
            return result
    return [
        i for i in range(n)
        if not in_convex_hull([pts[j] for j in range(n) if j != i], pts[i])
    ]


def _affine_coords(pts, dim):
    """Exact coordinates of each point in a basis of the affine hull."""
    from .linalg import invert, solve_affine

    base = pts[0]
    diffs = [vec_sub(p, base) for p in pts[1:]]
    rows = [list(d) for d in diffs]
    work = [list(d) for d in diffs]
    pivots = _affine_pivot_rows(work, len(pts[0]))
    if len(pivots) != dim:
        return None
    basis = [diffs[i] for i in pivots]
    B = GoldenMatrix(basis).transpose()  # ambient x dim
    bt = B.transpose()
    try:
        cmap = invert(bt @ B) @ bt
    except ValueError:
        return None
    return [cmap @ vec_sub(p, base) for p in pts]


def _affine_pivot_rows(rows, ncols):
    """Indices of a maximal independent subset of the given rows."""
    picked = []
    reduced = []
    for idx, row in enumerate(rows):
        r = list(row)
        for pr, pc in reduced:
            if not r[pc].is_zero():
                f = r[pc]
                r = [a - f * b for a, b in zip(r, pr)]
        lead = next((c for c in range(ncols) if not r[c].is_zero()), None)
        if lead is None:
            continue
        inv = r[lead].inverse()
        reduced.append(([e * inv for e in r], lead))
        picked.append(idx)
    return picked


def _rationalize(x: float, limit=10 ** 9) -> GoldenScalar:
    from fractions import Fraction

    return GoldenScalar.rational(*Fraction(x).limit_denominator(
        limit).as_integer_ratio())


def _certified_extremes(pts, aff, dim):
    """Certificate pipeline around a floating convex hull; exact answers
    only, ``None`` when scipy is unavailable or the input degenerates."""
    try:
        from scipy.spatial import ConvexHull, Delaunay, QhullError
    except ImportError:  # pragma: no cover
        return None
    n = len(pts)
    arr = np.array([[x.to_float() for x in p] for p in aff])
    try:
        hull = ConvexHull(arr)
    except (QhullError, ValueError):
        return None
    cand = sorted(set(int(i) for i in hull.vertices))
    cand_set = set(cand)
    # functional certificates: each vertex uniquely maximizes the sum of
    # its adjacent facet normals
    vertex_normals = {i: np.zeros(dim) for i in cand}
    for simplex, eq in zip(hull.simplices, hull.equations):
        for v in simplex:
            if int(v) in vertex_normals:
                vertex_normals[int(v)] += eq[:dim]
    keep = []
    for i in cand:
        u = vec(tuple(_rationalize(c) for c in vertex_normals[i]))
        vals = [vec_dot(u, a) for a in aff]
        best = vals[i]
        if all(j == i or vals[j] < best for j in range(n)):
            keep.append(i)
        else:
            others = [pts[j] for j in range(n) if j != i]
            if not in_convex_hull(others, pts[i]):
                keep.append(i)
    # interior certificates: exact barycentric weights in a Delaunay simplex
    non_cand = [i for i in range(n) if i not in cand_set]
    if non_cand:
        cand_arr = arr[cand]
        try:
            tri = Delaunay(cand_arr)
        except (QhullError, ValueError):
            tri = None
        for i in non_cand:
            if not _interior_certificate(aff, cand, tri, i):
                # could be a missed extreme point: decide exactly
                others = [pts[j] for j in range(n) if j != i]
                if not in_convex_hull(others, pts[i]):
                    keep.append(i)
    return sorted(keep)


def _interior_certificate(aff, cand, tri, i) -> bool:
    """Exact proof that aff[i] is a convex combination of candidates."""
    from .linalg import solve_affine

    if tri is None:
        return False
    q = np.array([x.to_float() for x in aff[i]])
    simplex = int(tri.find_simplex(q, tol=1e-9))
    if simplex < 0:
        return False
    verts = [cand[j] for j in tri.simplices[simplex]]
    dim = len(aff[i])
    mat = GoldenMatrix(
        [[aff[v][r] for v in verts] for r in range(dim)]
        + [[ONE] * len(verts)])
    sol, _ = solve_affine(mat, tuple(aff[i]) + (ONE,))
    if sol is None:
        return False
    return all(w.sign() >= 0 for w in sol)


class SliceSolver:
    """Vertex enumeration for cube slices {x in [0,1]^k + shift : P x = c}.

    The per-free-subset solvers depend only on the rational projector P, so
    one instance is shared across all coset offsets of a scheme.
    """

    _MARGIN = 1e-7

    def __init__(self, p_dprime: GoldenMatrix, shift):
        if not p_dprime.is_rational():
            raise ValueError("slice projector must be rational")
        self.p = p_dprime
        self.k = p_dprime.cols
        self.shift = vec(shift)
        from .linalg import rank as _rank

        self.d = _rank(p_dprime)
        self._solvers = None

    def _build_solvers(self):
        """One least-squares solver per full-rank free-coordinate subset.

        The float solvers only nominate candidate vertices; each candidate
        is confirmed by an exact solve before it counts.
        """
        from .linalg import rank as _rank

        pf = np.array(self.p.to_float())
        lo_f = np.array([x.to_float() for x in self.shift])
        solvers = []
        eye = np.eye(self.k)
        for free in combinations(range(self.k), self.d):
            sub = GoldenMatrix([[self.p[i, j] for j in free]
                                for i in range(self.k)])
            if _rank(sub) < self.d:
                continue  # no isolated vertex fixes exactly these coords
            fixed = tuple(j for j in range(self.k) if j not in free)
            subf = pf[:, list(free)]
            lsq = np.linalg.inv(subf.T @ subf) @ subf.T
            resid = subf @ lsq - eye
            bits = np.array(
                [[(m >> t) & 1 for t in range(len(fixed))]
                 for m in range(1 << len(fixed))], dtype=float)
            fixed_vals = lo_f[list(fixed)] + bits  # masks x nfixed
            rhs_shift = pf[:, list(fixed)] @ fixed_vals.T  # k x masks
            solvers.append((free, fixed, sub, lsq, resid, rhs_shift,
                            lo_f[list(free)]))
        self._solvers = solvers

    def vertices(self, offset_ambient):
        """All vertices of the slice at P x = offset, exact and deduped."""
        from .linalg import solve_affine

        if self.d == 0:
            raise ValueError("projector is zero; the slice is the whole cube")
        if self._solvers is None:
            self._build_solvers()
        c = vec(offset_ambient)
        c_f = np.array([x.to_float() for x in c])
        lo = list(self.shift)
        hi = [x + ONE for x in self.shift]
        cols = [self.p.col(j) for j in range(self.k)]
        eps = self._MARGIN
        out = set()
        seen_float = set()
        lo_f = np.array([x.to_float() for x in lo])
        for free, fixed, sub, lsq, resid, rhs_shift, lo_free in self._solvers:
            rhs_all = c_f[:, None] - rhs_shift  # k x masks
            sols = lsq @ rhs_all  # d x masks
            bad = np.abs(resid @ rhs_all).max(axis=0) > eps
            bad |= (sols < lo_free[:, None] - eps).any(axis=0)
            bad |= (sols > lo_free[:, None] + 1.0 + eps).any(axis=0)
            for mask in np.nonzero(~bad)[0]:
                # the same vertex shows up through many free subsets; a
                # rounded fingerprint skips repeat exact confirmations
                key = [0.0] * self.k
                for t, j in enumerate(free):
                    key[j] = sols[t, mask]
                for t, j in enumerate(fixed):
                    key[j] = lo_f[j] + ((int(mask) >> t) & 1)
                key = tuple(round(v * 1e6) for v in key)
                if key in seen_float:
                    continue
                seen_float.add(key)
                rhs = list(c)
                fixed_vals = []
                for t, j in enumerate(fixed):
                    xv = hi[j] if (mask >> t) & 1 else lo[j]
                    fixed_vals.append(xv)
                    if not xv.is_zero():
                        col = cols[j]
                        rhs = [r - xv * col[i] for i, r in enumerate(rhs)]
                sol, kernel = solve_affine(sub, rhs)
                if sol is None or kernel:
                    continue  # float candidate fails the exact system
                if any(x < lo[j] or x > hi[j]
                       for x, j in zip(sol, free)):
                    continue
                full = [None] * self.k
                for x, j in zip(sol, free):
                    full[j] = x
                for xv, j in zip(fixed_vals, fixed):
                    full[j] = xv
                out.add(tuple(full))
        return sorted(out, key=lambda p: tuple((x.a, x.b) for x in p))


def slice_and_project(slicer: SliceSolver, pi_prime: GoldenMatrix,
                      coord_map: GoldenMatrix, offset_ambient) -> AtomicSurface:
    """Atomic surface: project the slice's vertices into E' and keep the
    extreme points.  Empty surfaces are valid (slice misses the cube)."""
    cube_vertices = slicer.vertices(offset_ambient)
    if not cube_vertices:
        return AtomicSurface(vertices=(), coords=(), dim=-1)
    seen = {}
    for v in cube_vertices:
        amb = pi_prime @ v
        seen.setdefault(amb, coord_map @ v)
    ambient = list(seen.keys())
    coords = [seen[a] for a in ambient]
    keep = extreme_points(coords)
    ambient = [ambient[i] for i in keep]
    coords = [coords[i] for i in keep]
    order = sorted(range(len(ambient)),
                   key=lambda i: tuple((x.a, x.b) for x in ambient[i]))
    ambient = tuple(ambient[i] for i in order)
    coords = tuple(coords[i] for i in order)
    return AtomicSurface(
        vertices=ambient, coords=coords, dim=affine_dimension(coords)
    )


def surface_contains(s: AtomicSurface, p_coords, full_dim=None) -> str:
    """Exact three-valued membership of a point (in E' coordinates).

    ``inside`` means interior relative to E'; surfaces of deficient
    dimension have no interior, so membership degrades to boundary.
    """
    if s.is_empty:
        return OUTSIDE
    loc = hull_location(list(s.coords), vec(p_coords))
    if loc == INSIDE and full_dim is not None and s.dim < full_dim:
        return BOUNDARY
    return loc


def scale_surface(s: AtomicSurface, lam) -> AtomicSurface:
    lam = GoldenScalar.coerce(lam)
    return AtomicSurface(
        vertices=tuple(vec_scale(v, lam) for v in s.vertices),
        coords=tuple(vec_scale(v, lam) for v in s.coords),
        dim=s.dim if not lam.is_zero() else 0,
    )


def negate_surface(s: AtomicSurface) -> AtomicSurface:
    return scale_surface(s, GoldenScalar(-1))
