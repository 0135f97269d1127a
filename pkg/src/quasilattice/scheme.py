"""Superspace projectors and the reduction to a cut-and-project scheme.

From a cluster's Gram matrix we build the physical projector pi and its
Galois companions pi' and pi'' exactly, then split the superspace lattice
into finitely many cosets, each carrying a polytopal atomic surface in the
internal space E'.  Everything here is exact; floating point appears only
in the embedding cross-check against the cluster's stated coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .clusters import ClusterSpec
from .geometry import (
    AtomicSurface,
    HalfspaceRep,
    SliceSolver,
    Zonotope,
    extreme_points,
    slice_and_project,
    zonotope_facets,
)
from .goldfield import ONE, ZERO, GoldenScalar
from .linalg import (
    GoldenMatrix,
    IntegerLatticeBasis,
    hnf_with_transform,
    identity,
    image_lattice_basis,
    integer_kernel,
    invert,
    rank,
    vec,
    vec_add,
    vec_dot,
    _rref,
)


class SchemeError(ValueError):
    pass


class IdempotenceFailure(SchemeError):
    """rho^2 * gram is not a projector (representation not irreducible)."""


class ConjugateNotProjector(SchemeError):
    """The Galois conjugate of pi fails to be a projector orthogonal to pi."""


class RationalityFailure(SchemeError):
    """pi'' = I - pi - pi' has a nonzero sqrt5 part."""


@dataclass(frozen=True)
class ProjectorSet:
    cluster: ClusterSpec
    pi: GoldenMatrix
    pi_perp: GoldenMatrix
    pi_prime: GoldenMatrix
    pi_dprime: GoldenMatrix
    rho_sq: GoldenScalar
    kappa_sq: GoldenScalar
    dims: tuple  # (n, s, d) with n + s + d = k

    @property
    def k(self) -> int:
        return self.pi.rows


def _check_projector(p: GoldenMatrix, exc):
    if (p @ p) != p:
        raise exc
    if not p.is_symmetric():
        raise exc


def build_projectors(cluster: ClusterSpec) -> ProjectorSet:
    """Exact projectors onto physical space and its Galois companions.

    pi = rho^2 * gram with rho^2 = n / trace(gram); pi' is the entrywise
    sqrt5 -> -sqrt5 conjugate; pi'' is the rational remainder I - pi - pi'.
    All projector identities are verified exactly and failures carry a
    diagnosis of which structural assumption broke.
    """
    k = cluster.k
    rho_sq = cluster.rho_squared()
    pi = cluster.gram.scale(rho_sq)
    _check_projector(pi, IdempotenceFailure(
        "rho^2 * gram is not idempotent; the point group representation "
        "is not irreducible on physical space"))
    if pi.trace() != GoldenScalar(cluster.n):
        raise IdempotenceFailure("projector trace differs from the physical "
                                 "dimension")
    pi_prime = pi.conjugate()
    _check_projector(pi_prime, ConjugateNotProjector(
        "Galois conjugate of pi is not a projector"))
    if not (pi @ pi_prime).is_zero():
        raise ConjugateNotProjector("pi and its conjugate are not orthogonal")
    pi_dprime = identity(k) - pi - pi_prime
    if not pi_dprime.is_rational():
        raise RationalityFailure("I - pi - pi' has a nonzero sqrt5 part")
    _check_projector(pi_dprime, RationalityFailure(
        "I - pi - pi' is not a projector"))
    if not (pi @ pi_dprime).is_zero() or not (pi_prime @ pi_dprime).is_zero():
        raise RationalityFailure("pi'' is not orthogonal to pi and pi'")
    s = rank(pi_prime)
    d = rank(pi_dprime)
    if cluster.n + s + d != k:
        raise SchemeError("projector ranks do not partition the superspace")
    return ProjectorSet(
        cluster=cluster,
        pi=pi,
        pi_perp=pi_prime + pi_dprime,
        pi_prime=pi_prime,
        pi_dprime=pi_dprime,
        rho_sq=rho_sq,
        kappa_sq=rho_sq.inverse(),
        dims=(cluster.n, s, d),
    )


@dataclass(frozen=True)
class InvarianceReport:
    ok: bool
    failures: tuple  # of (generator name, projector name)


def check_invariance(cluster: ClusterSpec, projectors: ProjectorSet) -> InvarianceReport:
    """Verify g p = p g exactly for every generator and every projector."""
    failures = []
    named = (("pi", projectors.pi), ("pi_prime", projectors.pi_prime),
             ("pi_dprime", projectors.pi_dprime))
    for gname, g in sorted(cluster.generators.items()):
        gm = g.matrix()
        for pname, p in named:
            if (gm @ p) != (p @ gm):
                failures.append((gname, pname))
    return InvarianceReport(ok=not failures, failures=tuple(failures))


@dataclass(frozen=True)
class EmbeddingReport:
    ok: bool
    max_error: float


def check_embedding(cluster: ClusterSpec, projectors: ProjectorSet,
                    tol: float = 1e-9) -> EmbeddingReport:
    """Cross-check the exact projector against the floating coordinates.

    With A the n-by-k matrix whose columns are the cluster vectors, the
    physical isometry sends kappa * pi * eps_i to A eps_i; numerically this
    reduces to A pi = A together with A A^T = kappa^2 I.
    """
    A = np.array(cluster.embedding, dtype=float).T  # n x k
    pi_f = np.array(projectors.pi.to_float())
    kappa_sq = projectors.kappa_sq.to_float()
    err = float(np.max(np.abs(A @ pi_f - A)))
    err = max(err, float(np.max(np.abs(
        A @ A.T - kappa_sq * np.eye(A.shape[0])))))
    return EmbeddingReport(ok=err <= tol, max_error=err)


# -- subspace coordinate frames ----------------------------------------------

@dataclass(frozen=True)
class SubspaceFrame:
    """Exact coordinates on the column space of a projector.

    ``coord_map`` is an m-by-k matrix sending any ambient vector in the
    subspace to its coordinates; ``basis`` holds the k-by-m basis columns.
    """

    dim: int
    basis: GoldenMatrix
    coord_map: GoldenMatrix

    def coords(self, ambient_vec):
        return self.coord_map @ ambient_vec


def subspace_frame(p: GoldenMatrix) -> SubspaceFrame:
    rows = [list(r) for r in p.data]
    pivots = _rref(rows, p.cols)
    m = len(pivots)
    if m == 0:
        return SubspaceFrame(dim=0, basis=None, coord_map=None)
    basis = GoldenMatrix([[p[i, j] for j in pivots] for i in range(p.rows)])
    bt = basis.transpose()
    coord_map = invert(bt @ basis) @ bt
    return SubspaceFrame(dim=m, basis=basis, coord_map=coord_map)


# -- reduction ----------------------------------------------------------------

@dataclass(frozen=True)
class CosetSlice:
    z: tuple  # integer k-vector representative
    offset: tuple  # pi'' z, ambient exact k-vector
    surface: AtomicSurface
    has_interior: bool


@dataclass(frozen=True)
class ReducedScheme:
    projectors: ProjectorSet
    shift: tuple  # exact k-vector gamma
    calL: IntegerLatticeBasis  # (pi + pi')(Z^k)
    L: IntegerLatticeBasis  # integer kernel of pi''
    cosets: tuple  # of CosetSlice
    m: int  # cosets whose surface has nonempty interior
    prime_frame: SubspaceFrame
    dprime_frame: SubspaceFrame
    perp_frame: SubspaceFrame
    window: HalfspaceRep  # strip window K + perp(shift), in perp coords
    perp_coord_map: GoldenMatrix  # coords of pi_perp x directly from x
    prime_coord_map: GoldenMatrix  # coords of pi' x directly from x

    @property
    def cluster(self) -> ClusterSpec:
        return self.projectors.cluster


def _integer_offsets(pi_dprime, dframe, shift):
    """Offsets pi''(z), z integer, whose slice meets the shifted cube.

    Returns a list of (coords tuple, ambient offset, integer representative)
    sorted by lattice coefficients; exact throughout.
    """
    k = pi_dprime.cols
    d = dframe.dim
    if d == 0:
        return [((), tuple([ZERO] * k), tuple([0] * k))]
    cmap = dframe.coord_map @ pi_dprime  # coords of pi'' x from x
    gens = [cmap.col(j) for j in range(k)]
    base = cmap @ vec(shift)
    window = zonotope_facets(Zonotope(d, tuple(gens), tuple(base)))
    # lattice pi''(Z^k) in coords, with integer preimages for each basis row
    denom = 1
    for g in gens:
        for x in g:
            denom = _lcm(denom, int(x.a.denominator))
    int_gens = [tuple(int(x.a * denom) for x in g) for g in gens]
    echelon, transform, _ = hnf_with_transform(int_gens, ambient=d)
    basis_rows = [r for r in echelon if any(r)]
    preimages = [t for r, t in zip(echelon, transform) if any(r)]
    if len(basis_rows) != d:
        raise SchemeError("offset lattice does not span E''")
    lat = GoldenMatrix([[GoldenScalar.rational(x, denom) for x in r]
                        for r in basis_rows]).transpose()  # columns = basis
    lat_inv = invert(lat)
    # coefficient bounds from the support function of the window zonotope
    ranges = []
    for i in range(d):
        u = lat_inv.row(i)
        lo = vec_dot(u, base)
        hi = lo
        for g in gens:
            t = vec_dot(u, g)
            sg = t.sign()
            if sg > 0:
                hi = hi + t
            elif sg < 0:
                lo = lo + t
        ranges.append(range(_ceil(lo), _floor(hi) + 1))
    out = []
    for coeffs in product(*ranges):
        coords = [ZERO] * d
        for c, row in zip(coeffs, basis_rows):
            if c:
                for i in range(d):
                    coords[i] = coords[i] + GoldenScalar.rational(
                        c * row[i], denom)
        if window.locate(tuple(coords)) == "outside":
            continue
        z = [0] * k
        for c, pre in zip(coeffs, preimages):
            if c:
                for i in range(k):
                    z[i] += c * pre[i]
        offset = pi_dprime @ tuple(GoldenScalar(x) for x in z)
        out.append((coeffs, tuple(coords), offset, tuple(z)))
    out.sort(key=lambda item: item[0])
    return [(coords, offset, z) for _, coords, offset, z in out]


def _lcm(a, b):
    from math import gcd

    return a // gcd(a, b) * b


def _ceil(x: GoldenScalar) -> int:
    f = x.to_float()
    c = int(np.ceil(f - 1e-9))
    while GoldenScalar(c) < x:
        c += 1
    while GoldenScalar(c - 1) >= x:
        c -= 1
    return c


def _floor(x: GoldenScalar) -> int:
    f = x.to_float()
    c = int(np.floor(f + 1e-9))
    while GoldenScalar(c) > x:
        c -= 1
    while GoldenScalar(c + 1) <= x:
        c += 1
    return c


def _full_window_surface(projectors, pframe, shift):
    """Degenerate case E'' = {0}: the single atomic surface is all of K."""
    k = projectors.k
    pi_prime = projectors.pi_prime
    cmap = pframe.coord_map @ pi_prime
    seen = {}
    for corner in product((ZERO, ONE), repeat=k):
        v = vec_add(corner, shift)
        amb = pi_prime @ v
        seen.setdefault(amb, cmap @ v)
    ambient = list(seen.keys())
    coords = [seen[a] for a in ambient]
    keep = extreme_points(coords)
    ambient = [ambient[i] for i in keep]
    coords = [coords[i] for i in keep]
    order = sorted(range(len(ambient)),
                   key=lambda i: tuple((x.a, x.b) for x in ambient[i]))
    from .geometry import AtomicSurface as _AS
    from .geometry import affine_dimension

    ambient = tuple(ambient[i] for i in order)
    coords = tuple(coords[i] for i in order)
    return _AS(vertices=ambient, coords=coords,
               dim=affine_dimension(coords))


def reduce(projectors: ProjectorSet, shift=None,
           with_cosets: bool = True) -> ReducedScheme:
    """Split the superspace lattice into cosets with atomic surfaces.

    The physical-plus-internal lattice (pi + pi')(Z^k) is cut into cosets
    of the integer kernel of pi''; each coset's slice of the shifted unit
    cube projects via pi' to a polytope in E', the atomic surface used by
    the reduced point-selection test.

    ``with_cosets=False`` skips the coset/surface enumeration and returns
    only the lattices, frames and strip window; enough for the strip-test
    generators, and much cheaper for high-dimensional offset spaces.
    """
    k = projectors.k
    if shift is None:
        shift = tuple([ZERO] * k)
    shift = vec(tuple(GoldenScalar.coerce(x) for x in shift))
    if len(shift) != k:
        raise SchemeError("shift length mismatch")
    n, s, d = projectors.dims
    calL = image_lattice_basis(projectors.pi + projectors.pi_prime)
    L = integer_kernel(projectors.pi_dprime)
    pframe = subspace_frame(projectors.pi_prime)
    dframe = subspace_frame(projectors.pi_dprime)
    qframe = subspace_frame(projectors.pi_perp)
    prime_coord_map = pframe.coord_map @ projectors.pi_prime
    perp_coord_map = qframe.coord_map @ projectors.pi_perp
    # strip window K + pi_perp(shift) in perp coordinates
    eye = identity(k)
    perp_gens = [perp_coord_map @ eye.col(j) for j in range(k)]
    perp_base = perp_coord_map @ shift
    window = zonotope_facets(
        Zonotope(s + d, tuple(perp_gens), tuple(perp_base)))
    cosets = []
    if not with_cosets:
        pass
    elif d == 0:
        surface = _full_window_surface(projectors, pframe, shift)
        cosets.append(CosetSlice(
            z=tuple([0] * k), offset=tuple([ZERO] * k), surface=surface,
            has_interior=surface.dim == s))
    else:
        offsets = _integer_offsets(projectors.pi_dprime, dframe, shift)
        slicer = SliceSolver(projectors.pi_dprime, shift)
        for _, offset, z in offsets:
            surface = slice_and_project(
                slicer, projectors.pi_prime, prime_coord_map, offset)
            if surface.is_empty:
                continue
            cosets.append(CosetSlice(
                z=z, offset=offset, surface=surface,
                has_interior=surface.dim == s))
    m = sum(1 for c in cosets if c.has_interior)
    return ReducedScheme(
        projectors=projectors,
        shift=shift,
        calL=calL,
        L=L,
        cosets=tuple(cosets),
        m=m,
        prime_frame=pframe,
        dprime_frame=dframe,
        perp_frame=qframe,
        window=window,
        perp_coord_map=perp_coord_map,
        prime_coord_map=prime_coord_map,
    )
