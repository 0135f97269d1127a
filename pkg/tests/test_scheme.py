"""Projector construction and the cut-and-project reduction."""
from __future__ import annotations

from fractions import Fraction

import pytest

from quasilattice.clusters import CATALOG_NAMES, catalog
from quasilattice.goldfield import GoldenScalar, ZERO, golden
from quasilattice.linalg import GoldenMatrix, lattice_index
from quasilattice.scheme import (
    build_projectors,
    check_embedding,
    check_invariance,
    reduce as reduce_scheme,
)

TAU = golden(Fraction(1, 2), Fraction(1, 2))
TAU_P = golden(Fraction(1, 2), Fraction(-1, 2))
Z = ZERO


def load(name):
    if name == "two_shell":
        return catalog(name, 1, 1)
    return catalog(name)


def assert_matrix_equal(m, expected):
    k = len(expected)
    for i in range(k):
        for j in range(k):
            assert m.data[i][j] == expected[i][j], (i, j)


def circulant5(a, b, g):
    vals = {0: a, 1: b, 2: g, 3: g, 4: b}
    return [[vals[(i - j) % 5] for j in range(5)] for i in range(5)]


ICOSA_SIGNS = [
    [0, 1, 1, 1, 1, 1],
    [1, 0, 1, -1, -1, 1],
    [1, 1, 0, 1, -1, -1],
    [1, -1, 1, 0, 1, -1],
    [1, -1, -1, 1, 0, 1],
    [1, 1, -1, -1, 1, 0],
]


def icosa_matrix(a, b):
    return [
        [a if i == j else (b if ICOSA_SIGNS[i][j] == 1 else Z - b) for j in range(6)]
        for i in range(6)
    ]


DODECA_PATTERN = [
    "a b g g b g b g -g -g",
    "b a b g g -g g b g -g",
    "g b a b g -g -g g b g",
    "g g b a b g -g -g g b",
    "b g g b a b g -g -g g",
    "g -g -g g b a g -b -b g",
    "b g -g -g g g a g -b -b",
    "g b g -g -g -b g a g -b",
    "-g g b g -g -b -b g a g",
    "-g -g g b g g -b -b g a",
]


def dodeca_matrix(a, b, g):
    table = {"a": a, "b": b, "-b": Z - b, "g": g, "-g": Z - g}
    return [[table[tok] for tok in row.split()] for row in DODECA_PATTERN]


class TestKnownProjectorMatrices:
    """The planar, icosahedral and dodecahedral projectors, entry by entry."""

    def test_decagon(self, decagon_projectors):
        fifth = golden(Fraction(1, 5))
        ps = decagon_projectors
        assert_matrix_equal(
            ps.pi, circulant5(golden(Fraction(2, 5)), Z - TAU_P * fifth, Z - TAU * fifth)
        )
        assert_matrix_equal(
            ps.pi_perp, circulant5(golden(Fraction(3, 5)), TAU_P * fifth, TAU * fifth)
        )
        assert_matrix_equal(
            ps.pi_prime,
            circulant5(golden(Fraction(2, 5)), Z - TAU * fifth, Z - TAU_P * fifth),
        )
        assert_matrix_equal(ps.pi_dprime, circulant5(fifth, fifth, fifth))

    def test_icosahedron(self, icosahedron_projectors):
        half = golden(Fraction(1, 2))
        s5_10 = golden(0, Fraction(1, 10))
        ps = icosahedron_projectors
        assert_matrix_equal(ps.pi, icosa_matrix(half, s5_10))
        assert_matrix_equal(ps.pi_perp, icosa_matrix(half, Z - s5_10))

    def test_dodecahedron(self, dodecahedron_projectors):
        s5_10 = golden(0, Fraction(1, 10))
        tenth = golden(Fraction(1, 10))
        ps = dodecahedron_projectors
        assert_matrix_equal(ps.pi, dodeca_matrix(golden(Fraction(3, 10)), s5_10, tenth))
        assert_matrix_equal(
            ps.pi_perp,
            dodeca_matrix(golden(Fraction(7, 10)), Z - s5_10, Z - tenth),
        )
        assert_matrix_equal(
            ps.pi_prime,
            dodeca_matrix(golden(Fraction(3, 10)), Z - s5_10, tenth),
        )
        assert_matrix_equal(
            ps.pi_dprime,
            dodeca_matrix(golden(Fraction(2, 5)), Z, Z - golden(Fraction(1, 5))),
        )


@pytest.mark.parametrize("name", CATALOG_NAMES)
class TestProjectorAlgebra:
    def _ps(self, name):
        return build_projectors(load(name))

    def test_idempotent_symmetric(self, name):
        ps = self._ps(name)
        for p in (ps.pi, ps.pi_prime, ps.pi_dprime, ps.pi_perp):
            sq = p @ p
            assert all(
                sq.data[i][j] == p.data[i][j]
                for i in range(len(p.data))
                for j in range(len(p.data))
            )
            assert p.is_symmetric()

    def test_partition_of_identity(self, name):
        ps = self._ps(name)
        k = len(ps.pi.data)
        ident = GoldenMatrix.identity(k)
        for i in range(k):
            for j in range(k):
                total = ps.pi.data[i][j] + ps.pi_prime.data[i][j] + ps.pi_dprime.data[i][j]
                assert total == ident.data[i][j]
                perp = ps.pi_prime.data[i][j] + ps.pi_dprime.data[i][j]
                assert perp == ps.pi_perp.data[i][j]

    def test_pairwise_orthogonal(self, name):
        ps = self._ps(name)
        k = len(ps.pi.data)
        for a, b in (
            (ps.pi, ps.pi_prime),
            (ps.pi, ps.pi_dprime),
            (ps.pi_prime, ps.pi_dprime),
        ):
            prod = a @ b
            assert all(prod.data[i][j].is_zero() for i in range(k) for j in range(k))

    def test_trace_and_galois(self, name):
        ps = self._ps(name)
        spec = ps.cluster
        assert ps.pi.trace() == GoldenScalar.coerce(spec.n)
        conj = ps.pi.conjugate()
        k = spec.k
        assert all(
            conj.data[i][j] == ps.pi_prime.data[i][j]
            for i in range(k)
            for j in range(k)
        )
        assert ps.pi_dprime.is_rational()

    def test_generator_commutation(self, name):
        ps = self._ps(name)
        report = check_invariance(ps.cluster, ps)
        assert report.ok, report.failures

    def test_embedding(self, name):
        ps = self._ps(name)
        report = check_embedding(ps.cluster, ps)
        assert report.ok and report.max_error < 1e-9


class TestDecagonReduction:
    def test_physical_superspace_lattice(self, decagon_reduced_zero):
        # The rank-4 lattice spanned by e_i - (1/5)(1,...,1), i = 1..4: mutual
        # containment with the computed lattice at unit edge scale.
        calL = decagon_reduced_zero.calL
        assert calL.rank == 4
        d = calL.denominator
        for i in range(4):
            w = [d * (5 * (1 if j == i else 0) - 1) for j in range(5)]
            assert d % 5 == 0 or all(x % 5 == 0 for x in w)
            w = [x // 5 for x in [(d * (5 * (1 if j == i else 0) - 1)) for j in range(5)]]
            assert calL.contains_integer_vector(w)

    def test_internal_lattice_is_sum_zero(self, decagon_reduced_zero):
        L = decagon_reduced_zero.L
        assert L.rank == 4
        assert L.denominator == 1
        for row in L.basis:
            assert sum(row) == 0
        assert L.contains_integer_vector([1, -1, 0, 0, 0])
        assert not L.contains_integer_vector([1, 0, 0, 0, 0])

    def test_index_five(self, decagon_reduced_zero):
        red = decagon_reduced_zero
        assert lattice_index(red.L, red.calL) == 5

    def test_six_slices_four_with_interior(self, decagon_reduced_zero):
        red = decagon_reduced_zero
        assert len(red.cosets) == 6
        assert red.m == 4
        interiors = [c.has_interior for c in red.cosets]
        assert interiors == [False, True, True, True, True, False]

    def test_pentagon_vertices(self, decagon_reduced_zero):
        fifth = golden(Fraction(1, 5))
        two_fifth = golden(Fraction(2, 5))
        mt = Z - TAU * fifth
        mtp = Z - TAU_P * fifth
        expected = set()
        base = [two_fifth, mt, mtp, mtp, mt]
        for r in range(5):
            expected.add(tuple(base[(j - r) % 5] for j in range(5)))
        surface = decagon_reduced_zero.cosets[1].surface
        assert set(surface.vertices) == expected
        assert surface.dim == 2

    def test_scaled_copies(self, decagon_reduced_zero):
        cosets = decagon_reduced_zero.cosets
        k1 = set(cosets[1].surface.vertices)
        neg = lambda vs: {tuple(Z - x for x in v) for v in vs}
        scale = lambda vs, s: {tuple(s * x for x in v) for v in vs}
        assert set(cosets[2].surface.vertices) == neg(scale(k1, TAU))
        assert set(cosets[3].surface.vertices) == scale(k1, TAU)
        assert set(cosets[4].surface.vertices) == neg(k1)


class TestIcosahedralDegeneration:
    def test_model_set_case(self, icosahedron_projectors):
        red = reduce_scheme(icosahedron_projectors)
        # No third summand: the internal projector vanishes, the reduction
        # keeps the whole hypercubic lattice and a single coset.
        assert icosahedron_projectors.dims == (3, 3, 0)
        assert all(x.is_zero() for row in icosahedron_projectors.pi_dprime.data for x in row)
        assert len(red.cosets) == 1
        assert red.dprime_frame is None or red.dprime_frame.dim == 0
        assert red.calL.rank == 6
        assert red.calL.denominator == 1
        expected = [[1 if i == j else 0 for j in range(6)] for i in range(6)]
        assert [list(r) for r in red.calL.basis] == expected
        # The single atomic surface is the full acceptance window: the
        # projection of the 6-cube, a 30-faceted zonotope with 32 vertices.
        assert len(red.cosets[0].surface.vertices) == 32


class TestReductionShifts:
    def test_generic_shift_has_no_corner_slices(self, decagon_reduced_generic):
        # At a generic shift every nonempty slice has interior.
        red = decagon_reduced_generic
        assert all(c.has_interior for c in red.cosets)
        assert red.m == len(red.cosets)

    def test_light_reduction_skips_cosets(self, icosahedron_projectors):
        red = reduce_scheme(icosahedron_projectors, with_cosets=False)
        assert red.cosets == ()
        assert red.window is not None
