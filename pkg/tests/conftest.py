"""Shared fixtures.

Reductions are expensive (the dodecahedron takes ~20 s), so everything the
suite reuses is cached once per session here.
"""
from __future__ import annotations

import pytest

from quasilattice import (
    build_projectors,
    catalog,
    generic_shift,
    reduce as reduce_scheme,
)


@pytest.fixture(scope="session")
def decagon_projectors():
    return build_projectors(catalog("decagon"))


@pytest.fixture(scope="session")
def icosahedron_projectors():
    return build_projectors(catalog("icosahedron"))


@pytest.fixture(scope="session")
def dodecahedron_projectors():
    return build_projectors(catalog("dodecahedron"))


@pytest.fixture(scope="session")
def decagon_reduced_zero(decagon_projectors):
    return reduce_scheme(decagon_projectors)


@pytest.fixture(scope="session")
def decagon_reduced_generic(decagon_projectors):
    return reduce_scheme(decagon_projectors, generic_shift(5))


@pytest.fixture(scope="session")
def icosahedron_reduced_generic(icosahedron_projectors):
    return reduce_scheme(icosahedron_projectors, generic_shift(6))


@pytest.fixture(scope="session")
def dodecahedron_reduced_generic(dodecahedron_projectors):
    return reduce_scheme(dodecahedron_projectors, generic_shift(10))
