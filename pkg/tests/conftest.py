"""Shared, cached constructions. The large algebras are built once per session."""

from functools import lru_cache

import pytest

from lsa3.composition import composition_algebra
from lsa3.exactfield import GF, make_field
from lsa3.semisimplify import build_super_from_tensor
from lsa3.structurable import build_graded_lie
from lsa3.tensoralg import build_tensor

LETTERS = {"Phi": 0, "E": 1, "Q": 2, "O": 3}
# the eight shapes with skew elements, E x E' excluded
SHAPES = [("E", "Phi"), ("Q", "Phi"), ("O", "Phi"), ("Q", "E"), ("E", "O"), ("Q", "Q"), ("Q", "O"), ("O", "O")]


@lru_cache(maxsize=None)
def tensor(a, b, field="gf3"):
    F = make_field(field)
    return build_tensor(composition_algebra(F, [1] * LETTERS[a]), composition_algebra(F, [1] * LETTERS[b]))


@lru_cache(maxsize=None)
def graded(a, b, form="integral", field="gf3"):
    return build_graded_lie(tensor(a, b, field), form=form)


@lru_cache(maxsize=None)
def superalg(a, b, field="gf3", allow_excluded=False):
    return build_super_from_tensor(tensor(a, b, field), allow_excluded=allow_excluded, check=False)


@pytest.fixture(scope="session")
def F3():
    return GF(3)


@pytest.fixture(scope="session")
def build():
    """Access to the cached builders: ``build.tensor``, ``build.graded``, ``build.superalg``."""

    class _Builders:
        pass

    b = _Builders()
    b.tensor, b.graded, b.superalg = tensor, graded, superalg
    return b
