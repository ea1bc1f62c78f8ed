import itertools

import numpy as np
import pytest

from lsa3.composition import (CompositionAlgebra, CompositionError, algebra_from_json, cayley_dickson_double,
                              composition_algebra, conjugate, ground_algebra, norm, polar_norm, skew_basis)
from lsa3.exactfield import GF, QQ


@pytest.fixture(scope="module")
def F():
    return GF(3)


def test_split_binarions_norm(F):
    E = cayley_dickson_double(ground_algebra(F), 1)
    assert E.dim == 2
    for a, b in itertools.product(range(3), repeat=2):
        x = E.element([a, b])
        assert norm(x) == F(a * a - b * b)
    assert norm(E.element([1, 1])) == F(0)


def test_split_quaternions_multiplicative_on_all_pairs(F):
    Q = composition_algebra(F, [1, 1])
    pts = np.array(list(itertools.product(range(3), repeat=4)), dtype=np.int64)
    X = np.repeat(pts, len(pts), axis=0)
    Y = np.tile(pts, (len(pts), 1))
    assert F.equal(Q.norm(Q.mul(X, Y)), F.mul(Q.norm(X), Q.norm(Y)))
    assert Q.is_associative()


def test_octonions_alternative_not_associative(F):
    O = composition_algebra(F, [1, 1, 1])
    assert O.dim == 8
    assert not O.is_associative()
    O.check_invariants(np.random.default_rng(3), samples=10_000)


def test_conjugation_examples(F):
    Q = composition_algebra(F, [1, 1])
    assert conjugate(Q.one()) == Q.one()
    for s in skew_basis(Q):
        assert conjugate(s) == -s
    x = Q.element([1, 2, 1, 2])
    assert conjugate(x) == Q.element([1, 1, 2, 1])


def test_norm_examples(F):
    O = composition_algebra(F, [1, 1, 1])
    assert norm(O.one()) == F(1)
    for s in skew_basis(O):
        assert polar_norm(s, s) == 2 * norm(s)


@pytest.mark.parametrize("k,size", [(0, 0), (1, 1), (2, 3), (3, 7)])
def test_skew_basis_sizes(F, k, size):
    assert len(skew_basis(composition_algebra(F, [1] * k))) == size


def test_moufang_style_identities_on_random_triples(F):
    O = composition_algebra(F, [1, 1, 1])
    rng = np.random.default_rng(4)
    x, y, z = (O.random_vectors(500, rng) for _ in range(3))
    # x (xbar y) = N(x) y
    assert F.equal(O.mul(x, O.mul(O.bar(x), y)), F.mul(O.norm(x)[:, None], y))
    # x (ybar z) + y (xbar z) = N(x, y) z
    lhs = F.add(O.mul(x, O.mul(O.bar(y), z)), O.mul(y, O.mul(O.bar(x), z)))
    assert F.equal(lhs, F.mul(O.polar(x, y)[:, None], z))
    # conjugation reverses products
    assert F.equal(O.bar(O.mul(x, y)), O.mul(O.bar(y), O.bar(x)))


def test_skew_squares_are_scalars(F):
    O = composition_algebra(F, [1, 1, 1])
    for s in skew_basis(O):
        sq = s * s
        assert sq == O.one() * (-norm(s))


def test_nonsplit_binarions_over_gf3():
    F = GF(3)
    E = composition_algebra(F, [2])  # 2 is a non-square
    nonzero = [E.element([a, b]) for a, b in itertools.product(range(3), repeat=2) if (a, b) != (0, 0)]
    assert all(norm(x) != F(0) for x in nonzero)


def test_doubling_octonions_rejected(F):
    with pytest.raises(CompositionError):
        cayley_dickson_double(composition_algebra(F, [1, 1, 1]), 1)


def test_zero_parameter_rejected(F):
    with pytest.raises(CompositionError):
        cayley_dickson_double(ground_algebra(F), 0)


def test_broken_involution_rejected(F):
    E = composition_algebra(F, [1])
    with pytest.raises(CompositionError):
        CompositionAlgebra(F, E.mult, F.eye(2))


def test_json_spec_and_rationals():
    A = algebra_from_json({"base": {"kind": "q"}, "doublings": ["1", "-1"]})
    assert A.dim == 4 and A.ring == QQ()
    B = algebra_from_json(A.spec_json())
    assert A.ring.equal(A.mult, B.mult)


def test_integer_lift(F):
    O = composition_algebra(F, [1, 1, 1])
    Z = O.lift()
    assert Z is not None and Z.dim == 8
    assert np.array_equal(F.from_int(Z.mult), O.mult)
