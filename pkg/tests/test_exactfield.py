from fractions import Fraction

import numpy as np
import pytest

from lsa3.exactfield import GF, QQ, FieldError, FieldSpec, make_field


def test_gf3_basics():
    F = GF(3)
    assert F.order == 3 and F.characteristic == 3
    assert F(2) + F(2) == F(1)
    assert F(2).inv() == F(2)
    assert -F(1) == F(2)


def test_gf9_default_modulus_squares_t_to_minus_one():
    F = make_field("gf9")
    assert F.order == 9
    assert list(F.spec.modulus) == [1, 0, 1]
    t = F.element(3)
    assert t * t == F(2)


def test_rationals():
    F = QQ()
    assert F.characteristic == 0
    half = F(Fraction(1, 2))
    assert half * 2 == F(1)
    assert F(Fraction(2, 4)).value == Fraction(1, 2)


@pytest.mark.parametrize("name", ["gf3", "gf9", "gf27", "gf5"])
def test_frobenius_fixes_every_element(name):
    F = make_field(name)
    for a in F.elements():
        x = F.element(a)
        assert x ** F.order == x


@pytest.mark.parametrize("name", ["gf3", "gf9", "q"])
def test_ring_axioms_on_random_triples(name):
    F = make_field(name)
    rng = np.random.default_rng(0)
    a, b, c = (F.random(10_000, rng) for _ in range(3))
    assert F.equal(F.add(a, b), F.add(b, a))
    assert F.equal(F.mul(a, b), F.mul(b, a))
    assert F.equal(F.add(F.add(a, b), c), F.add(a, F.add(b, c)))
    assert F.equal(F.mul(F.mul(a, b), c), F.mul(a, F.mul(b, c)))
    assert F.equal(F.mul(a, F.add(b, c)), F.add(F.mul(a, b), F.mul(a, c)))


def test_inverses_in_gf9():
    F = GF(3, 2)
    for a in range(1, 9):
        assert F.mul(a, F.inv(a)) == 1


def test_matmul_matches_elementwise_sum():
    F = GF(3, 2)
    rng = np.random.default_rng(1)
    A, B = F.random((4, 5), rng), F.random((5, 3), rng)
    want = F.zeros((4, 3))
    for i in range(4):
        for j in range(3):
            acc = F.zero
            for k in range(5):
                acc = F.add(acc, F.mul(A[i, k], B[k, j]))
            want[i, j] = acc
    assert F.equal(F.matmul(A, B), want)


def test_reducible_modulus_rejected():
    with pytest.raises(FieldError):
        GF(3, 2, modulus=(2, 0, 1))  # t^2 - 1
    with pytest.raises(FieldError):
        GF(4)


def test_spec_round_trip_and_parse():
    spec = FieldSpec.parse("gf9")
    assert FieldSpec.from_json(spec.to_json()) == spec
    assert FieldSpec.parse("q").kind == "q"
    with pytest.raises(FieldError):
        FieldSpec.parse("gf6")


def test_scalar_format_round_trip():
    for F in (GF(3), GF(3, 2), QQ()):
        rng = np.random.default_rng(2)
        for a in np.ravel(F.random(20, rng)):
            assert F.parse_scalar(F.fmt(a)) == a
