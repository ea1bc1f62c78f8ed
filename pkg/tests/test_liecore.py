import json

import numpy as np
import pytest

from lsa3.exactfield import GF, make_field
from lsa3.liecore import (LieAlgebra, LieError, center, centroid, derived, grading_witness, ideal_closure,
                          is_simple, jacobi_check, jordan_type, quotient, reduce_mod_prime, sl2_algebra,
                          sl2_decomposition_check)
from lsa3.semisimplify import sl2_triple_from_v
from lsa3.structurable import default_v


def _mutate(L, i, j, k, delta=1):
    F = L.F
    C = L.C.copy()
    d = F.from_int(delta)
    C[i, j, k] = F.add(C[i, j, k], d)
    C[j, i, k] = F.sub(C[j, i, k], d)
    return LieAlgebra(F, C, grades=L.grades, parity=L.parity)


def _direct_sum(A, B):
    F = A.F
    n = A.n + B.n
    C = F.zeros((n, n, n))
    C[:A.n, :A.n, :A.n] = A.C
    C[A.n:, A.n:, A.n:] = B.C
    return LieAlgebra(F, C)


def test_sl2_passes_jacobi(F3):
    rep = jacobi_check(sl2_algebra(F3))
    assert rep.passed and rep.witness is None
    assert jacobi_check(sl2_algebra(make_field("q"))).passed


def test_mutation_caught_with_witness(build):
    L = build.graded("Q", "E")
    bad = _mutate(L, *next((i, j, k) for i, j, k, _ in L.sparse_items()))
    rep = jacobi_check(bad)
    assert not rep.passed
    assert len(rep.witness) == 3


def test_sampled_mode_is_deterministic(build):
    L = build.graded("Q", "Phi")
    a = jacobi_check(L, mode="sampled", count=500, seed=4)
    b = jacobi_check(L, mode="sampled", count=500, seed=4)
    assert a.passed and a.seed == 4 and a.to_json() == b.to_json()
    bad = _mutate(L, *next((i, j, k) for i, j, k, _ in L.sparse_items()))
    r1 = jacobi_check(bad, mode="sampled", count=20000, seed=1)
    r2 = jacobi_check(bad, mode="sampled", count=20000, seed=1)
    assert not r1.passed and r1.witness == r2.witness


def test_ideal_closure_of_zero_is_zero(F3):
    assert ideal_closure(sl2_algebra(F3), F3.zeros((1, 3))).dim == 0


def test_ideal_closure_in_simple_algebra_is_everything(build):
    L = build.graded("Q", "Phi")
    rng = np.random.default_rng(0)
    seed = L.F.random((1, L.n), rng)
    assert ideal_closure(L, seed).dim == L.n


def test_central_seed_gives_one_dim_ideal(build):
    L = build.graded("E", "Phi")
    Z = center(L)
    assert Z.shape[0] == 1
    assert ideal_closure(L, Z).dim == 1


def test_abelian_algebra(F3):
    L = LieAlgebra(F3, F3.zeros((2, 2, 2)))
    assert center(L).shape[0] == 2
    assert derived(L).shape[0] == 0
    assert not is_simple(L).simple


def test_sl2_is_simple_and_perfect(F3):
    L = sl2_algebra(F3)
    assert is_simple(L).simple
    assert derived(L).shape[0] == 3
    assert center(L).shape[0] == 0


def test_direct_sum_is_not_simple(F3):
    L = _direct_sum(sl2_algebra(F3), sl2_algebra(F3))
    rep = is_simple(L)
    assert not rep.simple and rep.witness_dim == 3


@pytest.mark.parametrize("a,b,zdim", [("E", "O", 1), ("O", "O", 0)])
def test_center_and_simplicity_of_large_shapes(build, a, b, zdim):
    L = build.graded(a, b)
    Z = center(L)
    assert Z.shape[0] == zdim
    if zdim:
        Q, _ = quotient(L, Z)
        assert is_simple(Q).simple
    else:
        assert is_simple(L).simple


def test_jordan_type_basics(F3):
    assert jordan_type(F3, F3.zeros((4, 4))) == [(1, 4)]
    f = F3.zeros((3, 3))
    f[0, 1] = f[1, 2] = F3.one
    assert jordan_type(F3, f) == [(3, 1)]
    with pytest.raises(LieError):
        jordan_type(F3, F3.eye(2))


def test_sl2_decomposition_of_sl2(F3):
    L = sl2_algebra(F3)
    rep = sl2_decomposition_check(L, L.basis_vec(0), L.basis_vec(1), L.basis_vec(2))
    assert rep["jordan_type"] == [[3, 1]]
    # weights 2, 0, -2 read mod 3
    assert rep["weights"] == {"0": 1, "1": 1, "2": 1}
    assert rep["consistent"]


def test_sl2_decomposition_rejects_bad_triple(F3):
    L = sl2_algebra(F3)
    with pytest.raises(LieError):
        sl2_decomposition_check(L, L.basis_vec(0), L.basis_vec(0), L.basis_vec(2))


@pytest.mark.slow
def test_ad_unit_on_octonion_square(build):
    T = build.tensor("O", "O")
    L = build.graded("O", "O")
    e, h, f = sl2_triple_from_v(L, default_v(T))
    rep = sl2_decomposition_check(L, e, h, f)
    assert rep["jordan_type"] == [[3, 14], [2, 64], [1, 78]]
    assert rep["consistent"]


def test_ad_unit_on_small_shape(build):
    T = build.tensor("Q", "E")
    L = build.graded("Q", "E")
    e, h, f = sl2_triple_from_v(L, default_v(T))
    # dim J = dim S = 3 + 1, dim M = dim A = 8, rest 35 - 12 - 16
    assert sl2_decomposition_check(L, e, h, f)["jordan_type"] == [[3, 4], [2, 8], [1, 7]]


def test_grading_witness(build):
    L = build.graded("Q", "Phi")
    assert grading_witness(L) is None
    i, j, k, _ = next(L.sparse_items())
    bad = LieAlgebra(L.F, L.C, grades=[g + (5 if t == k else 0) for t, g in enumerate(L.grades)])
    assert grading_witness(bad) is not None


def test_rational_simplicity_through_reduction():
    Q = make_field("q")
    L = sl2_algebra(Q)
    Lq = reduce_mod_prime(L)
    assert Lq.F == GF(7)
    assert is_simple(L).method.startswith("reduction")


def test_rational_non_simplicity_through_centroid():
    Q = make_field("q")
    L = _direct_sum(sl2_algebra(Q), sl2_algebra(Q))
    assert centroid(L).shape[0] == 2
    rep = is_simple(L)
    assert not rep.simple and rep.witness_dim == 3


def test_dump_round_trip(build):
    L = build.graded("Q", "Phi")
    L2 = LieAlgebra.loads(L.dumps())
    assert L2.n == L.n and L.F.equal(L2.C, L.C) and L2.grades == L.grades
    S = build.superalg("Q", "Phi")
    S2 = LieAlgebra.loads(S.dumps())
    assert S.F.equal(S2.C, S.C) and list(S2.parity) == list(S.parity)


def test_bad_dump_rejected(F3):
    with pytest.raises(LieError):
        LieAlgebra.loads("")
    header = json.dumps({"kind": "lie", "dim": 2, "field": F3.spec.to_json()})
    with pytest.raises(LieError):
        LieAlgebra.loads(header + "\n0 5 1 1\n")
