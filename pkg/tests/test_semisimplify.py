import numpy as np
import pytest

from lsa3.exactfield import make_field
from lsa3.liecore import LieAlgebra, jacobi_check, sl2_algebra
from lsa3.linalg import inverse, rank
from lsa3.semisimplify import (Alpha3Object, SemisimplifyError, SuperVectorSpace, braiding_sign_check,
                               build_super_from_tensor, decompose_object, direct_sum, even_part_invariants,
                               sl2_triple_from_v, ss_lie, ss_object, super_is_simple, super_jacobi_check,
                               super_label, tensor_object)
from lsa3.structurable import default_v

from conftest import SHAPES, tensor


def _osp12(F):
    """``osp(1|2)`` on ``(e, h, f | x, y)``."""
    C = F.zeros((5, 5, 5))

    def put(i, j, k, c, sym=False):
        C[i, j, k] = F.from_int(c)
        C[j, i, k] = F.from_int(c if sym else -c)

    e, h, f, x, y = range(5)
    put(h, e, e, 2)
    put(h, f, f, -2)
    put(e, f, h, 1)
    put(h, x, x, 1)
    put(h, y, y, -1)
    put(e, y, x, 1)
    put(f, x, y, 1)
    put(x, x, e, 2, sym=True)
    put(y, y, f, -2, sym=True)
    put(x, y, h, -1, sym=True)
    return LieAlgebra(F, C, parity=[0, 0, 0, 1, 1], name="osp(1|2)")


def _random_object(F, rng, blocks):
    o = direct_sum(*(Alpha3Object.block(F, s) for s in blocks))
    while True:
        P = F.random((o.dim, o.dim), rng)
        if rank(F, P) == o.dim:
            break
    return Alpha3Object(F, F.matmul(F.matmul(P, o.f), inverse(F, P)))


def test_decompose_basic_objects(F3):
    assert decompose_object(Alpha3Object(F3, F3.zeros((5, 5)))) == (5, 0, 0)
    assert decompose_object(Alpha3Object.block(F3, 2)) == (0, 1, 0)
    pair = tensor_object(Alpha3Object.block(F3, 2), Alpha3Object.block(F3, 2))
    assert decompose_object(pair) == (1, 0, 1)


def test_ss_object(F3):
    assert ss_object(Alpha3Object(F3, F3.zeros((5, 5)))) == SuperVectorSpace(5, 0)
    assert ss_object(Alpha3Object.block(F3, 2)) == SuperVectorSpace(0, 1)
    pair = tensor_object(Alpha3Object.block(F3, 2), Alpha3Object.block(F3, 2))
    assert ss_object(pair) == SuperVectorSpace(1, 0)
    assert ss_object(Alpha3Object.block(F3, 3)) == SuperVectorSpace(0, 0)


def test_object_needs_cube_zero(F3):
    with pytest.raises(SemisimplifyError):
        Alpha3Object(F3, F3.eye(2))
    with pytest.raises(SemisimplifyError):
        SuperVectorSpace(-1, 0)


def test_ss_object_is_additive(F3):
    rng = np.random.default_rng(8)
    for _ in range(100):
        a = _random_object(F3, rng, rng.integers(1, 4, size=rng.integers(1, 4)).tolist())
        b = _random_object(F3, rng, rng.integers(1, 4, size=rng.integers(1, 4)).tolist())
        assert ss_object(direct_sum(a, b)) == ss_object(a) + ss_object(b)


def test_braiding_signs(F3):
    sign, jt = braiding_sign_check(F3, 2, 2)
    assert sign == -1 and jt == [(3, 1), (1, 1)]
    assert braiding_sign_check(F3, 1, 1)[0] == 1
    assert braiding_sign_check(F3, 1, 2)[0] == 1


def test_osp12_passes_super_jacobi(F3):
    S = _osp12(F3)
    assert super_jacobi_check(S).passed
    assert super_is_simple(S)
    assert super_jacobi_check(_osp12(make_field("q"))).passed


def test_two_copies_of_osp12_not_simple(F3):
    A = _osp12(F3)
    C = F3.zeros((10, 10, 10))
    C[:5, :5, :5] = A.C
    C[5:, 5:, 5:] = A.C
    S = LieAlgebra(F3, C, parity=list(A.parity) * 2)
    assert super_jacobi_check(S).passed
    assert not super_is_simple(S)


def test_odd_odd_mutation_caught(build, F3):
    S = build.superalg("Q", "E")
    ne, _ = S.superdim
    i, j, k = next((i, j, k) for i, j, k, _ in S.sparse_items() if i >= ne and j >= ne)
    C = S.C.copy()
    C[i, j, k] = F3.add(C[i, j, k], F3.one)
    C[j, i, k] = C[i, j, k]
    rep = super_jacobi_check(LieAlgebra(F3, C, parity=S.parity))
    assert not rep.passed and len(rep.witness) == 3


def test_psl11_case_not_simple(build):
    S = build.superalg("E", "Phi")
    assert tuple(S.superdim) == (0, 2)
    assert not super_is_simple(S)


@pytest.mark.parametrize("a,b", SHAPES[:5])
def test_even_dim_formula(build, a, b):
    # the formula counts the algebra without its characteristic-3 center
    T = build.tensor(a, b)
    L = build.graded(a, b, "image")
    S = build.superalg(a, b)
    assert S.superdim[0] == L.n - 2 * T.dim - 3 * T.dim_S


@pytest.mark.parametrize("a,b", [("Q", "Phi"), ("O", "Phi"), ("Q", "E"), ("Q", "Q")])
def test_two_routes_agree(build, a, b):
    T = build.tensor(a, b)
    L = build.graded(a, b, "image")
    e, h, f = sl2_triple_from_v(L, default_v(T))
    S1 = ss_lie(L, e, h, f)
    S2 = build.superalg(a, b)
    assert jacobi_check(S2).passed
    assert even_part_invariants(S1) == even_part_invariants(S2)


def test_labels(build):
    assert super_label(build.superalg("Q", "Phi")) == "osp(2,2)-consistent"
    assert super_label(build.superalg("O", "Phi")) == "psl(4,1)-consistent"


def test_rejections(F3):
    with pytest.raises(SemisimplifyError):
        build_super_from_tensor(tensor("Q", "E", "q"))
    with pytest.raises(SemisimplifyError):
        build_super_from_tensor(tensor("E", "E"))
    with pytest.raises(SemisimplifyError):
        build_super_from_tensor(tensor("Phi", "Phi"))


def test_ss_lie_needs_characteristic_three():
    L = sl2_algebra(make_field("q"))
    with pytest.raises(SemisimplifyError):
        ss_lie(L, L.basis_vec(0), L.basis_vec(1), L.basis_vec(2))


def test_ss_lie_of_sl2(F3):
    L = sl2_algebra(F3)
    S = ss_lie(L, L.basis_vec(0), L.basis_vec(1), L.basis_vec(2))
    # sl2 is one size-3 block
    assert tuple(S.superdim) == (0, 0)
