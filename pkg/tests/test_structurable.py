import numpy as np
import pytest

from lsa3.liecore import center
from lsa3.linalg import Subspace, rank
from lsa3.structurable import (InnerStructureAlgebra, StructurableError, decompose_D0, default_v, delta_closed,
                               epsilon_closed, span_D0, v_matrix, v_op)
from lsa3.tensoralg import perp_form

from conftest import SHAPES


def _rand(T, rng, count=None):
    return T.ring.random((count, T.dim) if count else T.dim, rng)


def test_v_one_one(build, F3):
    T = build.tensor("Q", "E")
    V = v_op(T, T.one_vec(), T.one_vec()).matrix
    assert F3.equal(F3.matmul(V, T.one_vec()), T.one_vec())
    # (1 1bar) z + (z 1bar) 1 - (z 1bar) 1 = z
    assert F3.equal(V, F3.eye(T.dim))


def _comm(F, A, B):
    return F.sub(F.matmul(A, B), F.matmul(B, A))


@pytest.mark.parametrize("a,b,count", [("Q", "E", 1000), ("O", "O", 30)])
def test_structurable_identity(build, F3, a, b, count):
    T = build.tensor(a, b)
    rng = np.random.default_rng(1)
    for _ in range(count):
        x, y, u, w = (_rand(T, rng) for _ in range(4))
        Vxy = v_matrix(T, x, y)
        lhs = _comm(F3, Vxy, v_matrix(T, u, w))
        rhs = F3.sub(v_matrix(T, F3.matmul(Vxy, u), w), v_matrix(T, u, F3.matmul(v_matrix(T, y, x), w)))
        assert F3.equal(lhs, rhs)


def test_w_operator_bilinear(build, F3):
    T = build.tensor("Q", "O")
    v = default_v(T)
    rng = np.random.default_rng(2)
    x1, x2, y = (_rand(T, rng) for _ in range(3))
    c = F3.from_int(2)

    def W(x, y):
        return v_matrix(T, x, T.mul(v, y))

    assert F3.equal(W(F3.add(x1, F3.mul(c, x2)), y), F3.add(W(x1, y), F3.mul(c, W(x2, y))))
    assert F3.equal(W(y, F3.add(x1, x2)), F3.add(W(y, x1), W(y, x2)))


@pytest.mark.parametrize("a,b", [("Q", "O"), ("E", "Q")])
def test_epsilon(build, F3, a, b):
    T = build.tensor(a, b)
    D0 = span_D0(T)
    rng = np.random.default_rng(3)
    x, y = _rand(T, rng), _rand(T, rng)
    assert F3.equal(D0.epsilon_of(v_matrix(T, x, y)), F3.neg(v_matrix(T, y, x)))
    v = default_v(T)
    s = T.random_S(1, rng)[0]
    LsLv = F3.matmul(T.L(s), T.L(v))
    # the sign that makes e^eps (v d) = -v (s (v d)) hold
    assert F3.equal(D0.epsilon_of(LsLv), F3.neg(F3.matmul(T.L(v), T.L(s))))
    ops = D0.ops
    assert F3.equal(epsilon_closed(T, epsilon_closed(T, ops)), ops)


def test_delta_of_spanning_pair_and_right_multiplications(build, F3):
    T = build.tensor("Q", "O")
    D0 = span_D0(T)
    v = default_v(T)
    vS = T.S_coords(v)
    x = _rand(T, np.random.default_rng(4))
    D = D0.delta_of(v_matrix(T, x, x))
    assert D.shape == (T.dim_S, T.dim_S)
    found = 0
    for w in T.S_basis:
        Rw = T.R(w)
        if D0.contains(Rw):
            found += 1
            assert F3.all_zero(F3.matmul(D0.delta_of(Rw), vS))
    assert found == 3  # the quaternionic skew right multiplications


@pytest.mark.parametrize("a,b,dim", [("O", "O", 92), ("Q", "O", 49), ("Q", "Phi", 7)])
def test_span_D0_dims(build, a, b, dim):
    assert span_D0(build.tensor(a, b)).dim == dim


def test_D0_is_closed(build):
    assert span_D0(build.tensor("Q", "O")).check_closed()


def test_operator_outside_D0_rejected(build, F3):
    T = build.tensor("Q", "Q")
    D0 = span_D0(T)
    E = F3.zeros((T.dim, T.dim))
    E[0, 1] = 1
    with pytest.raises(StructurableError):
        D0.epsilon_of(E)


@pytest.mark.parametrize("a,b", SHAPES)
@pytest.mark.parametrize("side", ["right", "left"])
def test_decomposition(build, a, b, side):
    T = build.tensor(a, b)
    idx = T.right_skew_index if side == "right" else T.left_skew_index
    if not idx:
        pytest.skip("no skew elements on this slice")
    dec = decompose_D0(T, default_v(T, side=side))
    ne, nsv, nd = dec.ranks
    assert nsv == T.dim_S
    assert ne + nsv == nd
    assert dec.bijective and dec.kernel_matches


def test_lie_bracket_of_pair_through_v(build, F3):
    # 2 L_{[x,y]} L_v = V_{x,vy} - V_{y,vx} with [x, y] = psi(x, y) the bracket on A+
    T = build.tensor("O", "O")
    v = default_v(T)
    rng = np.random.default_rng(5)
    for _ in range(20):
        x, y = _rand(T, rng), _rand(T, rng)
        br = T.psi(x, y)
        lhs = F3.mul(F3.from_int(2), F3.matmul(T.L(br), T.L(v)))
        rhs = F3.sub(v_matrix(T, x, T.mul(v, y)), v_matrix(T, y, T.mul(v, x)))
        assert F3.equal(lhs, rhs)


def test_even_generators_kill_v(build, F3):
    # [V_{x,vx}, v] = 0 in the graded algebra, i.e. V_{x,vx}^delta v = 0
    T = build.tensor("Q", "O")
    v = default_v(T)
    vS = T.S_coords(v)
    rng = np.random.default_rng(6)
    ops = np.stack([v_matrix(T, x, T.mul(v, x)) for x in _rand(T, rng, 20)])
    assert F3.all_zero(F3.matmul(delta_closed(T, ops), vS))


def test_bracket_identity_for_w_operators(build, F3):
    T = build.tensor("Q", "O")
    v = default_v(T)
    rng = np.random.default_rng(7)

    def W(x, y):
        return v_matrix(T, x, T.mul(v, y))

    for _ in range(20):
        a, b, c, d = (_rand(T, rng) for _ in range(4))
        Wab = W(a, b)
        lhs = _comm(F3, Wab, W(c, d))
        rhs = F3.add(W(F3.matmul(Wab, c), d), W(c, F3.matmul(W(b, a), d)))
        assert F3.equal(lhs, rhs)


@pytest.mark.parametrize("a,b", [("Q", "O"), ("O", "Phi"), ("E", "O")])
def test_commutators_of_sv_lie_in_even_part(build, F3, a, b):
    T = build.tensor(a, b)
    v = default_v(T)
    dec = decompose_D0(T, v)
    even = Subspace(F3, T.dim ** 2).extend(dec.even)
    Lv = T.L(v)
    P = np.stack([F3.matmul(T.L(s), Lv) for s in T.S_basis])
    for i in range(len(P)):
        for j in range(i + 1, len(P)):
            assert even.contains(_comm(F3, P[i], P[j]).reshape(1, -1))


@pytest.mark.parametrize("a,b", [("O", "O"), ("Q", "E")])
def test_orthogonal_lemma(build, F3, a, b):
    T = build.tensor(a, b)
    w = default_v(T)
    Lw = T.L(w)
    P = np.stack([F3.matmul(T.L(s), Lw) for s in T.S_basis])
    comms = np.stack([_comm(F3, P[i], P[j]) for i in range(len(P)) for j in range(i + 1, len(P))])
    V, G = perp_form(T, w)
    m = V.shape[0]
    assert rank(F3, comms.reshape(len(comms), -1)) == m * (m - 1) // 2
    # the delta action preserves the polar form of p on V
    VS = T.S_coords(V)
    D = delta_closed(T, comms)
    for M in D:
        img = F3.matmul(VS, M.T)  # images of the V basis, in S coordinates
        coords = Subspace.span(F3, VS).coords(img)
        assert F3.all_zero(F3.add(F3.matmul(coords, G), F3.matmul(G, coords.T)))


@pytest.mark.parametrize("a,b,dim,zdim", [("E", "Phi", 8, 1), ("Q", "Phi", 21, 0), ("O", "Phi", 52, 0),
                                          ("Q", "E", 35, 1), ("Q", "Q", 66, 0), ("E", "O", 78, 1)])
def test_graded_dims_and_centers(build, a, b, dim, zdim):
    L = build.graded(a, b)
    assert L.n == dim
    assert center(L).shape[0] == zdim
    assert L.grading_ok()


@pytest.mark.parametrize("a,b", [("E", "Phi"), ("Q", "E"), ("E", "O")])
def test_image_form_drops_the_center(build, a, b):
    Li, Lz = build.graded(a, b, form="image"), build.graded(a, b)
    assert Li.n == Lz.n - 1
    assert center(Li).shape[0] == 0


def test_fitted_scalars_are_one(build, F3):
    L = build.graded("Q", "O")
    assert all(c == F3.one for c in L.scalars)


def test_v_must_be_invertible(build, F3):
    T = build.tensor("Q", "Q")
    v = F3.add(T.basis_vec(T.right_skew_index[0]), T.basis_vec(T.right_skew_index[2]))
    if F3.is_zero_scalar(T.norm(v)):
        with pytest.raises(StructurableError):
            decompose_D0(T, v)
    else:
        pytest.skip("chosen element is invertible")


def test_integral_form_needs_liftable_parameters():
    from lsa3.exactfield import GF
    from lsa3.composition import composition_algebra
    from lsa3.tensoralg import build_tensor

    F = GF(3, 2)
    t = F.element(3)
    T = build_tensor(composition_algebra(F, [t]), composition_algebra(F, [1]))
    with pytest.raises(StructurableError):
        InnerStructureAlgebra(T, "integral")
