"""Semisimplification of Rep(alpha_3) objects and of Lie algebras in characteristic 3.

An object is a pair ``(V, f)`` with ``f^3 = 0``. Jordan blocks of size 1 and 2
survive as even and odd lines; blocks of size 3 vanish. On Lie algebras with an
sl2-triple ``(e, h, f)`` with ``ad(e)^3 = 0`` this gives a Lie superalgebra
with even part ``C = ker ad e  n  ker ad h`` and odd part ``B+``, the tops of
the size-2 blocks (the ``h``-weight 1 part of ``ker ad e``).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exactfield import Field, FieldError
from .liecore import LieAlgebra, LieError, antisymmetry_witness, is_simple, jacobi_check, jordan_type
from .linalg import Subspace, intersect, nullspace, rank, rref
from .structurable import (
    GradedLieAlgebra,
    InnerStructureAlgebra,
    StructurableError,
    _even_generators,
    build_graded_lie,
    default_v,
    v_generators,
)
from .tensoralg import TensorAlgebra

__all__ = [
    "Alpha3Object",
    "SuperVectorSpace",
    "SemisimplifyError",
    "decompose_object",
    "ss_object",
    "direct_sum",
    "tensor_object",
    "braiding_sign_check",
    "ss_lie",
    "sl2_triple_from_v",
    "build_super_from_tensor",
    "super_jacobi_check",
    "super_is_simple",
    "super_label",
    "even_part_invariants",
]


class SemisimplifyError(ValueError):
    pass


@dataclass(frozen=True)
class SuperVectorSpace:
    even: int
    odd: int

    def __post_init__(self):
        if self.even < 0 or self.odd < 0:
            raise SemisimplifyError("negative dimension")

    def __add__(self, other):
        return SuperVectorSpace(self.even + other.even, self.odd + other.odd)

    def __iter__(self):
        return iter((self.even, self.odd))

    def __repr__(self):
        return f"({self.even}|{self.odd})"


class Alpha3Object:
    """A vector space with an endomorphism ``f`` satisfying ``f^3 = 0``."""

    def __init__(self, F: Field, f):
        f = np.asarray(f, dtype=F.dtype)
        if f.ndim != 2 or f.shape[0] != f.shape[1]:
            raise SemisimplifyError("f must be square")
        if not F.all_zero(F.matpow(f, 3)):
            raise SemisimplifyError("f^3 != 0")
        self.F = F
        self.f = f
        self.dim = f.shape[0]

    @classmethod
    def block(cls, F: Field, size: int) -> "Alpha3Object":
        """The indecomposable ``Phi^size`` (``f`` shifts the basis down)."""
        f = F.zeros((size, size))
        for i in range(size - 1):
            f[i, i + 1] = F.one
        return cls(F, f)


def decompose_object(o: Alpha3Object):
    """Multiplicities ``(n1, n2, n3)`` of Jordan blocks of sizes 1, 2, 3."""
    counts = dict(jordan_type(o.F, o.f)) if o.dim else {}
    n = (counts.get(1, 0), counts.get(2, 0), counts.get(3, 0))
    assert n[0] + 2 * n[1] + 3 * n[2] == o.dim
    return n


def ss_object(o: Alpha3Object) -> SuperVectorSpace:
    n1, n2, _ = decompose_object(o)
    return SuperVectorSpace(n1, n2)


def direct_sum(*objs: Alpha3Object) -> Alpha3Object:
    F = objs[0].F
    n = sum(o.dim for o in objs)
    f = F.zeros((n, n))
    at = 0
    for o in objs:
        f[at:at + o.dim, at:at + o.dim] = o.f
        at += o.dim
    return Alpha3Object(F, f)


def tensor_object(a: Alpha3Object, b: Alpha3Object) -> Alpha3Object:
    """``f (x) 1 + 1 (x) f`` on the tensor product (index ``i * dim b + j``)."""
    F = a.F
    f = F.add(_kron(F, a.f, F.eye(b.dim)), _kron(F, F.eye(a.dim), b.f))
    return Alpha3Object(F, f)


def _kron(F, A, B):
    m, n = A.shape
    p, q = B.shape
    out = F.zeros((m * p, n * q))
    for i in range(m):
        for j in range(n):
            out[i * p:(i + 1) * p, j * q:(j + 1) * q] = F.mul(A[i, j], B)
    return out


def braiding_sign_check(F: Field, a=2, b=2):
    """Sign by which the flip acts on the size-1 summands of ``Phi^a (x) Phi^b``.

    The flip commutes with ``f (x) 1 + 1 (x) f`` (for ``a == b``), so its
    eigenspaces are subobjects; the size-1 blocks must all sit in one of them.
    Returns ``(sign, jordan_type)``; sign is None when there are no size-1 blocks.
    For ``a != b`` the flip composed both ways is checked to be the identity
    and ``+1`` is returned.
    """
    A, B = Alpha3Object.block(F, a), Alpha3Object.block(F, b)
    T = tensor_object(A, B)
    jt = jordan_type(F, T.f)
    if a != b:
        P = _flip(F, a, b)
        Q = _flip(F, b, a)
        if not F.equal(F.matmul(Q, P), F.eye(a * b)):
            raise SemisimplifyError("flip is not invertible")
        return 1, jt
    P = _flip(F, a, a)
    if not F.equal(F.matmul(P, T.f), F.matmul(T.f, P)):
        raise SemisimplifyError("flip does not commute with f")
    ones = dict(jt).get(1, 0)
    if not ones:
        return None, jt
    found = []
    for sign in (1, -1):
        E = nullspace(F, F.sub(P, F.mul(F.from_int(sign), F.eye(a * a))))
        if E.shape[0] == 0:
            continue
        # restriction of f to the eigenspace, in its basis
        img = F.matmul(E, T.f.T)
        coords = _coords_in(F, E, img)
        sub_jt = dict(jordan_type(F, coords.T)) if E.shape[0] else {}
        if sub_jt.get(1, 0):
            found.append((sign, sub_jt[1]))
    if len(found) != 1 or found[0][1] != ones:
        raise SemisimplifyError(f"size-1 summands are not in a single flip eigenspace: {found}")
    return found[0][0], jt


def _coords_in(F, basis, V):
    from .linalg import express

    return express(F, basis, V)


def _flip(F, a, b):
    """``x (x) y -> y (x) x`` from ``Phi^a (x) Phi^b`` to ``Phi^b (x) Phi^a``."""
    P = F.zeros((a * b, a * b))
    for i in range(a):
        for j in range(b):
            P[j * a + i, i * b + j] = F.one
    return P


# -- Lie superalgebras ---------------------------------------------------------------


def _basis_coords(F, basis, V):
    """Coordinates of rows of ``V`` in the row space of ``basis`` (raises if outside)."""
    from .linalg import express

    if basis.shape[0] == 0:
        if not F.all_zero(V):
            raise FieldError("vector not in the span")
        return F.zeros(V.shape[:-1] + (0,))
    return express(F, basis, V)


def _pair_brackets(L, X, Y):
    return L.bracket_table(X, Y)


def _super_from_parts(F, even_even, even_odd, odd_odd, ne, no, name=""):
    """Assemble a superalgebra from ``[c_a, c_b]``, ``[c_a, m_i]`` and ``[m_i, m_j]`` blocks.

    ``even_even[a, b]`` are even coordinates, ``even_odd[a, i]`` odd coordinates
    and ``odd_odd[i, j]`` even coordinates.
    """
    N = ne + no
    C = F.zeros((N, N, N))
    if ne:
        C[:ne, :ne, :ne] = even_even
    if ne and no:
        C[:ne, ne:, ne:] = even_odd
        C[ne:, :ne, ne:] = F.neg(even_odd.transpose(1, 0, 2))
    if no and ne:
        C[ne:, ne:, :ne] = odd_odd
    parity = np.array([0] * ne + [1] * no, dtype=np.int64)
    return LieAlgebra(F, C, parity=parity, name=name)


def sl2_triple_from_v(L: GradedLieAlgebra, v):
    """``(e, h, f)`` with ``e = v+`` in ``S+`` and ``f`` a multiple of ``v-`` in ``S-``."""
    F = L.F
    T = L.tensor
    vS = T.S_coords(np.asarray(v, dtype=F.dtype))
    e = L.embed("S+", vS)
    f0 = L.embed("S-", vS)
    h0 = L.bracket(e, f0)
    he = L.bracket(h0, e)
    nz = np.nonzero(~F.is_zero(e))[0]
    if F.is_zero_scalar(he[nz[0]]):
        raise SemisimplifyError("[[e, f0], e] vanishes; v is not invertible")
    c = F.div(F.mul(F.from_int(2), e[nz[0]]), he[nz[0]])
    f = F.mul(c, f0)
    h = F.mul(c, h0)
    two = F.from_int(2)
    if not (F.equal(L.bracket(h, e), F.mul(two, e)) and F.equal(L.bracket(h, f), F.neg(F.mul(two, f)))
            and F.equal(L.bracket(e, f), h)):
        raise SemisimplifyError("could not complete v to an sl2-triple")
    return e, h, f


def ss_lie(L: LieAlgebra, e, h, f, name="") -> LieAlgebra:
    """Semisimplification of ``L`` with respect to the sl2-triple ``(e, h, f)``.

    Raises :class:`SemisimplifyError` if ``ad(e)^3 != 0``, if the odd bracket
    leaves ``C``, or if the result fails super-Jacobi.
    """
    F = L.F
    if F.characteristic != 3:
        raise SemisimplifyError("semisimplification needs characteristic 3")
    ade, adh, adf = L.ad(e), L.ad(h), L.ad(f)
    if not F.all_zero(F.matpow(ade, 3)):
        raise SemisimplifyError("ad(e)^3 != 0")
    ker_e = nullspace(F, ade)
    Cb = intersect(F, ker_e, nullspace(F, adh))
    if Cb.shape[0] and not F.all_zero(F.matmul(Cb, adf.T)):
        raise SemisimplifyError("C is not killed by ad(f)")
    one = F.one
    Bp = intersect(F, ker_e, nullspace(F, F.sub(adh, F.mul(one, F.eye(L.n)))))
    ne, no = Cb.shape[0], Bp.shape[0]
    # even-even and even-odd brackets
    ee = _basis_coords(F, Cb, _pair_brackets(L, Cb, Cb).reshape(-1, L.n)).reshape(ne, ne, ne) \
        if ne else F.zeros((0, 0, 0))
    eo = _basis_coords(F, Bp, _pair_brackets(L, Cb, Bp).reshape(-1, L.n)).reshape(ne, no, no) \
        if ne and no else F.zeros((ne, no, no))
    # odd-odd: [m, n-] + [n, m-] with m- = [f, m]
    Bm = L.bracket(np.broadcast_to(f, Bp.shape), Bp) if no else Bp
    if no:
        raw = _pair_brackets(L, Bp, Bm)
        oo_vec = F.add(raw, raw.transpose(1, 0, 2)).reshape(-1, L.n)
        try:
            oo = _basis_coords(F, Cb, oo_vec).reshape(no, no, ne)
        except FieldError as exc:
            raise SemisimplifyError("odd bracket leaves the even part") from exc
    else:
        oo = F.zeros((0, 0, ne))
    S = _super_from_parts(F, ee, eo, oo, ne, no, name=name)
    rep = jacobi_check(S)
    if not rep.passed:
        raise SemisimplifyError(f"super-Jacobi fails at {rep.witness}")
    return S


_EXCLUDED = {(2, 2): "E x E'", (1, 1): "Phi x Phi"}


def build_super_from_tensor(T: TensorAlgebra, v=None, allow_excluded=False, check=True) -> LieAlgebra:
    """``<V_{x,vx}> + A`` with odd bracket ``[x, y] = V_{x,vy} + V_{y,vx}``.

    Even elements act on ``A`` by operator application and among themselves
    by commutators. Needs characteristic 3; the shapes ``E x E'`` and
    ``Phi x Phi`` are rejected unless ``allow_excluded`` is set.
    """
    F = T.ring
    if not isinstance(F, Field) or F.characteristic != 3:
        raise SemisimplifyError("the superalgebra construction needs characteristic 3")
    shape = tuple(sorted((T.d1, T.d2)))
    if shape in _EXCLUDED and not allow_excluded:
        raise SemisimplifyError(f"excluded shape {_EXCLUDED[shape]}")
    if T.dim_S == 0:
        raise SemisimplifyError("no skew elements: there is no invertible skew v")
    if v is None:
        v = default_v(T)
    v = np.asarray(v, dtype=F.dtype)
    T.S_coords(v)
    if F.is_zero_scalar(T.norm(v)):
        raise SemisimplifyError("v is not invertible")
    n = T.dim
    even = rref(F, _even_generators(T, v))[0]
    ne = even.shape[0]
    ops = even.reshape(ne, n, n)
    # [d_a, d_b]
    if ne:
        comm = F.sub(F.matmul(ops[:, None], ops[None, :]), F.matmul(ops[None, :], ops[:, None]))
        ee = _basis_coords(F, even, comm.reshape(ne * ne, n * n)).reshape(ne, ne, ne)
    else:
        ee = F.zeros((0, 0, 0))
    # [d_a, e_i] = d_a e_i
    eo = ops.transpose(0, 2, 1).copy()
    # [e_i, e_j] = V_{e_i, v e_j} + V_{e_j, v e_i}
    G = v_generators(T)
    Lv = T.L(v)
    W = F.matmul(Lv.T, G.transpose(1, 0, 2, 3).reshape(n, n * n * n)).reshape(n, n, n, n).transpose(1, 0, 2, 3)
    odd = F.add(W, W.transpose(1, 0, 2, 3)).reshape(n * n, n * n)
    try:
        oo = _basis_coords(F, even, odd).reshape(n, n, ne)
    except FieldError as exc:
        raise SemisimplifyError("odd bracket escapes the even span") from exc
    S = _super_from_parts(F, ee, eo, oo, ne, n, name=f"super/{T.shape_label}")
    S.even_ops = ops
    if check:
        rep = jacobi_check(S)
        if not rep.passed:
            raise SemisimplifyError(f"super-Jacobi fails at {rep.witness}")
    return S


def super_jacobi_check(S: LieAlgebra, mode="full", count=1000, seed=0):
    """Graded antisymmetry and the graded Jacobi identity; see :func:`jacobi_check`."""
    if S.parity is None:
        raise SemisimplifyError("not a superalgebra")
    return jacobi_check(S, mode=mode, count=count, seed=seed)


def super_is_simple(S: LieAlgebra, seed=0) -> bool:
    """No proper nonzero graded ideal and a nonzero bracket."""
    return is_simple(S, seed=seed).simple


def even_part_invariants(S: LieAlgebra):
    """Basis-free numbers used to compare two constructions of the same superalgebra.

    ``dims`` of the derived even part, of ``[odd, odd]``, of the even center,
    of the centralizer of the even part in the odd part, and the rank of the
    even action on the odd part.
    """
    F = S.F
    ne, no = S.superdim
    C = S.C
    out = {"superdim": [ne, no]}
    out["derived_even"] = rank(F, C[:ne, :ne, :ne].reshape(-1, ne)) if ne else 0
    out["odd_odd_span"] = rank(F, C[ne:, ne:, :ne].reshape(-1, ne)) if ne and no else 0
    out["even_center"] = nullspace(F, C[:ne, :ne, :ne].reshape(ne, -1).T).shape[0] if ne else 0
    out["odd_invariants"] = nullspace(F, C[:ne, ne:, ne:].transpose(1, 0, 2).reshape(no, -1).T).shape[0] \
        if ne and no else no
    out["action_rank"] = rank(F, C[:ne, ne:, ne:].reshape(ne, -1)) if ne and no else 0
    return out


# superdimension -> (label, simple according to the classification)
SUPER_LABELS = {
    (4, 4): "osp(2,2)",
    (6, 8): "psl(2,2)",
    (16, 16): "osp(4,4)",
    (15, 8): "psl(4,1)",
    (21, 16): "g(3,3)",
    (39, 32): "el(5,3)",
    (78, 64): "g(6,6)",
    (0, 2): "psl(1,1)",
}


def super_label(S: LieAlgebra) -> str:
    """A name consistent with the superdimension (never a proved isomorphism)."""
    name = SUPER_LABELS.get(tuple(S.superdim))
    return f"{name}-consistent" if name else f"({S.superdim[0]}|{S.superdim[1]})"
