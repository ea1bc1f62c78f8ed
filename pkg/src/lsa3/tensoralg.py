"""Tensor products A = O1 (x) O2 of composition algebras.

Basis index ``i1 * d2 + i2`` stands for ``e_i1 (x) f_i2``. The skew space
``S = S1 (x) 1 + 1 (x) S2`` is spanned by the basis vectors with exactly one
nonzero index, so coordinates in ``S`` are read off directly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .composition import (
    CompositionAlgebra,
    CompositionError,
    algebra_from_json,
    algebra_mul,
    left_mul_matrix,
    right_mul_matrix,
)
from .exactfield import Field, FieldError
from .linalg import nullspace, rank

__all__ = [
    "TensorAlgebra",
    "SlicedNorm",
    "LinOp",
    "build_tensor",
    "tensor_from_json",
    "left_mul_op",
    "right_mul_op",
    "clifford_check",
    "clifford_residual_nonskew",
    "slice_side",
    "perp_form",
]


@dataclass(frozen=True)
class LinOp:
    """A matrix acting on column vectors, tagged with its ring."""

    ring: object
    matrix: np.ndarray

    @property
    def shape(self):
        return self.matrix.shape

    def __matmul__(self, other):
        if isinstance(other, LinOp):
            return LinOp(self.ring, self.ring.matmul(self.matrix, other.matrix))
        return self.ring.matmul(self.matrix, np.asarray(other, dtype=self.ring.dtype))

    def __add__(self, other):
        return LinOp(self.ring, self.ring.add(self.matrix, other.matrix))

    def __sub__(self, other):
        return LinOp(self.ring, self.ring.sub(self.matrix, other.matrix))

    def __eq__(self, other):
        return isinstance(other, LinOp) and self.ring.equal(self.matrix, other.matrix)

    def __hash__(self):
        return hash(self.matrix.tobytes())


class TensorAlgebra:
    """``O1 (x) O2`` with involution ``a (x) b -> abar (x) bbar``."""

    def __init__(self, left: CompositionAlgebra, right: CompositionAlgebra):
        if left.ring != right.ring:
            raise FieldError("tensor factors live over different rings")
        self.left = left
        self.right = right
        self.ring = R = left.ring
        d1, d2 = left.dim, right.dim
        self.d1, self.d2 = d1, d2
        self.dim = n = d1 * d2
        # products of field codes must go through the ring (codes are not integers in GF(p^k))
        A, B = left.mult, right.mult
        self.mult = R.mul(A[:, None, :, None, :, None], B[None, :, None, :, None, :]).reshape(n, n, n)
        self.conj = R.mul(left.conj[:, None, :, None], right.conj[None, :, None, :]).reshape(n, n)
        self.skew_index = [i1 * d2 + i2 for i1 in range(d1) for i2 in range(d2) if (i1 == 0) != (i2 == 0)]
        # slices: indices from S1 (x) 1 come first
        self.left_skew_index = [i1 * d2 for i1 in range(1, d1)]
        self.right_skew_index = list(range(1, d2))

    @property
    def field(self):
        return self.ring

    @property
    def shape_label(self) -> str:
        return f"{self.left.label}x{self.right.label}"

    def __repr__(self):
        return f"TensorAlgebra({self.shape_label}, dim={self.dim}, ring={self.ring!r})"

    @property
    def dim_S(self) -> int:
        return len(self.skew_index)

    # -- elements ----------------------------------------------------------------
    def one_vec(self):
        v = self.ring.zeros(self.dim)
        v[0] = self.ring.one
        return v

    def basis_vec(self, i):
        v = self.ring.zeros(self.dim)
        v[i] = self.ring.one
        return v

    @property
    def S_basis(self):
        return self.ring.eye(self.dim)[self.skew_index]

    def embed_left(self, a):
        """``a (x) 1``."""
        a = np.asarray(a, dtype=self.ring.dtype)
        out = self.ring.zeros(a.shape[:-1] + (self.dim,))
        out[..., :: self.d2] = a
        return out

    def embed_right(self, b):
        """``1 (x) b``."""
        b = np.asarray(b, dtype=self.ring.dtype)
        out = self.ring.zeros(b.shape[:-1] + (self.dim,))
        out[..., : self.d2] = b
        return out

    def S_coords(self, x):
        """Coordinates of skew vectors in :attr:`S_basis`; raises if not skew."""
        x = np.asarray(x, dtype=self.ring.dtype)
        rest = np.delete(x, self.skew_index, axis=-1)
        if not self.ring.all_zero(rest):
            raise CompositionError("vector is not in the skew space")
        return x[..., self.skew_index].copy()

    def from_S(self, c):
        c = np.asarray(c, dtype=self.ring.dtype)
        out = self.ring.zeros(c.shape[:-1] + (self.dim,))
        out[..., self.skew_index] = c
        return out

    def random_S(self, count, rng):
        return self.from_S(self.ring.random((count, self.dim_S), rng))

    # -- products ----------------------------------------------------------------
    def mul(self, x, y):
        return algebra_mul(self.ring, self.mult, x, y)

    def bar(self, x):
        return self.ring.matmul(np.asarray(x, dtype=self.ring.dtype), self.conj.T)

    def L(self, x):
        return left_mul_matrix(self.ring, self.mult, x)

    def R(self, x):
        return right_mul_matrix(self.ring, self.mult, x)

    def psi(self, x, y):
        """The skew form ``x ybar - y xbar``."""
        R = self.ring
        return R.sub(self.mul(x, self.bar(y)), self.mul(y, self.bar(x)))

    @property
    def norm(self) -> "SlicedNorm":
        return SlicedNorm(self)

    # -- checks ------------------------------------------------------------------
    def check_invariants(self, rng, samples=200):
        R = self.ring
        n = self.dim
        E = R.eye(n)
        if not R.equal(self.bar(self.bar(E)), E):
            raise CompositionError("involution is not involutive")
        xs, ys = R.random((samples, n), rng), R.random((samples, n), rng)
        if not R.equal(self.bar(self.mul(xs, ys)), self.mul(self.bar(ys), self.bar(xs))):
            raise CompositionError("involution is not an anti-automorphism")
        if isinstance(R, Field):
            minus = nullspace(R, R.add(self.conj, E))
            if minus.shape[0] != self.dim_S or rank(R, np.concatenate([minus, self.S_basis])) != self.dim_S:
                raise CompositionError("skew space is not the -1 eigenspace")


class SlicedNorm:
    """``N(a (x) 1 + 1 (x) b) = -N1(a) + N2(b)`` on ``O1 (x) 1 + 1 (x) O2``."""

    def __init__(self, T: TensorAlgebra):
        self.T = T

    def _split(self, x):
        T = self.T
        R = T.ring
        x = np.asarray(x, dtype=R.dtype)
        a = x[..., :: T.d2].copy()
        b = x[..., : T.d2].copy()
        # the 1 (x) 1 coordinate is shared; put it on the right factor
        a[..., 0] = R.zero
        check = R.sub(R.add(T.embed_left(a), T.embed_right(b)), x)
        if not R.all_zero(check):
            raise CompositionError("element is not in the slice O1 (x) 1 + 1 (x) O2")
        return a, b

    def __call__(self, x):
        T = self.T
        R = T.ring
        a, b = self._split(x)
        return R.add(R.neg(T.left.norm(a)), T.right.norm(b))

    def polar(self, x, y):
        R = self.T.ring
        return R.sub(R.sub(self(R.add(x, y)), self(x)), self(y))

    def gram(self, vectors):
        R = self.T.ring
        V = np.asarray(vectors, dtype=R.dtype)
        k = V.shape[0]
        G = R.zeros((k, k))
        for i in range(k):
            G[i] = self.polar(np.broadcast_to(V[i], V.shape), V)
        return G


def build_tensor(O1: CompositionAlgebra, O2: CompositionAlgebra, check=True, seed=0) -> TensorAlgebra:
    T = TensorAlgebra(O1, O2)
    if check:
        T.check_invariants(np.random.default_rng(seed))
    return T


def tensor_from_json(obj) -> TensorAlgebra:
    """``{"left": {...}, "right": {...}}`` with composition-algebra specs."""
    if isinstance(obj, str):
        obj = json.loads(obj)
    try:
        left, right = obj["left"], obj["right"]
    except (KeyError, TypeError) as exc:
        raise CompositionError("tensor spec needs 'left' and 'right'") from exc
    return build_tensor(algebra_from_json(left), algebra_from_json(right))


def left_mul_op(T: TensorAlgebra, o) -> LinOp:
    return LinOp(T.ring, T.L(o))


def right_mul_op(T: TensorAlgebra, o) -> LinOp:
    return LinOp(T.ring, T.R(o))


def slice_side(T: TensorAlgebra, w) -> str:
    """``"right"`` for ``1 (x) v``, ``"left"`` for ``v (x) 1``; raises otherwise."""
    R = T.ring
    w = np.asarray(w, dtype=R.dtype)
    c = T.S_coords(w)
    nl = len(T.left_skew_index)
    # S_basis orders indices by position; split into the two slices
    li = [k for k, idx in enumerate(T.skew_index) if idx in set(T.left_skew_index)]
    ri = [k for k, idx in enumerate(T.skew_index) if idx in set(T.right_skew_index)]
    on_left = not R.all_zero(c[li]) if nl else False
    on_right = not R.all_zero(c[ri]) if ri else False
    if on_left and on_right:
        raise CompositionError("w is not a slice element")
    return "left" if on_left else "right"


def _clifford_residual(T, s, w, sign):
    R = T.ring
    N = T.norm
    P = R.matmul(T.L(s), T.L(w))
    pol = N.polar(s, w)
    nn = R.mul(N(s), N(w))
    if sign < 0:
        pol = R.neg(pol)
    lhs = R.add(R.matmul(P, P), R.mul(pol, P))
    return R.add(lhs, R.mul(nn, R.eye(T.dim)))


def clifford_check(T: TensorAlgebra, s, w) -> bool:
    """``(L_s L_w)^2 + N(s, w) L_s L_w + N(s) N(w) = 0`` as a matrix identity.

    ``s`` must be skew and ``w`` a skew slice element (both raise otherwise).
    For ``w = v (x) 1`` the identity is taken with the negated form ``-N``.
    """
    T.S_coords(s)
    side = slice_side(T, w)
    return T.ring.all_zero(_clifford_residual(T, s, w, -1 if side == "left" else 1))


def clifford_residual_nonskew(T: TensorAlgebra, s, w) -> bool:
    """The identity for arbitrary slice ``s`` (no skewness check; negative controls)."""
    side = slice_side(T, w)
    return T.ring.all_zero(_clifford_residual(T, s, w, -1 if side == "left" else 1))


def perp_form(T: TensorAlgebra, v):
    """Basis of ``V = {s in S : N(s, v) = 0}`` and the Gram matrix of ``s -> N(s) N(v)``.

    Returns ``(basis rows in A, gram)`` where ``gram`` is the polarization of
    the quadratic form ``p``.
    """
    R = T.ring
    if not isinstance(R, Field):
        raise FieldError("perp_form needs a field")
    N = T.norm
    nv = N(v)
    if R.is_zero_scalar(nv):
        raise FieldError("N(v) is not invertible")
    Sb = T.S_basis
    pol = N.polar(Sb, np.broadcast_to(np.asarray(v, dtype=R.dtype), Sb.shape))
    coeffs = nullspace(R, pol[None, :])
    V = R.matmul(coeffs, Sb)
    G = R.mul(nv, N.gram(V)) if V.shape[0] else R.zeros((0, 0))
    return V, G
