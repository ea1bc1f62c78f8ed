"""Composition algebras of dimension 1, 2, 4, 8 by Cayley-Dickson doubling.

An algebra is stored as a multiplication tensor ``mult[i, j, k]`` (coefficient
of ``e_k`` in ``e_i e_j``) and a conjugation matrix acting on column vectors.
The basis is the iterated doubling basis ``1, l1, l2, l1 l2, l3, ...``, for
which conjugation is diagonal.
"""

from __future__ import annotations

import json
from functools import cached_property

import numpy as np

from .exactfield import Field, FieldError, FieldSpec, ZZ, make_field
from .linalg import nullspace

__all__ = [
    "CompositionError",
    "CompositionAlgebra",
    "AlgebraElement",
    "ground_algebra",
    "cayley_dickson_double",
    "composition_algebra",
    "conjugate",
    "norm",
    "polar_norm",
    "skew_basis",
    "algebra_mul",
    "left_mul_matrix",
    "right_mul_matrix",
]


class CompositionError(ValueError):
    pass


def algebra_mul(R, mult, x, y):
    """Product of coordinate vectors; batched over leading axes of ``x`` and ``y``."""
    d = mult.shape[0]
    xM = R.matmul(x, mult.reshape(d, d * d)).reshape(np.shape(x)[:-1] + (d, d))
    return R.sum(R.mul(xM, np.asarray(y)[..., :, None]), axis=-2)


def left_mul_matrix(R, mult, x):
    """Matrix of ``z -> x z`` on column vectors."""
    d = mult.shape[0]
    return R.matmul(x, mult.reshape(d, d * d)).reshape(d, d).T.copy()


def right_mul_matrix(R, mult, x):
    """Matrix of ``z -> z x`` on column vectors."""
    d = mult.shape[0]
    return R.matmul(x, mult.transpose(1, 0, 2).reshape(d, d * d)).reshape(d, d).T.copy()


class CompositionAlgebra:
    """A unital composition algebra over a field (or the integers, for lattices)."""

    def __init__(self, ring, mult, conj, mus=(), check=True, rng_seed=0):
        self.ring = ring
        self.mult = np.asarray(mult, dtype=ring.dtype)
        self.conj = np.asarray(conj, dtype=ring.dtype)
        self.dim = self.mult.shape[0]
        self.mus = tuple(mus)
        if self.dim not in (1, 2, 4, 8):
            raise CompositionError(f"composition algebras have dimension 1, 2, 4 or 8, not {self.dim}")
        if check and isinstance(ring, Field):
            self.check_invariants(np.random.default_rng(rng_seed))

    @property
    def field(self):
        return self.ring

    def __repr__(self):
        return f"CompositionAlgebra(dim={self.dim}, mus={[self.ring_fmt(m) for m in self.mus]}, ring={self.ring!r})"

    def ring_fmt(self, m):
        return self.ring.fmt(m) if hasattr(self.ring, "fmt") else str(m)

    @property
    def label(self) -> str:
        return {1: "Phi", 2: "E", 4: "Q", 8: "O"}[self.dim]

    # -- elementary operations on coordinate arrays -----------------------------
    def one_vec(self):
        v = self.ring.zeros(self.dim)
        v[0] = self.ring.one
        return v

    def basis_vec(self, i):
        v = self.ring.zeros(self.dim)
        v[i] = self.ring.one
        return v

    def mul(self, x, y):
        return algebra_mul(self.ring, self.mult, x, y)

    def bar(self, x):
        return self.ring.matmul(np.asarray(x, dtype=self.ring.dtype), self.conj.T)

    def norm(self, x):
        """``N(x)``: the 1-coordinate of ``x xbar``."""
        return self.mul(x, self.bar(x))[..., 0]

    def polar(self, x, y):
        """``N(x, y) = N(x + y) - N(x) - N(y)``."""
        R = self.ring
        return R.add(self.mul(x, self.bar(y)), self.mul(y, self.bar(x)))[..., 0]

    def L(self, x):
        return left_mul_matrix(self.ring, self.mult, x)

    def R(self, x):
        return right_mul_matrix(self.ring, self.mult, x)

    @cached_property
    def norm_gram(self):
        """Gram matrix of the polar form on the basis."""
        R = self.ring
        E = R.eye(self.dim)
        G = R.zeros((self.dim, self.dim))
        for i in range(self.dim):
            G[i] = self.polar(np.broadcast_to(E[i], (self.dim, self.dim)), E)
        return G

    @cached_property
    def skew(self):
        """Rows spanning ``{x : xbar = -x}``."""
        R = self.ring
        if not isinstance(R, Field):
            # doubling basis: conjugation is diagonal
            idx = [i for i in range(self.dim) if self.conj[i, i] == -1]
            return np.eye(self.dim, dtype=np.int64)[idx]
        return nullspace(R, R.add(self.conj, R.eye(self.dim)))

    def element(self, coords) -> "AlgebraElement":
        return AlgebraElement(self, self.ring.from_int(np.asarray(coords))
                              if np.asarray(coords).dtype != self.ring.dtype else np.asarray(coords))

    def one(self) -> "AlgebraElement":
        return AlgebraElement(self, self.one_vec())

    def basis(self):
        return [AlgebraElement(self, self.basis_vec(i)) for i in range(self.dim)]

    def random_vectors(self, count, rng):
        return self.ring.random((count, self.dim), rng)

    # -- invariants ----------------------------------------------------------
    def associator(self, x, y, z):
        R = self.ring
        return R.sub(self.mul(self.mul(x, y), z), self.mul(x, self.mul(y, z)))

    def is_associative(self) -> bool:
        R = self.ring
        d = self.dim
        E = R.eye(d)
        X = np.repeat(E, d * d, axis=0)
        Y = np.tile(np.repeat(E, d, axis=0), (d, 1))
        Z = np.tile(E, (d * d, 1))
        return R.all_zero(self.associator(X, Y, Z))

    def check_invariants(self, rng, samples=1000):
        """Raise :class:`CompositionError` unless the algebra axioms hold."""
        R = self.ring
        d = self.dim
        E = R.eye(d)
        if not R.equal(self.bar(self.bar(E)), E):
            raise CompositionError("conjugation is not an involution")
        if not R.equal(self.bar(self.one_vec()), self.one_vec()):
            raise CompositionError("conjugation does not fix 1")
        # x + xbar = N(x, 1) 1
        tr = R.add(E, self.bar(E))
        expect = R.zeros((d, d))
        expect[:, 0] = self.polar(E, np.broadcast_to(self.one_vec(), (d, d)))
        if not R.equal(tr, expect):
            raise CompositionError("x + xbar is not a scalar")
        # alternativity on basis triples: (x,x,y) and (y,x,x) associators vanish
        X = np.repeat(E, d, axis=0)
        Y = np.tile(E, (d, 1))
        if not R.all_zero(self.associator(X, X, Y)) or not R.all_zero(self.associator(Y, X, X)):
            raise CompositionError("algebra is not alternative")
        # multiplicativity, polarized on basis pairs and on random pairs
        xs = R.random((samples, d), rng)
        ys = R.random((samples, d), rng)
        for a, b in ((X, Y), (xs, ys)):
            lhs = self.norm(self.mul(a, b))
            rhs = R.mul(self.norm(a), self.norm(b))
            if not R.equal(lhs, rhs):
                raise CompositionError("norm is not multiplicative")
        if not R.equal(self.bar(self.mul(xs, ys)), self.mul(self.bar(ys), self.bar(xs))):
            raise CompositionError("conjugation is not an anti-automorphism")

    # -- serialization -----------------------------------------------------------
    def spec_json(self) -> dict:
        return {"base": self.ring.spec.to_json(), "doublings": [_scalar_json(self.ring, m) for m in self.mus]}

    def lift(self) -> "CompositionAlgebra | None":
        """Copy over the integers (doubling parameters lifted), or None."""
        if not isinstance(self.ring, Field):
            return self
        lifted = []
        for m in self.mus:
            lm = self.ring.to_int_lift(np.array([m], dtype=self.ring.dtype))
            if lm is None:
                return None
            lifted.append(int(lm[0]))
        return composition_algebra(ZZ, lifted)


def _scalar_json(F, m):
    if isinstance(F, Field) and not F.is_finite:
        return str(m)
    if isinstance(F, Field) and F.k > 1:
        return F.fmt(m)
    return int(m)


class AlgebraElement:
    """Coordinate vector tied to its algebra, with the usual operators."""

    __slots__ = ("algebra", "coords")

    def __init__(self, algebra, coords):
        coords = np.asarray(coords, dtype=algebra.ring.dtype)
        if coords.shape != (algebra.dim,):
            raise CompositionError(f"expected {algebra.dim} coordinates, got {coords.shape}")
        self.algebra = algebra
        self.coords = coords

    def _other(self, other):
        if isinstance(other, AlgebraElement):
            if other.algebra is not self.algebra:
                raise CompositionError("elements of different algebras")
            return other.coords
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return AlgebraElement(self.algebra, self.algebra.ring.add(self.coords, o))

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return AlgebraElement(self.algebra, self.algebra.ring.sub(self.coords, o))

    def __neg__(self):
        return AlgebraElement(self.algebra, self.algebra.ring.neg(self.coords))

    def __mul__(self, other):
        R = self.algebra.ring
        if isinstance(other, AlgebraElement):
            return AlgebraElement(self.algebra, self.algebra.mul(self.coords, self._other(other)))
        if hasattr(other, "field") and hasattr(other, "value"):
            other = other.value
        return AlgebraElement(self.algebra, R.mul(other, self.coords))

    def __rmul__(self, other):
        if hasattr(other, "field") and hasattr(other, "value"):
            other = other.value
        return AlgebraElement(self.algebra, self.algebra.ring.mul(other, self.coords))

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement) or other.algebra is not self.algebra:
            return False
        return self.algebra.ring.equal(self.coords, other.coords)

    def __hash__(self):
        return hash(tuple(self.coords.tolist()))

    def conjugate(self) -> "AlgebraElement":
        return AlgebraElement(self.algebra, self.algebra.bar(self.coords))

    def norm(self):
        R = self.algebra.ring
        v = self.algebra.norm(self.coords)
        return R.element(v) if isinstance(R, Field) else int(v)

    def __repr__(self):
        R = self.algebra.ring
        return "(" + ", ".join(R.fmt(c) if isinstance(R, Field) else str(c) for c in self.coords) + ")"


def ground_algebra(ring) -> CompositionAlgebra:
    """The one-dimensional algebra ``Phi``."""
    return CompositionAlgebra(ring, ring.ones((1, 1, 1)), ring.ones((1, 1)))


def cayley_dickson_double(C: CompositionAlgebra, mu) -> CompositionAlgebra:
    """Double ``C`` with parameter ``mu``.

    ``mu`` is a :class:`FieldScalar` or a Python integer (mapped into the ring).

    ``(a, b)(c, d) = (ac + mu dbar b, da + b cbar)``, ``(a, b)bar = (abar, -b)``,
    ``N(a, b) = N(a) - mu N(b)``.
    """
    R = C.ring
    if hasattr(mu, "field") and hasattr(mu, "value"):
        mu = mu.value
    elif isinstance(R, Field):
        mu = R(mu).value
    if C.dim >= 8:
        raise CompositionError("doubling an octonion algebra does not give a composition algebra")
    if R.is_zero_scalar(mu):
        raise CompositionError("doubling parameter must be invertible")
    if isinstance(R, Field):
        R.inv(mu)
    d = C.dim
    M, K = C.mult, C.conj
    N = R.zeros((2 * d, 2 * d, 2 * d))
    N[:d, :d, :d] = M
    N[:d, d:, d:] = M.transpose(1, 0, 2)
    for i in range(d):
        # (0, e_i)(e_j, 0) = (0, e_i ebar_j)
        N[d + i, :d, d:] = R.matmul(K.T, M[i])
        # (0, e_i)(0, e_j) = (mu ebar_j e_i, 0)
        N[d + i, d:, :d] = R.mul(mu, R.matmul(K.T, M[:, i, :]))
    K2 = R.zeros((2 * d, 2 * d))
    K2[:d, :d] = K
    K2[d:, d:] = R.neg(R.eye(d))
    return CompositionAlgebra(R, N, K2, mus=C.mus + (mu,))


def composition_algebra(ring, doublings=()) -> CompositionAlgebra:
    """Iterated doubling of the ground field; ``doublings`` lists the parameters."""
    C = ground_algebra(ring)
    for mu in doublings:
        C = cayley_dickson_double(C, mu)
    return C


def algebra_from_json(obj) -> CompositionAlgebra:
    """``{"base": {...field spec...}, "doublings": [1, 1, 1]}``."""
    if isinstance(obj, str):
        obj = json.loads(obj)
    try:
        F = make_field(FieldSpec.from_json(obj.get("base", {"kind": "gf", "p": 3, "k": 1})))
        raw = obj.get("doublings", [])
    except (AttributeError, TypeError) as exc:
        raise CompositionError(f"bad composition algebra spec: {obj!r}") from exc
    if len(raw) > 3:
        raise CompositionError("at most three doublings")
    mus = []
    for m in raw:
        if isinstance(m, str):
            mus.append(F.element(F.parse_scalar(m)))
        else:
            mus.append(F(int(m)))
    return composition_algebra(F, mus)


def conjugate(x: AlgebraElement) -> AlgebraElement:
    return x.conjugate()


def norm(x: AlgebraElement):
    return x.norm()


def polar_norm(x: AlgebraElement, y: AlgebraElement):
    A = x.algebra
    v = A.polar(x.coords, y.coords)
    return A.ring.element(v) if isinstance(A.ring, Field) else int(v)


def skew_basis(C: CompositionAlgebra):
    return [AlgebraElement(C, row) for row in C.skew]
