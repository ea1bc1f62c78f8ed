"""Integer spans of integer vectors and exact coordinates in them.

Used for the integral form of the inner structure algebra: the span of the
integer V-operators is a lattice, and structure constants are its coordinates,
reduced into a finite field afterwards.
"""

from __future__ import annotations

from fractions import Fraction

import flint
import numpy as np

from .exactfield import FieldError, GF
from .linalg import rref

__all__ = ["IntegerSpan", "exact_int_matmul"]

# prime used to select independent rows and columns; anything it misses is
# caught by the exact membership check of the generators
_SELECT_PRIME = 1000003
_F64_EXACT = 2**53


def exact_int_matmul(A, B):
    """Exact product of int64 (or Python int) matrices."""
    A = np.asarray(A)
    B = np.asarray(B)
    if A.dtype != object and B.dtype != object:
        bound = A.shape[-1] * int(np.abs(A).max(initial=0)) * int(np.abs(B).max(initial=0))
        if bound < _F64_EXACT:
            return np.rint(A.astype(np.float64) @ B.astype(np.float64)).astype(np.int64)
    return np.asarray(A, dtype=object) @ np.asarray(B, dtype=object)


def _hnf_rows(rows, batch=256):
    """Nonzero rows of the Hermite normal form of the row lattice."""
    basis = None
    for k in range(0, rows.shape[0], batch):
        blk = rows[k:k + batch]
        stack = blk if basis is None else np.vstack([basis, blk])
        H = flint.fmpz_mat(stack.tolist()).hnf()
        table = [[int(v) for v in r] for r in H.tolist()]
        nz = [r for r in table if any(r)]
        basis = np.array(nz, dtype=object)
    if basis is None or len(basis) == 0:
        return np.zeros((0, rows.shape[1]), dtype=object)
    return basis


class IntegerSpan:
    """The lattice spanned by the rows of an integer matrix.

    ``basis`` holds a lattice basis (rows, full width). Coordinates of a
    vector in the rational span are computed from a set of ``cols`` on which
    the projection is injective, then checked against the full vector.
    """

    def __init__(self, gens):
        gens = np.asarray(gens, dtype=np.int64)
        gens = gens[np.any(gens != 0, axis=1)]
        if gens.shape[0] == 0:
            self.cols = []
            self.basis = np.zeros((0, np.shape(gens)[1]), dtype=np.int64)
            self.rank = 0
            self._inv = None
            return
        gens = np.unique(gens, axis=0)
        F = GF(_SELECT_PRIME)
        _, cols = rref(F, F.from_int(gens))
        self.cols = list(cols)
        r = len(cols)
        proj = gens[:, cols]
        # r independent generators, to lift projected lattice vectors back
        _, rows = rref(F, F.from_int(proj.T))
        G = gens[rows]
        Gp_inv = flint.fmpz_mat(proj[rows].tolist()).inv()  # fmpq_mat
        H = _hnf_rows(proj)
        if H.shape[0] != r:
            raise FieldError("lattice rank disagrees with the selected columns")
        lift = flint.fmpq_mat(flint.fmpz_mat(H.tolist())) * Gp_inv
        num, den = lift.numer_denom()
        num = np.array([[int(v) for v in row] for row in num.tolist()], dtype=object)
        full = exact_int_matmul(num, G.astype(object)) if num.size else num
        den = int(den)
        if any(int(v) % den for v in np.ravel(full)):
            raise FieldError("lattice basis failed to lift to integers")
        full = np.array([[int(v) // den for v in row] for row in full], dtype=object)
        self.basis = full.astype(np.int64)
        self.rank = r
        self._proj_basis = H
        self._inv = flint.fmpz_mat(H.tolist()).inv()
        # every generator must lie in the span (guards the column selection)
        self.coords(gens)

    def coords(self, X):
        """Rational coordinates ``(num, den)`` with ``num / den @ basis == X`` exactly.

        ``num`` is an object array of Python ints and ``den`` a positive int.
        Raises :class:`FieldError` if some row of ``X`` is outside the span.
        """
        X = np.asarray(X, dtype=np.int64)
        single = X.ndim == 1
        if single:
            X = X[None, :]
        if self.rank == 0:
            if np.any(X):
                raise FieldError("vector not in the span")
            z = np.zeros((X.shape[0], 0), dtype=object)
            return (z[0] if single else z), 1
        Xp = flint.fmpz_mat(X[:, self.cols].tolist())
        C = flint.fmpq_mat(Xp) * self._inv
        num, den = C.numer_denom()
        num = np.array([[int(v) for v in row] for row in num.tolist()], dtype=object)
        den = int(den)
        check = exact_int_matmul(_small(num), self.basis)
        if not np.array_equal(np.asarray(check, dtype=object), X.astype(object) * den):
            raise FieldError("vector not in the span")
        return (num[0] if single else num), den

    def coords_mod(self, F, X):
        """Coordinates reduced into the finite field ``F``; denominators must be units."""
        num, den = self.coords(X)
        return reduce_fraction_array(F, num, den)


def _small(num):
    try:
        return num.astype(np.int64)
    except OverflowError:  # pragma: no cover
        return num


def reduce_fraction_array(F, num, den):
    num = np.asarray(num, dtype=object)
    if F.is_finite and den % F.p == 0:
        out = np.empty(num.shape, dtype=F.dtype)
        for idx, v in np.ndenumerate(num):
            q = Fraction(int(v), den)
            if q.denominator % F.p == 0:
                raise FieldError(f"coordinate {q} has denominator divisible by {F.p}")
            out[idx] = F.from_fraction(q.numerator, q.denominator)
        return out
    if not F.is_finite:
        return np.vectorize(lambda v: Fraction(int(v), den), otypes=[object])(num) if num.size else \
            np.zeros(num.shape, dtype=object)
    d = F.inv(F.from_int(den % F.p))
    return F.mul(F.from_int(np.asarray([int(v) % F.p for v in num.ravel()], dtype=np.int64)
                            .reshape(num.shape)), d)
