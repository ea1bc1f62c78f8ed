"""Exact row reduction, kernels and subspace bookkeeping over a :class:`Field`.

Vectors are rows. ``rref`` returns only the nonzero rows together with the
pivot columns; a :class:`Subspace` keeps that pair and answers membership and
coordinate queries by reading off pivot entries.
"""

from __future__ import annotations

import numpy as np

from .exactfield import Field, FieldError

__all__ = [
    "rref",
    "rank",
    "nullspace",
    "left_nullspace",
    "Subspace",
    "express",
    "inverse",
    "intersect",
]

_CHUNK = 1024


def _rref_dense(F: Field, A):
    A = np.array(A, dtype=F.dtype, copy=True)
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        col = F.is_zero(A[r:, c])
        nz = np.nonzero(~col)[0]
        if len(nz) == 0:
            continue
        i = r + nz[0]
        if i != r:
            A[[r, i]] = A[[i, r]]
        A[r] = F.mul(F.inv(A[r, c]), A[r])
        factors = A[:, c].copy()
        factors[r] = F.zero
        hit = np.nonzero(~F.is_zero(factors))[0]
        if len(hit):
            A[hit] = F.sub(A[hit], F.mul(factors[hit][:, None], A[r][None, :]))
        pivots.append(c)
        r += 1
    return A[:r], pivots


def _rref_rational(F: Field, A):
    import flint

    A = np.asarray(A, dtype=object)
    if A.size == 0:
        return F.zeros((0, A.shape[1])), []
    M = flint.fmpq_mat(A.shape[0], A.shape[1], [flint.fmpq(int(v.numerator), int(v.denominator))
                                                  for v in A.ravel()])
    R, r = M.rref()
    out = F.zeros((r, A.shape[1]))
    pivots = []
    table = R.table()
    for i in range(r):
        for j in range(A.shape[1]):
            v = table[i][j]
            out[i, j] = F.from_fraction(int(v.p), int(v.q))
        pivots.append(next(j for j in range(A.shape[1]) if out[i, j] != 0))
    return out, pivots


def rref(F: Field, A):
    """Reduced row echelon form (nonzero rows only) and pivot columns."""
    A = np.asarray(A, dtype=F.dtype)
    if A.ndim != 2:
        raise ValueError("rref expects a matrix")
    if not F.is_finite:
        return _rref_rational(F, A)
    if A.shape[0] <= _CHUNK:
        return _rref_dense(F, A)
    # tall matrices: fold row chunks into the running echelon basis
    sub = Subspace(F, A.shape[1])
    for start in range(0, A.shape[0], _CHUNK):
        sub = sub.extend(A[start:start + _CHUNK])
        if sub.dim == A.shape[1]:
            break
    return sub.basis, list(sub.pivots)


def rank(F: Field, A) -> int:
    A = np.asarray(A, dtype=F.dtype)
    if A.size == 0:
        return 0
    return len(rref(F, A)[1])


def nullspace(F: Field, A):
    """Rows spanning ``{x : A @ x = 0}``."""
    A = np.asarray(A, dtype=F.dtype)
    n = A.shape[1]
    R, piv = rref(F, A) if A.shape[0] else (F.zeros((0, n)), [])
    free = [c for c in range(n) if c not in set(piv)]
    N = F.zeros((len(free), n))
    for idx, fcol in enumerate(free):
        N[idx, fcol] = F.one
        for i, pcol in enumerate(piv):
            N[idx, pcol] = F.neg(R[i, fcol])
    return N


def left_nullspace(F: Field, A):
    """Rows spanning ``{y : y @ A = 0}``."""
    return nullspace(F, np.asarray(A, dtype=F.dtype).T)


def inverse(F: Field, M):
    M = np.asarray(M, dtype=F.dtype)
    n = M.shape[0]
    if M.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    aug = np.concatenate([M, F.eye(n)], axis=1)
    R, piv = _rref_dense(F, aug) if F.is_finite else _rref_rational(F, aug)
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise FieldError("matrix is singular")
    return R[:n, n:]


def express(F: Field, basis, V):
    """Coefficients ``C`` with ``C @ basis == V`` for rows of ``V`` in the row span.

    ``basis`` must have independent rows. Raises :class:`FieldError` otherwise.
    """
    basis = np.asarray(basis, dtype=F.dtype)
    V = np.asarray(V, dtype=F.dtype)
    single = V.ndim == 1
    if single:
        V = V[None, :]
    r = basis.shape[0]
    if r == 0:
        if not F.all_zero(V):
            raise FieldError("vector not in the span")
        return F.zeros((V.shape[0], 0))[0] if single else F.zeros((V.shape[0], 0))
    R, piv = rref(F, basis)
    if len(piv) != r:
        raise FieldError("basis rows are dependent")
    # coordinates w.r.t. R, then change of basis R -> basis
    cR = V[:, piv]
    if not F.all_zero(F.sub(F.matmul(cR, R), V)):
        raise FieldError("vector not in the span")
    T = inverse(F, basis[:, piv])  # basis = B_p-block @ R  =>  R = T @ basis
    C = F.matmul(cR, T)
    return C[0] if single else C


def intersect(F: Field, U, W):
    """Rows spanning the intersection of two row spaces."""
    U = np.asarray(U, dtype=F.dtype)
    W = np.asarray(W, dtype=F.dtype)
    if U.shape[0] == 0 or W.shape[0] == 0:
        return F.zeros((0, U.shape[1]))
    # solve a U = b W
    K = left_nullspace(F, np.concatenate([U, W], axis=0))
    vecs = F.matmul(K[:, :U.shape[0]], U)
    if vecs.shape[0] == 0:
        return vecs
    return rref(F, vecs)[0]


class Subspace:
    """Row space kept in reduced echelon form.

    ``extend`` returns a new subspace; instances are not mutated.
    """

    def __init__(self, F: Field, ambient: int, basis=None, pivots=None):
        self.F = F
        self.ambient = ambient
        if basis is None:
            basis = F.zeros((0, ambient))
            pivots = []
        self.basis = basis
        self.pivots = tuple(pivots)

    @classmethod
    def span(cls, F: Field, vectors, ambient=None):
        vectors = np.asarray(vectors, dtype=F.dtype)
        if ambient is None:
            ambient = vectors.shape[-1]
        if vectors.size == 0:
            return cls(F, ambient)
        return cls(F, ambient).extend(vectors)

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def __len__(self):
        return self.dim

    def reduce(self, V):
        """Residues of rows of ``V`` after clearing the pivot columns."""
        F = self.F
        V = np.asarray(V, dtype=F.dtype)
        if self.dim == 0:
            return V.copy()
        coeff = V[..., list(self.pivots)]
        return F.sub(V, F.matmul(coeff, self.basis))

    def contains(self, V) -> bool:
        return self.F.all_zero(self.reduce(V))

    def coords(self, V):
        """Coordinates w.r.t. ``self.basis``; raises if some row is outside."""
        V = np.asarray(V, dtype=self.F.dtype)
        if not self.contains(V):
            raise FieldError("vector not in the subspace")
        return V[..., list(self.pivots)].copy()

    def extend(self, V) -> "Subspace":
        F = self.F
        V = np.asarray(V, dtype=F.dtype)
        if V.ndim == 1:
            V = V[None, :]
        if V.shape[0] == 0:
            return self
        rest = self.reduce(V)
        keep = ~np.all(F.is_zero(rest), axis=1)
        if not np.any(keep):
            return self
        if F.is_finite:
            R2, piv2 = _rref_dense(F, rest[keep])
        else:
            R2, piv2 = _rref_rational(F, rest[keep])
        if not piv2:
            return self
        B = self.basis
        if self.dim:
            B = F.sub(B, F.matmul(B[:, piv2], R2))
        allrows = np.concatenate([B, R2], axis=0)
        allpiv = list(self.pivots) + list(piv2)
        order = np.argsort(allpiv)
        return Subspace(F, self.ambient, allrows[order], [allpiv[i] for i in order])

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient})"
