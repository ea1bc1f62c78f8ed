"""Lie algebras (and superalgebras) given by dense structure constants.

``C[i, j, k]`` is the coefficient of ``e_k`` in ``[e_i, e_j]``. Operators act
on column vectors, so ``ad(e_i)`` is ``C[i].T``. Over prime fields the
contractions go through float BLAS, which is exact for the sizes used here.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field as dc_field

import numpy as np

from .exactfield import Field, FieldError
from .linalg import Subspace, _rref_dense, nullspace, rank, rref

__all__ = [
    "LieAlgebra",
    "JacobiReport",
    "jacobi_check",
    "ideal_closure",
    "center",
    "derived",
    "is_simple",
    "jordan_type",
    "sl2_decomposition_check",
    "spin",
    "irreducibility_certificate",
    "sl2_algebra",
    "subalgebra",
    "quotient",
    "grading_witness",
    "reduce_mod_prime",
    "centroid",
    "REDUCTION_PRIME",
]


class LieError(ValueError):
    pass


class LieAlgebra:
    """Structure constants over a field, with optional grading and parity labels.

    ``parity`` (0 even, 1 odd) turns this into a Lie superalgebra: brackets are
    then graded antisymmetric and the Jacobi check uses the super signs.
    """

    def __init__(self, F: Field, C, grades=None, parity=None, name=""):
        self.F = F
        self.C = np.asarray(C, dtype=F.dtype)
        n = self.C.shape[0]
        if self.C.shape != (n, n, n):
            raise LieError("structure constants must have shape (n, n, n)")
        self.n = n
        self.grades = None if grades is None else list(grades)
        self.parity = None if parity is None else np.asarray(parity, dtype=np.int64)
        self.name = name

    @property
    def dim(self):
        return self.n

    @property
    def is_super(self):
        return self.parity is not None and bool(np.any(self.parity))

    @property
    def superdim(self):
        if self.parity is None:
            return (self.n, 0)
        odd = int(self.parity.sum())
        return (self.n - odd, odd)

    def __repr__(self):
        if self.parity is not None:
            return f"LieAlgebra({self.name or 'super'}, superdim={self.superdim}, {self.F!r})"
        return f"LieAlgebra({self.name or 'lie'}, dim={self.n}, {self.F!r})"

    # -- bracket ------------------------------------------------------------------
    def bracket(self, x, y):
        F = self.F
        n = self.n
        x = np.asarray(x, dtype=F.dtype)
        y = np.asarray(y, dtype=F.dtype)
        xc = F.matmul(x, self.C.reshape(n, n * n)).reshape(x.shape[:-1] + (n, n))
        return F.sum(F.mul(xc, y[..., :, None]), axis=-2)

    def bracket_table(self, X, Y):
        """``out[a, b] = [X_a, Y_b]`` for row stacks ``X`` and ``Y``."""
        F, n = self.F, self.n
        X = np.asarray(X, dtype=F.dtype).reshape(-1, n)
        Y = np.asarray(Y, dtype=F.dtype).reshape(-1, n)
        xc = F.matmul(X, self.C.reshape(n, n * n)).reshape(X.shape[0], n, n)
        return F.matmul(np.broadcast_to(Y, (X.shape[0],) + Y.shape), xc)

    def ad(self, x):
        """Matrix of ``y -> [x, y]``."""
        n = self.n
        return self.F.matmul(np.asarray(x, dtype=self.F.dtype), self.C.reshape(n, n * n)).reshape(n, n).T.copy()

    def ad_basis(self):
        """``(n, n, n)`` stack of ``ad(e_i)``."""
        return self.C.transpose(0, 2, 1).copy()

    def basis_vec(self, i):
        v = self.F.zeros(self.n)
        v[i] = self.F.one
        return v

    def sparse_items(self):
        """``(i, j, k, c)`` for nonzero constants with ``i < j``, sorted."""
        F = self.F
        nz = np.argwhere(~F.is_zero(self.C))
        for i, j, k in nz:
            if i < j:
                yield int(i), int(j), int(k), self.C[i, j, k]

    # -- dump format ----------------------------------------------------------------
    def dumps(self, extra=None) -> str:
        header = {"kind": "super" if self.parity is not None else "lie", "dim": self.n,
                  "field": self.F.spec.to_json(), "name": self.name}
        if self.grades is not None:
            header["grades"] = self.grades
        if self.parity is not None:
            header["parity"] = [int(p) for p in self.parity]
            # odd-odd brackets are symmetric; the diagonal is stored too
        if extra:
            header.update(extra)
        lines = [json.dumps(header, sort_keys=True)]
        for i, j, k, c in self._dump_items():
            lines.append(f"{i} {j} {k} {self.F.fmt(c)}")
        return "\n".join(lines) + "\n"

    def _dump_items(self):
        F = self.F
        nz = np.argwhere(~F.is_zero(self.C))
        for i, j, k in nz:
            sym = self.parity is not None and self.parity[i] == 1 and self.parity[j] == 1
            if i < j or (sym and i == j):
                yield int(i), int(j), int(k), self.C[i, j, k]

    @classmethod
    def loads(cls, text: str) -> "LieAlgebra":
        from .exactfield import FieldSpec, make_field

        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise LieError("empty dump")
        try:
            header = json.loads(lines[0])
            F = make_field(FieldSpec.from_json(header["field"]))
            n = int(header["dim"])
        except (ValueError, KeyError, TypeError) as exc:
            raise LieError(f"bad dump header: {exc}") from exc
        parity = header.get("parity")
        par = None if parity is None else np.asarray(parity, dtype=np.int64)
        C = F.zeros((n, n, n))
        for ln in lines[1:]:
            parts = ln.split()
            if len(parts) != 4:
                raise LieError(f"bad dump line: {ln!r}")
            i, j, k = (int(p) for p in parts[:3])
            if not (0 <= i < n and 0 <= j < n and 0 <= k < n):
                raise LieError(f"index out of range: {ln!r}")
            c = F.parse_scalar(parts[3])
            C[i, j, k] = c
            if i != j:
                sym = par is not None and par[i] == 1 and par[j] == 1
                C[j, i, k] = c if sym else F.neg(c)
        return cls(F, C, grades=header.get("grades"), parity=par, name=header.get("name", ""))


# -- Jacobi --------------------------------------------------------------------------


@dataclass
class JacobiReport:
    passed: bool
    mode: str
    checked: int
    witness: tuple | None = None
    seed: int | None = None
    antisymmetry: bool = True
    notes: list = dc_field(default_factory=list)

    def to_json(self):
        out = {"jacobi": "pass" if self.passed else "fail", "mode": self.mode, "checked": self.checked}
        if self.seed is not None:
            out["seed"] = self.seed
        if self.witness is not None:
            out["witness"] = list(self.witness)
        if not self.antisymmetry:
            out["antisymmetry"] = "fail"
        return out


def _float_kind(F, n, C=None):
    """Float type for exact BLAS contractions, or None.

    Over ``GF(p^k)`` this applies when every constant lies in the prime field
    (codes below ``p``), where the arithmetic is that of ``GF(p)``.
    """
    prime_codes = F.is_finite and (F.k == 1 or (C is not None and int(C.max(initial=0)) < F.p))
    if prime_codes:
        if n * (F.p - 1) ** 2 * 3 < 2**24:
            return np.float32
        if n * (F.p - 1) ** 2 * 3 < 2**53:
            return np.float64
    return None


def _signs(L):
    if L.parity is None:
        return np.ones((L.n, L.n), dtype=np.int64)
    p = L.parity
    return np.where(np.outer(p, p) == 1, -1, 1)


def antisymmetry_witness(L):
    """First ``(i, j)`` violating ``[e_i, e_j] = -(-1)^{|i||j|} [e_j, e_i]``, or None."""
    F = L.F
    sg = _signs(L)
    Ct = L.C.transpose(1, 0, 2)
    want = np.where((sg == 1)[:, :, None], F.neg(Ct), Ct)
    bad = np.argwhere(~F.is_zero(F.sub(L.C, want)))
    if len(bad):
        i, j, _ = bad[0]
        return int(i), int(j)
    return None


def _integer_multiple(C):
    """``D * C`` as int64 for a common denominator ``D`` of rational constants, or None."""
    flat = C.ravel()
    den = math.lcm(*{int(x.denominator) for x in flat}) if flat.size else 1
    vals = [int(x.numerator) * (den // int(x.denominator)) for x in flat]
    if any(abs(v) >= 2**62 for v in vals):
        return None
    return np.asarray(vals, dtype=np.int64).reshape(C.shape)


def _jacobi_float(C, sg, p):
    """Full-mode derivation identity through BLAS; residues taken mod ``p`` unless None."""
    n = C.shape[0]
    Cjk_m = C.reshape(n * n, n)
    C_m_kr = C.reshape(n, n * n)
    C_m_jr = C.transpose(1, 0, 2).reshape(n, n * n)
    for i in range(n):
        Ci = C[i]
        y1 = (Cjk_m @ Ci).reshape(n, n, n)  # [e_i, [e_j, e_k]]
        y2 = (Ci @ C_m_kr).reshape(n, n, n)  # [[e_i, e_j], e_k]
        y3 = (Ci @ C_m_jr).reshape(n, n, n).transpose(1, 0, 2)  # [e_j, [e_i, e_k]]
        res = y1 - y2 - y3 * sg[i][:, None, None].astype(C.dtype)
        if p is not None:
            res = np.fmod(res, p)
        if np.any(res):
            j, k, _ = np.argwhere(res)[0]
            return JacobiReport(False, "full", i + 1, witness=(i, int(j), int(k)))
    return JacobiReport(True, "full", n)


def jacobi_check(L: LieAlgebra, mode="full", count=1000, seed=0) -> JacobiReport:
    """Jacobi (or super-Jacobi) identity on all basis triples or on random triples.

    Full mode checks that every ``ad(e_i)`` is a (super)derivation:
    ``[e_i, [e_j, e_k]] = [[e_i, e_j], e_k] + s [e_j, [e_i, e_k]]`` with
    ``s = (-1)^{|i||j|}``, which is equivalent to the identity on all triples.
    """
    F = L.F
    n = L.n
    anti = antisymmetry_witness(L)
    if anti is not None:
        return JacobiReport(False, mode, 0, witness=(anti[0], anti[1], -1), antisymmetry=False,
                            seed=seed if mode == "sampled" else None)
    if mode == "sampled":
        return _jacobi_sampled(L, count, seed)
    if mode != "full":
        raise ValueError(f"unknown mode {mode!r}")
    sg = _signs(L)
    kind = _float_kind(F, n, L.C)
    if kind is not None:
        return _jacobi_float(L.C.astype(kind), sg, F.p)
    if not F.is_finite:
        Z = _integer_multiple(L.C)
        if Z is not None and n * int(np.abs(Z).max(initial=0)) ** 2 * 3 < 2**53:
            # the identity is homogeneous in C, so a common denominator can be cleared
            return _jacobi_float(Z.astype(np.float64), sg, None)
    # generic path: one derivation identity per i through the field's matmul
    for i in range(n):
        Ci = L.C[i]
        y1 = F.matmul(L.C.reshape(n * n, n), Ci).reshape(n, n, n)
        y2 = F.matmul(Ci, L.C.reshape(n, n * n)).reshape(n, n, n)
        y3 = F.matmul(Ci, L.C.transpose(1, 0, 2).reshape(n, n * n)).reshape(n, n, n).transpose(1, 0, 2)
        y3 = np.where((sg[i] == 1)[:, None, None], y3, F.neg(y3))
        res = F.sub(F.sub(y1, y2), y3)
        if not F.all_zero(res):
            j, k, _ = np.argwhere(~F.is_zero(res))[0]
            return JacobiReport(False, "full", i + 1, witness=(i, int(j), int(k)))
    return JacobiReport(True, "full", n)


def grading_witness(L: LieAlgebra):
    """A triple ``(i, j, k)`` with ``C[i, j, k] != 0`` and ``g_i + g_j != g_k``, or None."""
    if L.grades is None:
        return None
    g = np.asarray(L.grades)
    nz = np.argwhere(~L.F.is_zero(L.C))
    if len(nz) == 0:
        return None
    bad = nz[g[nz[:, 0]] + g[nz[:, 1]] != g[nz[:, 2]]]
    return tuple(int(t) for t in bad[0]) if len(bad) else None


def _sparse_combine(F, U, idx, M):
    """``out[b] = sum_m U[b, m] M[idx[b], m, :]`` using only the nonzeros of ``U``."""
    out = F.zeros((U.shape[0], M.shape[2]))
    bi, ms = np.nonzero(~F.is_zero(U))
    if len(bi) == 0:
        return out
    starts = np.searchsorted(bi, np.arange(U.shape[0]))
    slot = np.arange(len(bi)) - starts[bi]
    for s in range(int(slot.max()) + 1):
        sel = slot == s
        rows, cols = bi[sel], ms[sel]
        out[rows] = F.add(out[rows], F.mul(U[rows, cols][:, None], M[idx[rows], cols]))
    return out


def _jacobi_sampled(L, count, seed, batch=2048):
    """Random basis triples ``(i, j, k)``; the witness is the first failing triple.

    Basis vectors are homogeneous, so the super signs are those of full mode.
    The contractions only touch the nonzero structure constants.
    """
    F = L.F
    rng = np.random.default_rng(seed)
    n = L.n
    C = L.C
    Ct = np.ascontiguousarray(C.transpose(1, 0, 2))
    sg = _signs(L)
    done = 0
    while done < count:
        m = min(batch, count - done)
        i, j, k = rng.integers(0, n, size=(3, m))
        t1 = _sparse_combine(F, C[j, k], i, C)  # [e_i, [e_j, e_k]]
        t2 = _sparse_combine(F, C[i, j], k, Ct)  # [[e_i, e_j], e_k]
        t3 = _sparse_combine(F, C[i, k], j, C)  # [e_j, [e_i, e_k]]
        t3 = np.where((sg[i, j] == 1)[:, None], t3, F.neg(t3))
        res = F.sub(F.sub(t1, t2), t3)
        bad = np.nonzero(~np.all(F.is_zero(res), axis=1))[0]
        if len(bad):
            b0 = int(bad[0])
            return JacobiReport(False, "sampled", done + b0 + 1,
                                witness=(int(i[b0]), int(j[b0]), int(k[b0])), seed=seed)
        done += m
    return JacobiReport(True, "sampled", count, seed=seed)


# -- subspaces -----------------------------------------------------------------------


def _images_under(F, gens_T, W):
    """Rows ``W @ G^T`` for each operator ``G`` (given stacked as ``gens_T[g] = G^T``)."""
    g, n, _ = gens_T.shape
    cat = gens_T.transpose(1, 0, 2).reshape(n, g * n)
    return F.matmul(W, cat).reshape(W.shape[0] * g, n)


def spin(F: Field, ops, seeds, limit=None):
    """Smallest subspace containing ``seeds`` (rows) and stable under ``ops``.

    ``ops`` is a ``(g, n, n)`` stack of column-convention matrices.
    Stops early once the dimension exceeds ``limit``.
    """
    ops = np.asarray(ops, dtype=F.dtype)
    n = ops.shape[1]
    gens_T = ops.transpose(0, 2, 1)
    sub = Subspace(F, n)
    frontier = np.asarray(seeds, dtype=F.dtype).reshape(-1, n)
    while frontier.shape[0]:
        rest = sub.reduce(frontier)
        keep = ~np.all(F.is_zero(rest), axis=1)
        if not np.any(keep):
            break
        new, _ = rref(F, rest[keep])
        sub = sub.extend(new)
        if sub.dim == n or (limit is not None and sub.dim > limit):
            break
        frontier = _images_under(F, gens_T, new)
    return sub


def ideal_closure(L: LieAlgebra, seed) -> Subspace:
    """Smallest ideal containing the rows of ``seed``."""
    return spin(L.F, L.ad_basis(), seed)


def center(L: LieAlgebra):
    """Rows spanning ``{x : [x, L] = 0}``."""
    n = L.n
    return nullspace(L.F, L.C.reshape(n, n * n).T)


def subalgebra(L: LieAlgebra, rows, name="") -> LieAlgebra:
    """Structure constants on the span of independent rows closed under the bracket."""
    F = L.F
    rows = np.asarray(rows, dtype=F.dtype)
    k = rows.shape[0]
    if k == 0:
        return LieAlgebra(F, F.zeros((0, 0, 0)), name=name)
    from .linalg import express

    try:
        C = express(F, rows, L.bracket_table(rows, rows).reshape(k * k, L.n)).reshape(k, k, k)
    except FieldError as exc:
        raise LieError("rows do not span a subalgebra") from exc
    return LieAlgebra(F, C, name=name)


def quotient(L: LieAlgebra, ideal):
    """``L / I`` on the basis vectors outside the pivots of ``I``.

    Returns ``(Q, project)`` where ``project`` maps rows of ``L`` to ``Q``.
    """
    F, n = L.F, L.n
    I, piv = rref(F, np.asarray(ideal, dtype=F.dtype)) if len(ideal) else (F.zeros((0, n)), [])
    keep = [c for c in range(n) if c not in set(piv)]

    def project(X):
        X = np.asarray(X, dtype=F.dtype)
        if len(piv):
            X = F.sub(X, F.matmul(X[..., piv], I))
        return X[..., keep]

    C = project(L.C[np.ix_(keep, keep)])
    grades = None if L.grades is None else [L.grades[c] for c in keep]
    parity = None if L.parity is None else L.parity[keep]
    Q = LieAlgebra(F, C, grades=grades, parity=parity, name=L.name)
    return Q, project


def derived(L: LieAlgebra):
    n = L.n
    return rref(L.F, L.C.reshape(n * n, n))[0]


def jordan_type(F: Field, f):
    """Partition of a nilpotent operator as sorted ``[(size, count), ...]`` (largest first)."""
    f = np.asarray(f, dtype=F.dtype)
    n = f.shape[0]
    ranks = [n]
    P = F.eye(n)
    for _ in range(n):
        P = F.matmul(P, f)
        r = rank(F, P)
        ranks.append(r)
        if r == 0:
            break
    if ranks[-1] != 0:
        raise LieError("operator is not nilpotent")
    ranks.append(0)
    ge = [ranks[s - 1] - ranks[s] for s in range(1, len(ranks))]  # blocks of size >= s
    out = []
    for s in range(1, len(ge) + 1):
        exact = ge[s - 1] - (ge[s] if s < len(ge) else 0)
        if exact:
            out.append((s, exact))
    return sorted(out, reverse=True)


# -- simplicity ----------------------------------------------------------------------


@dataclass
class SimplicityReport:
    simple: bool
    method: str
    witness_dim: int | None = None
    witness: np.ndarray | None = None

    def __bool__(self):
        return self.simple


def irreducibility_certificate(F: Field, ops, rng, tries=400):
    """Norton's irreducibility test for the module spanned by the operators ``ops``.

    Returns ``(True, None)`` when irreducible and ``(False, rows)`` with rows
    spanning a proper nonzero invariant subspace otherwise. Returns None if no
    element with one-dimensional kernel was found (caller falls back).
    """
    ops = np.asarray(ops, dtype=F.dtype)
    g, n, _ = ops.shape
    if n == 0:
        return False, F.zeros((0, 0))
    if n == 1:
        return True, None
    for _ in range(tries):
        a, b, c = (F.random(g, rng) for _ in range(3))
        A = F.matmul(a, ops.reshape(g, n * n)).reshape(n, n)
        B = F.matmul(b, ops.reshape(g, n * n)).reshape(n, n)
        Cm = F.matmul(c, ops.reshape(g, n * n)).reshape(n, n)
        theta0 = F.add(F.matmul(A, B), Cm)
        for lam in _small_scalars(F, rng):
            theta = F.sub(theta0, F.mul(lam, F.eye(n)))
            K = nullspace(F, theta)
            if K.shape[0] != 1:
                continue
            sub = spin(F, ops, K)
            if sub.dim < n:
                return False, sub.basis
            Kt = nullspace(F, theta.T)
            dual = spin(F, ops.transpose(0, 2, 1), Kt)
            if dual.dim < n:
                return False, nullspace(F, dual.basis)
            return True, None
    return None


def _small_scalars(F, rng):
    if F.is_finite and F.order <= 27:
        return list(F.elements())
    return [F.zero] + [F.random((), rng) for _ in range(4)]


# A prime for reductions of rational algebras; 7 divides no structural
# denominator of the algebras built here and lets Norton's test enumerate scalars.
REDUCTION_PRIME = 7


def reduce_mod_prime(L: LieAlgebra, q=REDUCTION_PRIME):
    """The reduction of ``D * C`` modulo ``q`` for rational ``L``, or None.

    ``D`` clears denominators, so the integer span of the basis is closed under
    ``D [ , ]``, which has the same ideals as ``[ , ]``. A proper ideal over
    the rationals meets this lattice in a saturated sublattice whose reduction
    is a proper ideal mod ``q`` of the same dimension; so simplicity mod ``q``
    implies simplicity, and the center mod ``q`` bounds the center.
    """
    from .exactfield import GF

    Z = _integer_multiple(L.C)
    if Z is None:
        return None
    Fq = GF(q)
    return LieAlgebra(Fq, Fq.from_int(Z), grades=L.grades, parity=L.parity, name=L.name)


def _simple_by_reduction(L, seed):
    Lq = reduce_mod_prime(L)
    if Lq is None:
        return None
    try:
        if is_simple(Lq, seed=seed).simple:
            return SimplicityReport(True, f"reduction mod {REDUCTION_PRIME}")
    except LieError:
        return None
    return None


def commutant(F: Field, ops):
    """Basis of ``{g : g A = A g for A in ops}`` as ``(k, n, n)``."""
    n = ops.shape[-1]
    eye = F.eye(n)
    blocks = []
    for A in ops:
        left = F.mul(eye[:, None, :, None], A.T[None, :, None, :])
        right = F.mul(A[:, None, :, None], eye[None, :, None, :])
        blocks.append(F.sub(left, right).reshape(n * n, n * n))
    return nullspace(F, np.concatenate(blocks, axis=0)).reshape(-1, n, n)


def centroid(L: LieAlgebra):
    """Basis of ``{g : g ad(x) = ad(x) g for all x}`` as ``(k, n, n)``."""
    return commutant(L.F, L.ad_basis())


def _ideal_from_commutant(L, seed):
    """A proper ideal from an eigenspace of an operator commuting with two random ``ad``.

    Two random elements usually generate ``L``, in which case the commutant is
    the centroid. The candidate is closed to an ideal before it is returned.
    """
    from fractions import Fraction

    F, n = L.F, L.n
    rng = np.random.default_rng(seed)
    gens = F.from_fractions(rng.integers(-3, 4, size=(2, n)))
    G = commutant(F, np.stack([L.ad(x) for x in gens]))
    if G.shape[0] <= 1:
        return None
    for g in G:
        approx = np.array([[float(v) for v in row] for row in g])
        for ev in np.linalg.eigvals(approx):
            if abs(ev.imag) > 1e-9:
                continue
            c = F.from_fraction(*Fraction(ev.real).limit_denominator(10**6).as_integer_ratio())
            K = nullspace(F, F.sub(g, F.mul(c, F.eye(n))))
            if 0 < K.shape[0] < n:
                I = ideal_closure(L, K)
                if I.dim < n:
                    return I.basis
    return None


def is_simple(L: LieAlgebra, seed=0) -> SimplicityReport:
    """No proper nonzero (graded) ideal and a nonzero bracket.

    Over the rationals a simple reduction modulo a prime is tried first
    (see :func:`reduce_mod_prime`). Uses Norton's test on the adjoint module; for superalgebras the parity
    operator is added so that invariant subspaces are graded ideals. Falls
    back to ideal closures from every basis vector if no certificate element
    is found.
    """
    F = L.F
    n = L.n
    if n == 0 or F.all_zero(L.C):
        return SimplicityReport(False, "abelian")
    if not F.is_finite:
        rep = _simple_by_reduction(L, seed)
        if rep is not None:
            return rep
        Z = center(L)
        if Z.shape[0]:
            return SimplicityReport(False, "center", witness_dim=int(Z.shape[0]), witness=Z)
        K = _ideal_from_commutant(L, seed)
        if K is not None:
            return SimplicityReport(False, "centroid", witness_dim=int(K.shape[0]), witness=K)
    ops = L.ad_basis()
    if L.parity is not None:
        P = F.eye(n)
        P[L.parity == 1] = F.neg(P[L.parity == 1])
        ops = np.concatenate([ops, P[None]], axis=0)
    cert = irreducibility_certificate(F, ops, np.random.default_rng(seed))
    if cert is not None:
        ok, wit = cert
        if ok:
            return SimplicityReport(True, "norton")
        return SimplicityReport(False, "norton", witness_dim=int(wit.shape[0]), witness=wit)
    for i in range(n):
        sub = spin(F, ops, L.basis_vec(i)[None, :])
        if sub.dim < n:
            return SimplicityReport(False, "closure", witness_dim=sub.dim, witness=sub.basis)
    # every basis vector generates L; an ideal avoiding the basis is still possible
    raise LieError("simplicity undecided: no certificate element found")


# -- sl2 triples --------------------------------------------------------------------


def weight_spaces(F: Field, h_ad):
    """Dimensions of the eigenspaces of ``h_ad`` for each field element (finite fields)."""
    out = {}
    n = h_ad.shape[0]
    total = 0
    for lam in F.elements():
        d = n - rank(F, F.sub(h_ad, F.mul(lam, F.eye(n))))
        if d:
            out[F.fmt(lam)] = d
            total += d
    return out, total


def sl2_decomposition_check(L: LieAlgebra, e, h, f):
    """Jordan type of ``ad e`` and ``ad h`` weight dimensions, with a consistency verdict.

    Each block of size ``s`` should carry weights ``s-1, s-3, ..., 1-s``
    read in the field.
    """
    F = L.F
    e, h, f = (np.asarray(x, dtype=F.dtype) for x in (e, h, f))
    two = F.from_int(2)
    if not (F.equal(L.bracket(h, e), F.mul(two, e)) and F.equal(L.bracket(h, f), F.neg(F.mul(two, f)))
            and F.equal(L.bracket(e, f), h)):
        raise LieError("(e, h, f) is not an sl2-triple")
    jt = jordan_type(F, L.ad(e))
    report = {"jordan_type": [[s, c] for s, c in jt]}
    if F.is_finite:
        weights, total = weight_spaces(F, L.ad(h))
        expect = {}
        for s, c in jt:
            for w in range(s - 1, -s, -2):
                key = F.fmt(F.from_int(w))
                expect[key] = expect.get(key, 0) + c
        report["weights"] = dict(sorted(weights.items()))
        report["consistent"] = total == L.n and weights == expect
    return report


def sl2_algebra(F: Field) -> LieAlgebra:
    """``sl2`` on the basis ``(e, h, f)``."""
    C = F.zeros((3, 3, 3))
    two = F.from_int(2)

    def put(i, j, k, c):
        C[i, j, k] = c
        C[j, i, k] = F.neg(c)

    put(1, 0, 0, two)
    put(1, 2, 2, F.neg(two))
    put(0, 2, 1, F.one)
    return LieAlgebra(F, C, name="sl2")


def report_json(L: LieAlgebra, jacobi: JacobiReport | None = None, simple=None, center_dim=None,
                jordan=None, extra=None) -> str:
    out = {}
    if jacobi is not None:
        out["jacobi"] = "pass" if jacobi.passed else "fail"
        if jacobi.witness is not None:
            out["witness"] = list(jacobi.witness)
    if center_dim is not None:
        out["center_dim"] = center_dim
    if simple is not None:
        out["simple"] = bool(simple)
    if jordan is not None:
        out["jordan_type"] = [[s, c] for s, c in jordan]
    out["dim"] = L.n
    if L.parity is not None:
        out["superdim"] = list(L.superdim)
    if extra:
        out.update(extra)
    return json.dumps(out, sort_keys=True)
