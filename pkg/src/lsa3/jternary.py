"""J-ternary algebras and the classical matrix models.

A J-ternary algebra is stored as its triple product tensor ``T[i, j, k, :] =
e_i e_j e_k``. The matrix models realize the associated Lie algebra as
``{a in M_N(C) : a Omega + Omega a* = 0}`` for an associative algebra ``C``
with involution, graded by ``h = diag(1, 0, -1)``; the module sits in degree 1
and the triple product is ``xyz = [[x, [f, y]], z]`` for the sl2-triple
``(e, h, f)`` through the semisimplifying element.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .composition import CompositionAlgebra, algebra_from_json, composition_algebra
from .exactfield import Field, FieldError
from .liecore import LieAlgebra, center, jordan_type, quotient, spin, subalgebra
from .linalg import express, intersect, inverse, nullspace, rref
from .semisimplify import SemisimplifyError, ss_lie
from .tensoralg import TensorAlgebra, build_tensor

__all__ = [
    "JTernaryError",
    "JTernarySystem",
    "AxiomReport",
    "check_axioms",
    "instr_inder",
    "MatrixModel",
    "build_degree_ge3",
    "build_degree_2",
    "model_from_json",
    "allison_certify",
    "semisimplify_model",
    "predicted_superdim",
]


class JTernaryError(ValueError):
    pass


# -- triple systems --------------------------------------------------------------------


class JTernarySystem:
    """A module with a trilinear product ``T[i, j, k, :] = e_i e_j e_k``."""

    def __init__(self, F: Field, T):
        T = np.asarray(T, dtype=F.dtype)
        m = T.shape[0]
        if T.shape != (m, m, m, m):
            raise JTernaryError("triple product must have shape (m, m, m, m)")
        self.F = F
        self.T = T
        self.m = m

    def L_batch(self, x, y):
        """``(b, m, m)`` stack with ``[b] @ z = x_b y_b z`` (row action on ``z``)."""
        F, m = self.F, self.m
        x, y = np.broadcast_arrays(np.asarray(x, dtype=F.dtype), np.asarray(y, dtype=F.dtype))
        x, y = x.reshape(-1, m), y.reshape(-1, m)
        xy = F.mul(x[:, :, None], y[:, None, :]).reshape(-1, m * m)
        return F.matmul(xy, self.T.reshape(m * m, m * m)).reshape(-1, m, m)

    def apply(self, ops, z):
        """Apply a ``(b, m, m)`` stack from :meth:`L_batch` to rows ``z``."""
        F = self.F
        z = np.asarray(z, dtype=F.dtype).reshape(ops.shape[0], 1, self.m)
        return F.matmul(z, ops)[:, 0, :]

    def product(self, x, y, z):
        """``xyz`` for batches of vectors (broadcast over leading axes)."""
        F, m = self.F, self.m
        x, y, z = np.broadcast_arrays(*(np.asarray(a, dtype=F.dtype) for a in (x, y, z)))
        lead = x.shape[:-1]
        x, y, z = (a.reshape(-1, m) for a in (x, y, z))
        out = F.zeros((x.shape[0], m))
        step = max(1, (1 << 22) // max(1, m * m))
        for k in range(0, x.shape[0], step):
            sl = slice(k, k + step)
            out[sl] = self.apply(self.L_batch(x[sl], y[sl]), z[sl])
        return out.reshape(lead + (m,))

    def L_op(self, x, y):
        """Matrix of ``z -> xyz``."""
        F, m = self.F, self.m
        x = np.asarray(x, dtype=F.dtype)
        y = np.asarray(y, dtype=F.dtype)
        xT = F.matmul(x, self.T.reshape(m, -1)).reshape(m, m, m)
        return F.matmul(y, xT.reshape(m, m * m)).reshape(m, m).T.copy()

    def bracket_op(self, x, y):
        """Matrix of ``z -> <x, y> z = yzx - xzy``."""
        F, m = self.F, self.m
        Z = F.eye(m)
        xs = np.broadcast_to(np.asarray(x, dtype=F.dtype), (m, m))
        ys = np.broadcast_to(np.asarray(y, dtype=F.dtype), (m, m))
        return F.sub(self.product(ys, Z, xs), self.product(xs, Z, ys)).T.copy()

    def L_ops(self):
        """``(m, m, m, m)`` stack: ``[i, j]`` is the matrix of ``L_{e_i, e_j}``."""
        return self.T.transpose(0, 1, 3, 2).copy()

    def bracket_ops(self):
        """``[i, j]`` is the matrix of ``<e_i, e_j>``."""
        F = self.F
        # <x, y> z = yzx - xzy; entry [out, z]
        a = self.T.transpose(2, 0, 3, 1)  # T[y, z, x, out] -> [x, y, out, z]
        b = self.T.transpose(0, 2, 3, 1)  # T[x, z, y, out] -> [x, y, out, z]
        return F.sub(a, b)


@dataclass
class AxiomReport:
    passed: bool
    mode: str
    checked: int
    witness: dict | None = None
    seed: int | None = None


def _axiom_residuals(S: JTernarySystem, x, y, u, v, w, z):
    """Residuals of both identities on batched arguments (``z`` feeds the second)."""
    F, L, ap = S.F, S.L_batch, S.apply
    Lxy, Luv = L(x, y), L(u, v)
    lhs = F.sub(ap(Lxy, ap(Luv, w)), ap(Luv, ap(Lxy, w)))
    rhs = F.add(ap(L(ap(Lxy, u), v), w), ap(L(u, ap(L(y, x), v)), w))
    r1 = F.sub(lhs, rhs)
    r2 = F.sub(F.sub(ap(Lxy, z), ap(L(z, y), x)), F.sub(ap(L(z, x), y), ap(L(x, z), y)))
    return r1, r2


def _residuals_chunked(S, args, step):
    F = S.F
    bad = []
    for k in range(0, args[0].shape[0], step):
        r1, r2 = _axiom_residuals(S, *(a[k:k + step] for a in args))
        fail = ~np.all(F.is_zero(r1), axis=-1) | ~np.all(F.is_zero(r2), axis=-1)
        bad.extend((np.nonzero(fail)[0] + k).tolist())
        if bad:
            break
    return bad


def check_axioms(S: JTernarySystem, exhaustive_limit=6, samples=10_000, seed=0) -> AxiomReport:
    """Both J-ternary identities, on all basis tuples when ``m <= exhaustive_limit``.

    The identities are multilinear, so basis tuples suffice for a proof. Larger
    systems are tested on ``samples`` seeded random tuples.
    """
    F, m = S.F, S.m
    if m == 0:
        return AxiomReport(True, "exhaustive", 0)
    step = max(1, (1 << 22) // (m * m))
    if m <= exhaustive_limit:
        I = F.eye(m)
        idx = np.array(list(itertools.product(range(m), repeat=5)))
        args = [I[idx[:, k]] for k in range(5)]
        bad = _residuals_chunked(S, args + [args[2]], step)
        if bad:
            return AxiomReport(False, "exhaustive", len(idx), {"basis": idx[bad[0]].tolist()})
        return AxiomReport(True, "exhaustive", len(idx))
    rng = np.random.default_rng(seed)
    args = [F.random((samples, m), rng) for _ in range(6)]
    bad = _residuals_chunked(S, args, step)
    if bad:
        return AxiomReport(False, "sampled", samples, {"sample": int(bad[0])}, seed)
    return AxiomReport(True, "sampled", samples, seed=seed)


@dataclass
class InStrInDer:
    instr: np.ndarray  # rows: flattened m x m operators
    inder: np.ndarray
    jordan: np.ndarray  # rows: flattened <x, y> operators
    unit: np.ndarray  # coefficients of the unit in ``jordan``

    @property
    def dims(self):
        return self.instr.shape[0], self.inder.shape[0], self.jordan.shape[0]


def instr_inder(S: JTernarySystem) -> InStrInDer:
    """Bases of ``InStr``, ``InDer_J`` and of ``J`` realized inside ``End(M)``.

    The unit of ``J`` is the identity operator, found in the span of the
    ``<x, y>``; ``s`` acts on ``<a, b>`` by ``<sa, b> + <a, sb>``.
    """
    F, m = S.F, S.m
    if m == 0 or F.all_zero(S.T):
        z = F.zeros((0, m * m))
        return InStrInDer(z, z, z, F.zeros(m * m))
    instr = rref(F, S.L_ops().reshape(m * m, m * m))[0]
    B = S.bracket_ops()
    jordan = rref(F, B.reshape(m * m, m * m))[0]
    if jordan.shape[0] == 0:
        raise JTernaryError("J is zero: <x, y> vanishes identically")
    # write the identity as sum_ij c_ij <e_i, e_j>
    Bflat = B.reshape(m * m, m * m)
    piv_rows = rref(F, Bflat.T)[1]
    G = Bflat[piv_rows]
    try:
        c_small = express(F, G, F.eye(m).reshape(1, -1))[0]
    except FieldError as exc:
        raise JTernaryError("J has no unit in the span of <x, y>") from exc
    pairs = [divmod(int(r), m) for r in piv_rows]
    unit = F.zeros(m * m)
    unit[piv_rows] = c_small
    # s . 1 = sum c_ij (<s e_i, e_j> + <e_i, s e_j>)
    r = instr.shape[0]
    acts = F.zeros((r, m * m))
    ops = instr.reshape(r, m, m)
    for (i, j), c in zip(pairs, c_small):
        if F.is_zero_scalar(c):
            continue
        si = ops[:, :, i]  # s e_i, one row per s
        sj = ops[:, :, j]
        # <a, e_j> is linear in a: sum_k a_k B[k, j]
        t1 = F.matmul(si, B[:, j].reshape(m, m * m))
        t2 = F.matmul(sj, B[i, :].reshape(m, m * m))
        acts = F.add(acts, F.mul(c, F.add(t1, t2)))
    ker = nullspace(F, acts.T)
    inder = F.matmul(ker, instr) if ker.shape[0] else F.zeros((0, m * m))
    return InStrInDer(instr, rref(F, inder)[0] if inder.shape[0] else inder, jordan, unit)


# -- matrix models -----------------------------------------------------------------------


@dataclass
class MatrixModel:
    """A Lie algebra of matrices over an associative algebra with involution.

    ``matrices`` rows are flattened ``(N, N, d)`` coefficient arrays spanning
    the subalgebra generated by the degree +-1 parts of the form algebra;
    ``lie`` is that subalgebra modulo its center (``center_dim``), graded by
    ``h``. ``e, h, f`` are coordinates in ``lie``.
    """

    kind: str
    params: dict
    F: Field
    mult: np.ndarray
    conj: np.ndarray
    N: int
    omega: np.ndarray  # (N, N, d)
    form_dim: int
    matrices: np.ndarray
    center_dim: int
    lie: LieAlgebra = field(repr=False)
    e: np.ndarray = field(repr=False)
    h: np.ndarray = field(repr=False)
    f: np.ndarray = field(repr=False)
    to_lie: object = field(repr=False, default=None)

    @property
    def d(self):
        return self.mult.shape[0]

    @property
    def dim(self):
        return self.lie.n

    @property
    def grades(self):
        return np.asarray(self.lie.grades)

    def grade_dims(self):
        g = self.grades
        return {k: int(np.sum(g == k)) for k in (-2, -1, 0, 1, 2)}

    def module(self):
        """Rows of ``lie`` coordinates spanning the degree-1 part."""
        idx = np.nonzero(self.grades == 1)[0]
        return self.F.eye(self.dim)[idx]

    def triple_system(self) -> JTernarySystem:
        """``xyz = [[x, [f, y]], z]`` on the degree-1 part."""
        F, L = self.F, self.lie
        n = L.n
        idx = np.nonzero(self.grades == 1)[0]
        m = len(idx)
        M = self.module()
        fm = L.bracket_table(self.f[None, :], M)[0]
        xy = L.bracket_table(M, fm).reshape(m * m, n)
        xyz = F.matmul(xy, L.C[:, idx, :].reshape(n, m * n)).reshape(m, m, m, n)
        if not F.all_zero(np.delete(xyz, idx, axis=-1)):
            raise JTernaryError("triple product leaves the degree-1 part")
        return JTernarySystem(F, xyz[..., idx])


def _mat_mul(R, mult, A, B):
    """Product of ``(..., N, N, d)`` matrices over the algebra with tensor ``mult``."""
    d = mult.shape[0]
    N = A.shape[-2]
    # sum_j sum_ab A[i, j, a] B[j, k, b] mult[a, b, :]
    AM = R.matmul(A.reshape(-1, d), mult.reshape(d, d * d)).reshape(A.shape[:-1] + (d, d))  # [.., i, j, b, m]
    lhs = np.moveaxis(AM, -1, -3).reshape(A.shape[:-3] + (N * d, N * d))  # rows (i, m), cols (j, b)
    Bt = np.moveaxis(B, -1, -2).reshape(B.shape[:-3] + (N * d, N))  # rows (j, b), cols k
    out = R.matmul(lhs, Bt).reshape(A.shape[:-3] + (N, d, N))
    return np.moveaxis(out, -2, -1).copy()


def _star(R, conj, A):
    """``a* = conj(a)^T`` for ``(..., N, N, d)`` arrays."""
    d = conj.shape[0]
    C = R.matmul(A.reshape(-1, d), conj.T).reshape(A.shape)
    return np.swapaxes(C, -2, -3).copy()


def _graded_rows(F, rows, degrees):
    """Homogeneous basis of the row span, given a degree per coordinate."""
    out, deg = [], []
    n = rows.shape[1]
    for k in sorted(set(degrees.tolist())):
        E = F.eye(n)[degrees == k]
        part = intersect(F, rows, E)
        out.append(part)
        deg += [k] * part.shape[0]
    basis = np.concatenate(out) if out else F.zeros((0, n))
    if basis.shape[0] != rows.shape[0]:
        raise JTernaryError("the span is not graded")
    return basis, np.array(deg, dtype=np.int64)


def _finish_model(kind, params, F, mult, conj, omega, e_mat, grade_vec):
    """Solve the form condition, pass to the algebra generated in degrees +-1 modulo
    its center, and complete ``e`` to an sl2-triple."""
    N = omega.shape[0]
    d = mult.shape[0]
    D = N * N * d
    E = F.eye(D).reshape(D, N, N, d)
    om = np.broadcast_to(omega, E.shape)
    cond = F.add(_mat_mul(F, mult, E, om), _mat_mul(F, mult, om, _star(F, conj, E)))
    form = nullspace(F, cond.reshape(D, D).T)
    # a_{ij} has degree g_i - g_j
    g = np.asarray(grade_vec)
    coord_deg = np.broadcast_to((g[:, None] - g[None, :])[:, :, None], (N, N, d)).reshape(-1)
    basis, grades = _split_by_degree(F, form, coord_deg)
    L0 = _lie_from_matrices(F, mult, basis, N)
    gen = np.nonzero(np.abs(grades) == 1)[0]
    sub = spin(F, L0.C[gen].transpose(0, 2, 1), F.eye(L0.n)[gen]).basis
    rows, rgrades = _graded_rows(F, sub, grades)
    L1 = subalgebra(L0, rows)
    L1.grades = rgrades.tolist()
    matrices = F.matmul(rows, basis)
    Z = center(L1)
    if Z.shape[0] and not F.all_zero(Z[:, rgrades != 0]):
        raise JTernaryError("center is not in degree 0")
    L, project = quotient(L1, Z)
    c0 = _coords_fn(F, basis)

    def to_lie(mats):
        X = c0(np.asarray(mats, dtype=F.dtype).reshape(-1, D))
        return project(express(F, rows, X))

    e = to_lie(e_mat)[0]
    h_mat = F.zeros((N, N, d))
    for i, gi in enumerate(g):
        h_mat[i, i, 0] = F.from_int(int(gi))
    h = to_lie(h_mat)[0]
    low = np.nonzero(np.asarray(L.grades) == -2)[0]
    x = _solve(F, L.ad(e)[:, low], h)
    f = F.zeros(L.n)
    f[low] = x
    two = F.from_int(2)
    if not (F.equal(L.bracket(h, e), F.mul(two, e)) and F.equal(L.bracket(h, f), F.neg(F.mul(two, f)))
            and F.equal(L.bracket(e, f), h)):
        raise JTernaryError("(e, h, f) is not an sl2-triple")
    return MatrixModel(kind, params, F, mult, conj, N, omega, form.shape[0], matrices, Z.shape[0], L, e, h, f,
                       to_lie)


def _split_by_degree(F, form, coord_deg):
    """Homogeneous basis of the form algebra: the condition is homogeneous, so each
    degree part of an element is again a solution."""
    parts, deg = [], []
    for k in (-2, -1, 0, 1, 2):
        mask = coord_deg == k
        P = form.copy()
        P[:, ~mask] = F.zero
        P = rref(F, P)[0]
        parts.append(P)
        deg += [k] * P.shape[0]
    basis = np.concatenate(parts)
    if basis.shape[0] != form.shape[0]:
        raise JTernaryError("the form algebra is not graded by h")
    return basis, np.array(deg, dtype=np.int64)


def _solve(F, A, b):
    """One solution of ``A @ x = b``."""
    aug = np.concatenate([A, b[:, None]], axis=1)
    R, piv = rref(F, aug)
    n = A.shape[1]
    if n in piv:
        raise JTernaryError("linear system is inconsistent")
    x = F.zeros(n)
    for i, c in enumerate(piv):
        x[c] = R[i, n]
    return x


def _coords_fn(F, basis):
    _, piv = rref(F, basis)
    Tinv = inverse(F, basis[:, piv])

    def coords(X):
        c = F.matmul(X[:, piv], Tinv)
        if not F.equal(F.matmul(c, basis), X):
            raise JTernaryError("matrix is outside the Lie algebra")
        return c

    return coords


def _lie_from_matrices(F, mult, basis, N):
    d = mult.shape[0]
    n = basis.shape[0]
    B = basis.reshape(n, N, N, d)
    coords = _coords_fn(F, basis)
    C = F.zeros((n, n, n))
    for i in range(n):
        Bi = np.broadcast_to(B[i], B.shape)
        comm = F.sub(_mat_mul(F, mult, Bi, B), _mat_mul(F, mult, B, Bi))
        C[i] = coords(comm.reshape(n, -1))
    return LieAlgebra(F, C)


def _symplectic(F, s):
    if s % 2:
        raise JTernaryError("the default J needs s even")
    J = F.zeros((s, s))
    k = s // 2
    J[:k, k:] = F.eye(k)
    J[k:, :k] = F.neg(F.eye(k))
    return J


def build_degree_ge3(F: Field, r: int, s: int, C: CompositionAlgebra, G=None, J=None) -> MatrixModel:
    """The model on ``M_{r x s}(C)`` inside ``M_{2r+s}(C)``.

    ``G`` is an invertible diagonal ``r x r`` matrix over the field (default
    identity) and ``J`` an invertible ``s x s`` matrix over ``C`` with
    ``J* = -J`` (default the standard symplectic block, entries in the field).
    The semisimplifying element is ``E_13(I_r)``.
    """
    d = C.dim
    if r < 3:
        raise JTernaryError("degree >= 3 models need r >= 3")
    if s < 1:
        raise JTernaryError("s must be positive")
    if not C.is_associative():
        raise JTernaryError("C must be associative")
    if d == 1 and s % 2:
        raise JTernaryError("s must be even when C is one-dimensional")
    G = F.eye(r) if G is None else np.asarray(G, dtype=F.dtype)
    if not F.all_zero(G - np.diag(np.diag(G))) or any(F.is_zero(np.diag(G))):
        raise JTernaryError("G must be invertible and diagonal")
    Gi = inverse(F, G)
    N = 2 * r + s
    omega = F.zeros((N, N, d))
    omega[:r, r + s:, 0] = F.neg(Gi)
    omega[r + s:, :r, 0] = Gi
    if J is None:
        omega[r:r + s, r:r + s, 0] = _symplectic(F, s)
    else:
        J = np.asarray(J, dtype=F.dtype)
        if J.shape == (s, s):
            J = np.concatenate([J[..., None], F.zeros((s, s, d - 1))], axis=-1)
        if not F.equal(_star(F, C.conj, J), F.neg(J)):
            raise JTernaryError("J must satisfy J* = -J")
        omega[r:r + s, r:r + s] = J
    e = F.zeros((N, N, d))
    e[:r, r + s:, 0] = F.eye(r)
    grade_vec = [1] * r + [0] * s + [-1] * r
    params = {"r": r, "s": s, "dimC": d}
    return _finish_model("ge3", params, F, C.mult, C.conj, omega, e, grade_vec)


def _algebra_parts(A):
    if isinstance(A, TensorAlgebra):
        return A.mult, A.conj, A.left
    return A.mult, A.conj, A


def build_degree_2(F: Field, n: int, A, v=None) -> MatrixModel:
    """The model on ``A^n`` inside ``M_{2+n}(A)``, ``A`` a product of associative composition algebras.

    The algebra is the derived algebra of ``{M : M Omega + Omega M* = 0}``.
    ``v`` is a skew invertible element of the first factor (default its first
    skew basis vector), and the semisimplifying element is ``E_13(v (x) 1)``.
    """
    if n < 1:
        raise JTernaryError("n must be positive")
    mult, conj, first = _algebra_parts(A)
    if isinstance(A, TensorAlgebra):
        if A.d1 == 2 and A.d2 == 2:
            raise JTernaryError("excluded shape E x E'")
        if not (A.left.is_associative() and A.right.is_associative()):
            raise JTernaryError("factors must be associative")
    elif not A.is_associative():
        raise JTernaryError("A must be associative")
    d = mult.shape[0]
    if d < 2:
        raise JTernaryError("A needs a skew element")
    if v is None:
        if isinstance(A, TensorAlgebra):
            if not A.left_skew_index:
                raise JTernaryError("the first factor has no skew elements")
            v = A.basis_vec(A.left_skew_index[0])
        else:
            v = A.basis_vec(1)
    v = np.asarray(v, dtype=F.dtype)
    if not F.equal(F.matmul(conj, v), F.neg(v)):
        raise JTernaryError("v must be skew")
    N = 2 + n
    omega = F.zeros((N, N, d))
    omega[0, N - 1, 0] = F.one
    omega[N - 1, 0, 0] = F.one
    for i in range(1, N - 1):
        omega[i, i, 0] = F.one
    e = F.zeros((N, N, d))
    e[0, N - 1] = v
    grade_vec = [1] + [0] * n + [-1]
    params = {"n": n, "dimA": d}
    return _finish_model("deg2", params, F, mult, conj, omega, e, grade_vec)


def _algebra_spec(F, obj):
    """A composition algebra (``{"base": ..., "doublings": [...]}`` or a doubling
    count) or a tensor product (``{"left": ..., "right": ...}``)."""
    if isinstance(obj, int):
        return composition_algebra(F, [1] * obj)
    if isinstance(obj, dict) and "left" in obj:
        return build_tensor(_algebra_spec(F, obj["left"]), _algebra_spec(F, obj["right"]))
    if isinstance(obj, dict):
        C = algebra_from_json(obj)
        if C.ring != F:
            raise JTernaryError("algebra spec and model field disagree")
        return C
    raise JTernaryError(f"bad algebra spec {obj!r}")


def model_from_json(F: Field, obj) -> MatrixModel:
    """``{"kind": "ge3", "r": 3, "s": 2, "C": {...}}`` or ``{"kind": "deg2", "n": 2, "A": {...}}``.

    ``G`` may be ``"identity"`` or a list of diagonal entries; only the
    symplectic ``J`` is accepted.
    """
    kind = obj.get("kind")
    try:
        if kind == "ge3":
            C = _algebra_spec(F, obj.get("C", 0))
            G = obj.get("G", "identity")
            G = None if G == "identity" else np.diag(F.from_int(np.asarray(G, dtype=np.int64)))
            if obj.get("J", "symplectic") != "symplectic":
                raise JTernaryError("only the symplectic J is supported in specs")
            return build_degree_ge3(F, int(obj["r"]), int(obj["s"]), C, G=G)
        if kind == "deg2":
            return build_degree_2(F, int(obj["n"]), _algebra_spec(F, obj.get("A", 2)))
    except KeyError as exc:
        raise JTernaryError(f"model spec is missing {exc}") from exc
    raise JTernaryError(f"unknown model kind {kind!r}")


@dataclass
class AllisonReport:
    jordan_type: list
    expected: list
    passed: bool


def allison_certify(model: MatrixModel) -> AllisonReport:
    """Jordan type of ``ad e`` against ``{3^dim J, 2^dim M, 1^rest}``."""
    gd = model.grade_dims()
    nJ, nM = gd[2], gd[1]
    rest = model.dim - 3 * nJ - 2 * nM
    expected = [(s, c) for s, c in ((3, nJ), (2, nM), (1, rest)) if c]
    jt = jordan_type(model.F, model.lie.ad(model.e))
    return AllisonReport(jt, expected, jt == expected)


def semisimplify_model(model: MatrixModel) -> LieAlgebra:
    return ss_lie(model.lie, model.e, model.h, model.f, name=f"ss/{model.kind}")


def _o(m):
    return m * (m - 1) // 2


def _sp(m):
    return m * (m + 1) // 2


def _sl(a, b, p=3):
    """``A(a-1, b-1)``: ``sl(a|b)``, or ``psl(a|b)`` when the identity is supertraceless."""
    even = a * a + b * b - 1
    return even - 1 if (a - b) % p == 0 else even, 2 * a * b


def predicted_superdim(kind: str, reading="consistent", **p):
    """``(label, (even, odd))`` for the superalgebra named for a matrix model.

    ``ge3`` takes ``r, s, dimC``; ``deg2`` takes ``n`` and ``A`` in
    ``{"E", "Q", "QE", "QQ"}``. With ``reading="literal"`` the names are taken
    literally; ``"consistent"`` differs in two families, where the literal
    odd dimension cannot equal the module dimension: quaternion ``C`` in degree
    >= 3 gives ``osp(2s|2r)`` and ``Q x Q'`` gives ``D(2n, 2)``.
    """
    if reading not in ("consistent", "literal"):
        raise ValueError(f"unknown reading {reading!r}")
    if kind == "ge3":
        r, s, d = p["r"], p["s"], p["dimC"]
        if d == 1:
            return f"osp({r}|{s})", (_o(r) + _sp(s), r * s)
        if d == 2:
            return f"A({r - 1},{s - 1})", _sl(r, s)
        if d == 4:
            if reading == "literal":
                return f"osp({4 * r}|{4 * s})", (_o(4 * r) + _sp(4 * s), 16 * r * s)
            return f"osp({2 * s}|{2 * r})", (_o(2 * s) + _sp(2 * r), 4 * r * s)
        raise ValueError("dimC must be 1, 2 or 4")
    if kind == "deg2":
        n, A = p["n"], p["A"]
        if A == "E":
            return f"A(0,{n - 1})", _sl(1, n)
        if A == "Q":
            return f"C({n + 1})", (1 + _sp(2 * n), 4 * n)
        if A in ("QE", "EQ"):
            return f"A(1,{2 * n - 1})", _sl(2, 2 * n)
        if A == "QQ":
            k = 3 if reading == "literal" else 2
            return f"D({2 * n},{k})", (_o(4 * n) + _sp(2 * k), 4 * n * 2 * k)
        raise ValueError(f"unknown algebra {A!r}")
    raise ValueError(f"unknown model kind {kind!r}")
