"""V-operators, the inner structure algebra D0, and the 5-graded Lie algebra.

For ``A = O1 (x) O2`` the Lie algebra lives on ``S- + A- + D0 + A+ + S+`` with

* ``[d, x+] = (d x)+``, ``[d, y-] = (d^eps y)-``, ``[d, s+] = (d^delta s)+``,
  ``[d, t-] = (d^{eps delta} t)-`` and the commutator on ``D0``;
* ``[x+, y-] = V_{x,y}``, ``[s+, t-] = L_s L_t``, ``[s+, y-] = (s y)+``,
  ``[t-, x+] = (t x)-``;
* ``[x+, x'+] = c psi(x, x')+`` and ``[y-, y'-] = c' psi(y, y')-`` with
  ``psi(x, y) = x ybar - y xbar`` and scalars fitted from the Jacobi identity.

Two versions of ``D0`` are supported. The *image* form is the span of the
operators ``V_{x,y}`` inside ``End(A)`` over the field. The *integral* form is
the integer span of the ``V_{e_i,e_j}`` for the integer lift of ``A``, reduced
into the field afterwards; in characteristic 3 it is one dimension larger
than the image for the shapes containing a binarion factor, and that extra
class is central.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .composition import CompositionError
from .exactfield import Field, FieldError, ZZ
from .lattice import IntegerSpan, reduce_fraction_array
from .liecore import LieAlgebra, LieError, jacobi_check
from .linalg import Subspace, nullspace, rank, rref
from .tensoralg import LinOp, TensorAlgebra, build_tensor

__all__ = [
    "VOperator",
    "v_op",
    "v_generators",
    "epsilon_closed",
    "delta_closed",
    "InnerStructureAlgebra",
    "span_D0",
    "decompose_D0",
    "GradedLieAlgebra",
    "build_graded_lie",
    "default_v",
    "StructurableError",
]


class StructurableError(ValueError):
    pass


# -- batched operator helpers ---------------------------------------------------------


def _L_batch(T: TensorAlgebra, X):
    """``(m, n, n)`` stack of ``L_x`` for rows ``x`` of ``X``."""
    R = T.ring
    n = T.dim
    X = np.asarray(X, dtype=R.dtype).reshape(-1, n)
    return R.matmul(X, T.mult.reshape(n, n * n)).reshape(-1, n, n).transpose(0, 2, 1)


def _R_batch(T: TensorAlgebra, X):
    R = T.ring
    n = T.dim
    X = np.asarray(X, dtype=R.dtype).reshape(-1, n)
    return R.matmul(X, T.mult.transpose(1, 0, 2).reshape(n, n * n)).reshape(-1, n, n).transpose(0, 2, 1)


def _bmm(R, A, B):
    """Batched matrix product ``A[k] @ B[k]``."""
    A = np.asarray(A, dtype=R.dtype)
    B = np.asarray(B, dtype=R.dtype)
    if A.shape[0] == 0:
        return R.zeros((0, A.shape[1], B.shape[2]))
    if R.dtype != object and getattr(R, "k", 1) == 1:
        return R.matmul(A, B)
    return np.stack([R.matmul(a, b) for a, b in zip(A, B)])


@dataclass(frozen=True)
class VOperator:
    """``V_{x,y} z = (x ybar) z + (z ybar) x - (z xbar) y`` with its generator record."""

    op: LinOp
    x: np.ndarray | None = None
    y: np.ndarray | None = None

    @property
    def matrix(self):
        return self.op.matrix


def v_matrix(T: TensorAlgebra, x, y):
    R = T.ring
    return R.sub(R.add(T.L(T.mul(x, T.bar(y))), R.matmul(T.R(x), T.R(T.bar(y)))),
                 R.matmul(T.R(y), T.R(T.bar(x))))


def v_op(T: TensorAlgebra, x, y) -> VOperator:
    x = np.asarray(x, dtype=T.ring.dtype)
    y = np.asarray(y, dtype=T.ring.dtype)
    return VOperator(LinOp(T.ring, v_matrix(T, x, y)), x.copy(), y.copy())


def v_generators(T: TensorAlgebra):
    """``G[i, j] = V_{e_i, e_j}`` as an ``(n, n, n, n)`` array."""
    R = T.ring
    n = T.dim
    M = T.mult
    K = T.conj
    # W[i, j] = e_i * bar(e_j) = sum_q K[q, j] M[i, q, :]
    MK = R.matmul(K.T, M.transpose(1, 0, 2).reshape(n, n * n)).reshape(n, n, n).transpose(1, 0, 2)
    # term1[i, j][k, l] = sum_p W[i, j, p] M[p, l, k]
    t1 = R.matmul(MK.reshape(n * n, n), M.reshape(n, n * n)).reshape(n, n, n, n).transpose(0, 1, 3, 2)
    # U[l, j, p] = (e_l bar(e_j))_p = MK[l, j, p]; term2[i, j][k, l] = sum_p U[l, j, p] M[p, i, k]
    Mi = M.reshape(n, n * n)  # [p, (i, k)]
    UM = R.matmul(MK.reshape(n * n, n), Mi).reshape(n, n, n, n)  # [l, j, i, k]
    t2 = UM.transpose(2, 1, 3, 0)
    t3 = UM.transpose(1, 2, 3, 0)  # [l, i, j, k] -> [i, j, k, l] with roles swapped
    return R.sub(R.add(t1, t2), t3)


def epsilon_closed(T: TensorAlgebra, ops):
    """``d^eps = d - L_{d(1) + bar(d(1))}``, for a stack of operators in ``D0``."""
    R = T.ring
    ops = np.asarray(ops, dtype=R.dtype)
    d1 = ops[:, :, 0]
    return R.sub(ops, _L_batch(T, R.add(d1, T.bar(d1))))


def delta_closed(T: TensorAlgebra, ops):
    """``d^delta`` on ``S``: ``s -> d(s) + s bar(d(1))``, in ``S`` coordinates."""
    R = T.ring
    ops = np.asarray(ops, dtype=R.dtype)
    full = R.add(ops, _R_batch(T, T.bar(ops[:, :, 0])))
    idx = T.skew_index
    return full[:, idx][:, :, idx]


def _psi_table(T: TensorAlgebra):
    """``P[a, b] = e_a bar(e_b) - e_b bar(e_a)``."""
    R = T.ring
    n = T.dim
    MK = R.matmul(T.conj.T, T.mult.transpose(1, 0, 2).reshape(n, n * n)).reshape(n, n, n).transpose(1, 0, 2)
    return R.sub(MK, MK.transpose(1, 0, 2))


def _delta_rule(T: TensorAlgebra, op):
    """``Q[a, b] = psi(d e_a, e_b) + psi(e_a, d e_b)`` for one operator ``d``."""
    R = T.ring
    n = T.dim
    TE = op.T  # rows d(e_a)
    MK = R.matmul(T.conj.T, T.mult.transpose(1, 0, 2).reshape(n, n * n)).reshape(n, n, n).transpose(1, 0, 2)
    # P1[a, b] = d(e_a) bar(e_b); P2[a, b] = e_b bar(d(e_a))
    P1 = R.matmul(TE, MK.reshape(n, n * n)).reshape(n, n, n)
    P2 = R.matmul(T.bar(TE), T.mult.transpose(1, 0, 2).reshape(n, n * n)).reshape(n, n, n)
    return R.add(R.sub(P1, P2), R.sub(P2.transpose(1, 0, 2), P1.transpose(1, 0, 2)))


# -- D0 ------------------------------------------------------------------------


class InnerStructureAlgebra:
    """``D0 = span{V_{x,y}}`` with the maps ``eps`` and ``delta``.

    ``form="image"`` works with operators over the field; ``form="integral"``
    keeps a lattice basis over the integers and reduces coordinates into the
    field. ``ops`` are the basis operators reduced into the field (for the
    integral form they may be linearly dependent there).
    """

    def __init__(self, T: TensorAlgebra, form="image"):
        if not isinstance(T.ring, Field):
            raise FieldError("the tensor algebra must be over a field")
        self.T = T
        self.F = F = T.ring
        self.form = form
        n = T.dim
        if form == "image":
            self.Tn = T
            gens = v_generators(T).reshape(n * n, n * n)
            self._sub = Subspace.span(F, gens)
            self.native_ops = self._sub.basis.reshape(-1, n, n)
            self.ops = self.native_ops
        elif form == "integral":
            lifted = (T.left.lift(), T.right.lift())
            if lifted[0] is None or lifted[1] is None:
                raise StructurableError("doubling parameters do not lift to the integers")
            self.Tn = build_tensor(lifted[0], lifted[1], check=False)
            gens = v_generators(self.Tn).reshape(n * n, n * n)
            self._span = IntegerSpan(gens)
            self.native_ops = self._span.basis.reshape(-1, n, n)
            self.ops = F.from_int(self.native_ops) if F.is_finite else F.from_fractions(self.native_ops)
        else:
            raise ValueError(f"unknown D0 form {form!r}")
        self.dim = self.native_ops.shape[0]

    def __repr__(self):
        return f"InnerStructureAlgebra({self.T.shape_label}, form={self.form}, dim={self.dim})"

    @property
    def ring(self):
        return self.Tn.ring

    def coords(self, X):
        """Field coordinates of native-ring operators (rows of flattened matrices)."""
        F = self.F
        X = np.asarray(X, dtype=self.ring.dtype).reshape(-1, self.T.dim ** 2)
        if self.form == "image":
            try:
                return self._sub.coords(X)
            except FieldError as exc:
                raise StructurableError("operator is not in D0") from exc
        try:
            num, den = self._span.coords(X)
        except FieldError as exc:
            raise StructurableError("operator is not in D0") from exc
        return reduce_fraction_array(F, num, den)

    def contains(self, op) -> bool:
        try:
            self.coords(op)
            return True
        except StructurableError:
            return False

    # -- eps and delta --------------------------------------------------------
    def epsilon_of(self, d):
        """``d^eps`` for an operator in ``D0`` (field matrix); linear, with ``V_{x,y} -> -V_{y,x}``."""
        F = self.F
        d = np.asarray(getattr(d, "matrix", d), dtype=F.dtype)
        self._require_member(d)
        return epsilon_closed(self.T, d[None])[0]

    def delta_of(self, d):
        """``d^delta`` on ``S`` in ``S`` coordinates.

        Solved from the spanning set ``psi(a, b) = a bbar - b abar``: each skew
        basis vector ``s_k`` equals ``psi(s_k, 1) / 2``, so its image is the rule
        value at ``(s_k, 1)`` halved. Every other expression ``psi(e_a, e_b)``
        is then checked against the solved map.
        """
        F = self.F
        T = self.T
        d = np.asarray(getattr(d, "matrix", d), dtype=F.dtype)
        self._require_member(d)
        Q = _delta_rule(T, d)
        half = F.inv(F.from_int(2))
        idx = T.skew_index
        cols = F.mul(half, Q[idx, 0])  # images of s_k, rows
        D = T.S_coords(cols).T.copy()
        P = _psi_table(T)
        lhs = F.matmul(D, T.S_coords(P.reshape(-1, T.dim)).T).T
        try:
            rhs = T.S_coords(Q.reshape(-1, T.dim))
        except CompositionError as exc:
            raise StructurableError("delta rule leaves the skew space") from exc
        if not F.equal(lhs, rhs):
            raise StructurableError("delta is inconsistent on the spanning set")
        return D

    def _require_member(self, d):
        if self.form == "image" and not self._sub.contains(d.reshape(1, -1)):
            raise StructurableError("operator is not in D0")

    def check_closed(self):
        """Commutators of basis operators stay in ``D0``."""
        R = self.ring
        B = self.native_ops
        for k in range(self.dim):
            Bk = np.broadcast_to(B[k], B.shape)
            self.coords(R.sub(_bmm(R, Bk, B), _bmm(R, B, Bk)))
        return True


def span_D0(T: TensorAlgebra, form="image") -> InnerStructureAlgebra:
    return InnerStructureAlgebra(T, form)


def default_v(T: TensorAlgebra, side=None):
    """A skew basis vector of norm +-1 on a slice: ``1 (x) v`` unless ``side="left"``.

    The right slice is preferred; the left slice is used when the right factor
    has no skew elements.
    """
    if side is None:
        side = "right" if T.right_skew_index else "left"
    idx = T.right_skew_index if side == "right" else T.left_skew_index
    if not idx:
        raise StructurableError(f"no skew elements on the {side} slice")
    return T.basis_vec(idx[0])


@dataclass
class D0Decomposition:
    even: np.ndarray  # rows: flattened operators spanning <V_{x,vx}>
    sv: np.ndarray  # rows: flattened L_s L_v
    d0_dim: int
    bijective: bool
    kernel_matches: bool

    @property
    def ranks(self):
        return self.even.shape[0], self.sv.shape[0], self.d0_dim


def _even_generators(T: TensorAlgebra, v):
    """``V_{e_i, v e_j} + V_{e_j, v e_i}`` for ``i <= j`` (polarized ``V_{x, vx}``)."""
    F = T.ring
    n = T.dim
    G = v_generators(T)
    Lv = T.L(v)  # columns: v e_j
    # V_{e_i, y} is linear in y: sum_m y_m G[i, m]
    W = F.matmul(Lv.T, G.transpose(1, 0, 2, 3).reshape(n, n * n * n)).reshape(n, n, n, n)  # W[j, i] = V_{e_i, v e_j}
    Wij = W.transpose(1, 0, 2, 3)  # [i, j] = V_{e_i, v e_j}
    S = F.add(Wij, Wij.transpose(1, 0, 2, 3))
    iu = np.triu_indices(n)
    return S[iu].reshape(-1, n * n)


def decompose_D0(T: TensorAlgebra, v, D0: InnerStructureAlgebra | None = None) -> D0Decomposition:
    """``D0 = <V_{x,vx}> + SV(v)`` with ``SV(v) = <L_s L_v>`` (image form over the field)."""
    F = T.ring
    n = T.dim
    v = np.asarray(v, dtype=F.dtype)
    if F.is_zero_scalar(T.norm(v)):
        raise StructurableError("v is not invertible")
    if D0 is None:
        D0 = InnerStructureAlgebra(T, "image")
    if D0.form != "image":
        raise StructurableError("the decomposition is taken inside End(A)")
    even = rref(F, _even_generators(T, v))[0]
    Lv = T.L(v)
    LsLv = F.matmul(_L_batch(T, T.S_basis), Lv).reshape(-1, n * n)
    sv = rref(F, LsLv)[0]
    total = rank(F, np.concatenate([even, sv])) if even.shape[0] + sv.shape[0] else 0
    if total != D0.dim or even.shape[0] + sv.shape[0] != D0.dim:
        raise StructurableError(
            f"decomposition ranks {even.shape[0]} + {sv.shape[0]} do not add up to dim D0 = {D0.dim}")
    D0.coords(even)
    D0.coords(sv)
    # d -> [d, v] is d -> d^delta(v) on S+
    vS = T.S_coords(v)

    def act(rows):
        if rows.shape[0] == 0:
            return F.zeros((0, T.dim_S))
        ops = rows.reshape(-1, n, n)
        return F.matmul(delta_closed(T, ops), vS)

    bij = rank(F, act(sv)) == T.dim_S == sv.shape[0]
    basis = D0._sub.basis
    ker = nullspace(F, act(basis).T)  # coefficient rows c with sum c_k d_k . v = 0
    ker_ops = F.matmul(ker, basis) if ker.shape[0] else ker
    kernel_matches = ker.shape[0] == even.shape[0] and (
        ker.shape[0] == 0 or rank(F, np.concatenate([ker_ops, even])) == even.shape[0])
    return D0Decomposition(even, sv, D0.dim, bool(bij), bool(kernel_matches))


# -- the graded Lie algebra ------------------------------------------------------------


class GradedLieAlgebra(LieAlgebra):
    """A 5-graded Lie algebra with component offsets for ``S-, A-, D0, A+, S+``."""

    def __init__(self, F, C, tensor: TensorAlgebra, D0: InnerStructureAlgebra, scalars=(1, 1), name=""):
        ns, n, nd = tensor.dim_S, tensor.dim, D0.dim
        grades = [-2] * ns + [-1] * n + [0] * nd + [1] * n + [2] * ns
        super().__init__(F, C, grades=grades, name=name)
        self.tensor = tensor
        self.D0 = D0
        self.scalars = scalars
        o = np.cumsum([0, ns, n, nd, n, ns])
        self.slices = {
            "S-": slice(o[0], o[1]),
            "A-": slice(o[1], o[2]),
            "D0": slice(o[2], o[3]),
            "A+": slice(o[3], o[4]),
            "S+": slice(o[4], o[5]),
        }

    def component_dims(self):
        return {k: s.stop - s.start for k, s in self.slices.items()}

    def embed(self, part, coords):
        v = self.F.zeros(self.n)
        v[self.slices[part]] = coords
        return v

    def grading_ok(self) -> bool:
        F = self.F
        g = np.asarray(self.grades)
        nz = np.argwhere(~F.is_zero(self.C))
        if len(nz) == 0:
            return True
        i, j, k = nz.T
        return bool(np.all(g[i] + g[j] == g[k]))


def _assemble(T, D0, c_plus, c_minus):
    F = T.ring
    n, ns, nd = T.dim, T.dim_S, D0.dim
    N = 2 * ns + 2 * n + nd
    Sm, Am, D, Ap, Sp = np.cumsum([0, ns, n, nd, n])
    C = F.zeros((N, N, N))

    def put(I, J, vals):
        # vals[a, b, :] is [e_{I a}, e_{J b}] restricted to the target block
        C[I, J] = vals

    ops = D0.ops
    eps = epsilon_closed(T, ops)
    dl = delta_closed(T, ops)
    dle = delta_closed(T, eps)
    ridx = np.arange
    blk = {}
    # D0 acting on the other components
    blk[("D", "Ap")] = (ops.transpose(0, 2, 1), Ap, n)
    blk[("D", "Am")] = (eps.transpose(0, 2, 1), Am, n)
    blk[("D", "Sp")] = (dl.transpose(0, 2, 1), Sp, ns)
    blk[("D", "Sm")] = (dle.transpose(0, 2, 1), Sm, ns)
    off = {"D": (D, nd), "Ap": (Ap, n), "Am": (Am, n), "Sp": (Sp, ns), "Sm": (Sm, ns)}
    for (a, b), (vals, tgt, width) in blk.items():
        ia, na = off[a]
        ib, nb = off[b]
        C[ia:ia + na, ib:ib + nb, tgt:tgt + width] = vals
        C[ib:ib + nb, ia:ia + na, tgt:tgt + width] = F.neg(vals.transpose(1, 0, 2))
    # [D0, D0]
    R = D0.ring
    B = D0.native_ops
    rows = []
    for k in range(nd):
        Bk = np.broadcast_to(B[k], B.shape)
        rows.append(R.sub(_bmm(R, Bk, B), _bmm(R, B, Bk)).reshape(nd, n * n))
    if nd:
        comm = D0.coords(np.concatenate(rows)).reshape(nd, nd, nd)
        C[D:D + nd, D:D + nd, D:D + nd] = comm
    # [A+, A-] = V
    Vg = v_generators(D0.Tn).reshape(n * n, n * n)
    vc = D0.coords(Vg).reshape(n, n, nd)
    C[Ap:Ap + n, Am:Am + n, D:D + nd] = vc
    C[Am:Am + n, Ap:Ap + n, D:D + nd] = F.neg(vc.transpose(1, 0, 2))
    # [S+, S-] = L_s L_t
    if ns:
        Ls = _L_batch(D0.Tn, D0.Tn.S_basis)
        LL = np.stack([R.matmul(Ls[i], Ls[j]) for i in range(ns) for j in range(ns)]).reshape(ns * ns, n * n)
        lc = D0.coords(LL).reshape(ns, ns, nd)
        C[Sp:Sp + ns, Sm:Sm + ns, D:D + nd] = lc
        C[Sm:Sm + ns, Sp:Sp + ns, D:D + nd] = F.neg(lc.transpose(1, 0, 2))
        # [s+, y-] = (s y)+ and [t-, x+] = (t x)-
        Lsf = _L_batch(T, T.S_basis)  # Lsf[i][:, j] = s_i e_j
        prod = Lsf.transpose(0, 2, 1)  # [i, j, :]
        C[Sp:Sp + ns, Am:Am + n, Ap:Ap + n] = prod
        C[Am:Am + n, Sp:Sp + ns, Ap:Ap + n] = F.neg(prod.transpose(1, 0, 2))
        C[Sm:Sm + ns, Ap:Ap + n, Am:Am + n] = prod
        C[Ap:Ap + n, Sm:Sm + ns, Am:Am + n] = F.neg(prod.transpose(1, 0, 2))
    _set_psi(T, D0, C, c_plus, c_minus)
    return C


def _set_psi(T, D0, C, c_plus, c_minus):
    """``[x+, x'+] = c psi(x, x')+`` and the same on ``A-``."""
    F = T.ring
    n, ns, nd = T.dim, T.dim_S, D0.dim
    if not ns:
        return
    Sm, Am, D, Ap, Sp = np.cumsum([0, ns, n, nd, n])
    P = T.S_coords(_psi_table(T).reshape(-1, n)).reshape(n, n, ns)
    C[Ap:Ap + n, Ap:Ap + n, Sp:Sp + ns] = F.mul(c_plus, P)
    C[Am:Am + n, Am:Am + n, Sm:Sm + ns] = F.mul(c_minus, P)


def _jacobi_triple(F, C, i, j, k):
    """``[e_i, [e_j, e_k]] + [e_j, [e_k, e_i]] + [e_k, [e_i, e_j]]``."""
    return F.add(F.add(F.matmul(C[j, k], C[i]), F.matmul(C[k, i], C[j])), F.matmul(C[i, j], C[k]))


def _fit_scalars(T, D0, C):
    """Scalars on the two ``psi`` blocks making Jacobi hold on a triple that sees them.

    Jacobi on ``(x+, x'+, y-)`` is affine in the scalar on ``[A+, A+]``, so one
    triple with nonzero slope pins it; likewise for ``A-``.
    """
    F = T.ring
    n, ns, nd = T.dim, T.dim_S, D0.dim
    Sm, Am, D, Ap, Sp = np.cumsum([0, ns, n, nd, n])
    out = []
    for a0, a1, setter in ((Ap, Am, lambda c: (c, F.zero)), (Am, Ap, lambda c: (F.zero, c))):
        C0 = C.copy()
        _set_psi(T, D0, C0, *setter(F.zero))
        C1 = C.copy()
        _set_psi(T, D0, C1, *setter(F.one))
        found = None
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(n):
                    r0 = _jacobi_triple(F, C0, a0 + i, a0 + j, a1 + k)
                    slope = F.sub(_jacobi_triple(F, C1, a0 + i, a0 + j, a1 + k), r0)
                    nz = np.nonzero(~F.is_zero(slope))[0]
                    if len(nz):
                        found = F.neg(F.div(r0[nz[0]], slope[nz[0]]))
                        break
                if found is not None:
                    break
            if found is not None:
                break
        out.append(F.one if found is None else found)
    return tuple(out)


def build_graded_lie(T: TensorAlgebra, form="integral", fit=True, check_jacobi=False) -> GradedLieAlgebra:
    """The 5-graded Lie algebra on ``S- + A- + D0 + A+ + S+``.

    The scalars on the ``psi`` brackets are fitted from single Jacobi triples
    when ``fit`` is set (the result is +1 for every shape built here) and
    otherwise taken as +1. With ``check_jacobi`` the full identity is verified
    and a failure raises with the offending triple.
    """
    F = T.ring
    D0 = InnerStructureAlgebra(T, form)
    C = _assemble(T, D0, F.one, F.one)
    cp = cm = F.one
    if fit and T.dim_S and T.dim > 1:
        cp, cm = _fit_scalars(T, D0, C)
        _set_psi(T, D0, C, cp, cm)
    L = GradedLieAlgebra(F, C, T, D0, scalars=(cp, cm), name=f"{T.shape_label}/{form}")
    if check_jacobi:
        rep = jacobi_check(L)
        if not rep.passed:
            raise LieError(f"Jacobi identity fails at basis triple {rep.witness}")
    return L
