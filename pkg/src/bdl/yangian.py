"""Yangian Y(gl_k) acting on tensor products of evaluation modules.

A ``TMatrix`` is a list of slots; each slot has a gl_k action on the full
label and an evaluation point z, so that slot-wise

    t_ab(u) = delta_ab + e_ab / (u - z)

and the coproduct gives t_ij(u) = sum t_{i k1} ⊗ t_{k1 k2} ⊗ ... ⊗ t_{k j}.

The module also hosts a small engine for ordered column determinants whose
entries are Ore operators with linear-map coefficients ("operator vectors").
"""

from __future__ import annotations

from itertools import combinations
from math import prod

from .exact_arith import QQ, Field, Mat, RatFun, falling
from .glk import TensorModule, VermaTensor, WeightModule, vadd, vscale
from .ore import DERIV, DIFF, EULER, TAU, OreOp


# -- T-matrices --------------------------------------------------------------------

class TMatrix:
    """Tensor product of evaluation modules of Y(gl_k), acting on dict vectors."""

    def __init__(self, k: int, slots: list, field: Field = QQ):
        """slots: list of (act, z) with act(gen, label) -> dict and z a RatFun/number."""
        self.k = k
        self.field = field
        self.slots = [(act, field.coerce(z) if isinstance(z, RatFun) else field.const(z))
                      for act, z in slots]

    def apply_t(self, i: int, j: int, u: RatFun, vec: dict) -> dict:
        """t_ij(u) applied to vec; u is the spectral value (e.g. u - 1)."""
        k = self.k
        state = {i: vec}
        last = len(self.slots) - 1
        for s, (act, z) in enumerate(self.slots):
            inv = (u - z).inv()
            targets = [j] if s == last else range(k)
            new = {}
            for a, v in state.items():
                for b in targets:
                    out = dict(v) if a == b else {}
                    ev = {}
                    for lab, c in v.items():
                        vadd(ev, act((a, b), lab), c)
                    if ev:
                        vadd(out, ev, inv)
                    if out:
                        if b in new:
                            vadd(new[b], out)
                        else:
                            new[b] = out
            state = new
        return state.get(j, {})

    def minor_apply(self, rows, cols, u: RatFun, vec: dict) -> dict:
        """Quantum minor sum_sigma sgn t_{r_s1, c_1}(u) t_{r_s2, c_2}(u-1) ... on vec."""
        rows, cols = tuple(rows), tuple(cols)
        if len(rows) != len(cols):
            raise ValueError("minor needs as many rows as columns")
        memo: dict = {}

        def rec(R):
            p = len(rows) - len(R)
            if not R:
                return vec
            if R in memo:
                return memo[R]
            out = {}
            for q, r in enumerate(R):
                rest = R[:q] + R[q + 1:]
                inner = rec(rest)
                if not inner:
                    continue
                term = self.apply_t(r, cols[p], u - p, inner)
                vadd(out, term, -1 if q % 2 else 1)
            memo[R] = out
            return out

        return rec(rows)

    def qminor(self, J, u: RatFun, vec: dict) -> dict:
        return self.minor_apply(J, J, u, vec)

    def qdet(self, u: RatFun, vec: dict) -> dict:
        return self.qminor(tuple(range(self.k)), u, vec)

    def bethe_B_apply(self, kk: int, C, u: RatFun, vec: dict, scaled: bool = False) -> dict:
        """B_k(u, C) vec = sum_{|J|=k} (prod_{j not in J} c_j) t_J(u) vec.

        With ``scaled`` the weight is prod_{j in J} c_j instead (this is the
        twisted XXX normalization, prod(xi) * B_k(u, 1/xi)).
        """
        out = {}
        for J in combinations(range(self.k), kk):
            if scaled:
                w = prod((C[j] for j in J), start=self.field.one)
            else:
                w = prod((C[j] for j in range(self.k) if j not in J), start=self.field.one)
            if _is_zero_scalar(w):
                continue
            vadd(out, self.qminor(J, u, vec), w)
        return out


def _is_zero_scalar(w):
    return w.is_zero() if isinstance(w, RatFun) else w == 0


def finite_tmatrix(V: TensorModule, zs, field: Field = QQ) -> TMatrix:
    slots = []
    for s in range(len(V.factors)):
        slots.append((lambda gen, lab, s=s: V.act_slot(s, gen, lab), zs[s]))
    return TMatrix(V.k, slots, field)


def verma_tmatrix(VM: VermaTensor, zs, field: Field = QQ) -> TMatrix:
    """Slots of V (evaluation points zs) followed by the Verma factor at 0."""
    V, M = VM.V, VM.M
    slots = []
    for s in range(len(V.factors)):
        def act(gen, lab, s=s):
            x, w = lab
            return {(y, w): c for y, c in V.act_slot(s, gen, x).items()}
        slots.append((act, zs[s]))

    def act_m(gen, lab):
        x, w = lab
        return {(x, w2): c for w2, c in M.act(gen, w).items()}

    slots.append((act_m, 0))
    return TMatrix(V.k, slots, field)


def build_T(k: int, factors, field: Field = QQ) -> tuple[TensorModule, TMatrix]:
    """factors: list of (WeightModule, z).  Returns the tensor module and its T-matrix."""
    V = TensorModule([f for f, _ in factors])
    return V, finite_tmatrix(V, [z for _, z in factors], field)


# -- matrices on finite modules --------------------------------------------------------

def op_matrix(apply, basis, field: Field = QQ, target=None) -> Mat:
    """Matrix of a linear map given by apply(vec) on the listed basis."""
    target = basis if target is None else target
    pos = {b: i for i, b in enumerate(target)}
    m = Mat.zeros(len(target), len(basis), field)
    for col, b in enumerate(basis):
        for lab, c in apply({b: field.one}).items():
            if lab not in pos:
                raise ValueError(f"image leaves the target basis at {lab}")
            m.a[pos[lab]][col] = c
    return m


def quantum_minor(T: TMatrix, J, u: RatFun, basis) -> Mat:
    return op_matrix(lambda v: T.qminor(J, u, v), basis, T.field)


def bethe_Bk(T: TMatrix, kk: int, C, u: RatFun, basis, scaled: bool = False) -> Mat:
    return op_matrix(lambda v: T.bethe_B_apply(kk, C, u, v, scaled), basis, T.field)


def assemble_D(T: TMatrix, C, basis, u: RatFun | None = None) -> OreOp:
    """D(C) = sum_k (-1)^k B_k(u, C) tau^{n-k} with matrix coefficients."""
    field = T.field
    u = field.sym("u") if u is None else u
    n = T.k
    terms = {}
    for kk in range(n + 1):
        B = bethe_Bk(T, kk, C, u, basis)
        terms[n - kk] = B if kk % 2 == 0 else -B
    return OreOp(TAU, terms, field)


def assemble_D_coldet(T: TMatrix, C, basis) -> OreOp:
    """Same operator from the column determinant of c_i delta_ij tau - t_ij(u - j + 1)."""
    field = T.field
    u = field.sym("u")
    n = T.k

    def entry(row, col):
        shift = u - col

        def fn(vec, row=row, col=col, shift=shift):
            return vscale(T.apply_t(row, col, shift, vec), -1)

        return (C[row] if row == col else 0), fn

    ovs = [coldet_apply(n, entry, TAU, {b: field.one}, field) for b in basis]
    return opvecs_to_oreop(ovs, basis, TAU, field)


def qdet_scalar_on_singular(nu, u: RatFun, shift: int = 0) -> RatFun:
    """prod_i (1 + nu_i / (u + shift - i + 1)), the value of qdet(u + shift) on a
    singular vector of gl weight nu."""
    out = u.field.one
    for i, x in enumerate(nu):
        out = out * (1 + x / (u + shift - i))
    return out


# -- operator vectors and ordered column determinants -----------------------------

def _apply_sigma(kind, vec, times=1):
    if kind in (TAU, DIFF):
        return {b: c.shift(times) for b, c in vec.items()}
    return vec


def _apply_delta(kind, vec, u=None):
    out = {}
    if kind == DIFF:
        for b, c in vec.items():
            t = c.shift(1) - c
            if not t.is_zero():
                out[b] = t
    elif kind == DERIV:
        for b, c in vec.items():
            t = c.derivative("u")
            if not t.is_zero():
                out[b] = t
    elif kind == EULER:
        for b, c in vec.items():
            t = u * c.derivative("u")
            if not t.is_zero():
                out[b] = t
    return out


def opvec_mul(kind, a, fn, ov: dict, field: Field) -> dict:
    """(a x + fn) applied to the operator vector ov = {k: vec} (meaning sum vec_k x^k).

    fn is a u-dependent linear map on vectors that does not involve x.
    """
    out: dict = {}
    u = field.sym("u")
    a_zero = _is_zero_scalar(a)
    for k, w in ov.items():
        if fn is not None:
            fw = fn(w)
            if fw:
                vadd(out.setdefault(k, {}), fw)
        if not a_zero:
            sw = _apply_sigma(kind, w)
            vadd(out.setdefault(k + 1, {}), sw, a)
            dw = _apply_delta(kind, w, u)
            if dw:
                vadd(out.setdefault(k, {}), dw, a)
    return {k: v for k, v in out.items() if v}


def coldet_apply(n: int, entry, kind, vec: dict, field: Field) -> dict:
    """sum_sigma sgn(sigma) X_{sigma(1),1} ... X_{sigma(n),n} applied to vec.

    entry(row, col) -> (a, fn) describes X_{row,col} = a x + fn.
    """
    memo: dict = {}

    def rec(R):
        if not R:
            return {0: vec}
        if R in memo:
            return memo[R]
        col = n - len(R)
        out: dict = {}
        for q, r in enumerate(R):
            inner = rec(R[:q] + R[q + 1:])
            if not inner:
                continue
            a, fn = entry(r, col)
            term = opvec_mul(kind, a, fn, inner, field)
            sign = -1 if q % 2 else 1
            for k, w in term.items():
                vadd(out.setdefault(k, {}), w, sign)
        out = {k: v for k, v in out.items() if v}
        memo[R] = out
        return out

    return rec(tuple(range(n)))


def opvecs_to_oreop(ovs: list, basis: list, kind, field: Field, target=None,
                    project=None) -> OreOp:
    """Assemble per-basis-vector operator vectors into matrix coefficients."""
    target = basis if target is None else target
    pos = {b: i for i, b in enumerate(target)}
    degs = {k for ov in ovs for k in ov}
    terms = {}
    for k in degs:
        m = Mat.zeros(len(target), len(basis), field)
        for col, ov in enumerate(ovs):
            w = ov.get(k, {})
            if project is not None:
                w = project(w)
            for lab, c in w.items():
                if lab not in pos:
                    raise ValueError(f"operator leaves the weight space at {lab}")
                m.a[pos[lab]][col] = c
        terms[k] = m
    return OreOp(kind, terms, field)


def verify_bethe_commutativity(T: TMatrix, basis, C, C2=None) -> dict:
    """[B_k(u,C), B_l(v,C)] = 0, qdet(u) central, and B_n(u, C) = B_n(u, C2) = qdet(u).
    u and v are independent symbols."""
    field = T.field
    u, v = field.sym("u"), field.sym("v")
    n = T.k
    Bu = [bethe_Bk(T, k, C, u, basis) for k in range(n + 1)]
    Bv = [bethe_Bk(T, k, C, v, basis) for k in range(n + 1)]
    for k in range(1, n + 1):
        for l in range(1, n + 1):
            if not Bu[k].commutes_with(Bv[l]):
                return {"pass": False, "witness": {"noncommuting": [k, l]}}
    Q = op_matrix(lambda w: T.qdet(u, w), basis, field)
    for i in range(n):
        for j in range(n):
            t = op_matrix(lambda w, i=i, j=j: T.apply_t(i, j, v, w), basis, field)
            if not Q.commutes_with(t):
                return {"pass": False, "witness": {"qdet_vs_t": [i + 1, j + 1]}}
    if not Bu[n] == Q:
        return {"pass": False, "witness": {"reason": "B_n(u, C) differs from qdet(u)"}}
    if C2 is not None:
        if not bethe_Bk(T, n, C2, u, basis) == Q:
            return {"pass": False, "witness": {"reason": "B_n depends on C"}}
    return {"pass": True, "witness": None, "dim": len(basis)}
