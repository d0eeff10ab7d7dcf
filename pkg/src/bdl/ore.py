"""Ore operators in one variable u.

An operator is stored as ``{k: coefficient}`` meaning sum_k coefficient * x^k
with coefficients on the left.  Coefficients are ``RatFun`` values or ``Mat``
values with ``RatFun`` entries.  Four generators are supported, each with a
commuting pair (sigma, delta) so that

    x^i f = sum_k binom(i, k) sigma^k delta^(i-k) (f) x^k .
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import comb
from typing import Union

from .exact_arith import (
    QQ, Field, Mat, RatFun, coeffs_in, falling, rising, stirling1, stirling2,
)

TAU, DIFF, DERIV, EULER = "tau", "d", "D", "uD"
KINDS = (TAU, DIFF, DERIV, EULER)

Coef = Union[RatFun, Mat]


class KindMismatch(TypeError):
    pass


class PencilMembershipError(ValueError):
    """The operator is not in the requested pencil span; ``witness`` says why."""

    def __init__(self, msg, witness):
        super().__init__(msg)
        self.witness = witness


# -- coefficient helpers ------------------------------------------------------

def c_shift(c: Coef, s) -> Coef:
    if isinstance(c, Mat):
        return c.map(lambda e: e.shift(s))
    return c.shift(s)


def c_deriv(c: Coef) -> Coef:
    if isinstance(c, Mat):
        return c.map(lambda e: e.derivative("u"))
    return c.derivative("u")


def c_reflect(c: Coef, l) -> Coef:
    if isinstance(c, Mat):
        return c.map(lambda e: e.reflect(l))
    return c.reflect(l)


def c_map(c: Coef, fn) -> Coef:
    return c.map(fn) if isinstance(c, Mat) else fn(c)


def c_zero_like(c: Coef) -> Coef:
    if isinstance(c, Mat):
        return Mat.zeros(c.rows, c.cols, c.field)
    return c.field.zero


def _sigma(kind, c, times=1):
    if kind in (TAU, DIFF):
        return c_shift(c, times)
    return c


def _delta(kind, c):
    if kind == DIFF:
        return c_shift(c, 1) - c
    if kind == DERIV:
        return c_deriv(c)
    if kind == EULER:
        u = c.field.sym("u")
        d = c_deriv(c)
        return d.map(lambda e: u * e) if isinstance(d, Mat) else u * d
    return c_zero_like(c)


def _commute(kind, i, c):
    """x^i c as {k: coefficient}."""
    if i == 0 or c.is_zero():
        return {0: c} if not c.is_zero() else {}
    if kind == TAU:
        return {i: c_shift(c, i)}
    # delta^t(c) for t = 0..i, each then shifted by sigma^k
    deltas = [c]
    for _ in range(i):
        nxt = _delta(kind, deltas[-1])
        deltas.append(nxt)
        if nxt.is_zero():
            break
    out = {}
    for k in range(i + 1):
        t = i - k
        if t >= len(deltas) or deltas[t].is_zero():
            continue
        term = _sigma(kind, deltas[t], k) if k else deltas[t]
        b = comb(i, k)
        out[k] = term if b == 1 else _scale(term, b)
    return out


def _scale(c: Coef, s) -> Coef:
    if isinstance(c, Mat):
        return c.scale(s)
    return c * s


# -- operators ---------------------------------------------------------------

class OreOp:
    """Finite sum of coefficients times powers of one Ore generator."""

    __slots__ = ("kind", "terms", "field")

    def __init__(self, kind: str, terms: dict, field: Field = QQ):
        if kind not in KINDS:
            raise ValueError(f"unknown kind {kind}")
        self.kind = kind
        self.field = field
        self.terms = {}
        for k, c in terms.items():
            if isinstance(c, (int, Fraction)):
                c = field.const(c)
            if not c.is_zero():
                self.terms[k] = c

    # constructors
    @classmethod
    def gen(cls, kind, field: Field = QQ):
        return cls(kind, {1: field.one}, field)

    @classmethod
    def scalar(cls, kind, c, field: Field = QQ):
        if isinstance(c, (int, Fraction)):
            c = field.const(c)
        return cls(kind, {0: c}, field)

    @classmethod
    def zero(cls, kind, field: Field = QQ):
        return cls(kind, {}, field)

    # basic queries
    def degree(self) -> int:
        return max(self.terms) if self.terms else -1

    def coeff(self, k):
        return self.terms.get(k)

    def is_zero(self) -> bool:
        return not self.terms

    def is_matrix(self) -> bool:
        return any(isinstance(c, Mat) for c in self.terms.values())

    def __repr__(self):
        if not self.terms:
            return "0"
        g = {TAU: "τ", DIFF: "d", DERIV: "∂", EULER: "(u∂)"}[self.kind]
        return " + ".join(f"[{c}]*{g}^{k}" for k, c in sorted(self.terms.items()))

    # arithmetic
    def _promote(self, other):
        if isinstance(other, OreOp):
            if other.kind != self.kind:
                raise KindMismatch(f"{self.kind} vs {other.kind}")
            return other
        if isinstance(other, (int, Fraction, RatFun)):
            c = other if isinstance(other, RatFun) else self.field.const(other)
            mats = [x for x in self.terms.values() if isinstance(x, Mat)]
            if mats and mats[0].rows == mats[0].cols:
                c = Mat.identity(mats[0].rows, self.field).scale(c)
            return OreOp(self.kind, {0: c}, self.field)
        if isinstance(other, Mat):
            return OreOp(self.kind, {0: other}, self.field)
        return NotImplemented

    def __add__(self, other):
        o = self._promote(other)
        if o is NotImplemented:
            return o
        terms = dict(self.terms)
        for k, c in o.terms.items():
            terms[k] = terms[k] + c if k in terms else c
        return OreOp(self.kind, terms, self.field)

    __radd__ = __add__

    def __neg__(self):
        return OreOp(self.kind, {k: _scale(c, -1) for k, c in self.terms.items()}, self.field)

    def __sub__(self, other):
        o = self._promote(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._promote(other)
        if o is NotImplemented:
            return o
        return ore_mul(self, o)

    def __rmul__(self, other):
        o = self._promote(other)
        if o is NotImplemented:
            return o
        return ore_mul(o, self)

    def __pow__(self, k: int):
        out = OreOp.scalar(self.kind, 1, self.field)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, RatFun, Mat)):
            other = self._promote(other)
        if not isinstance(other, OreOp):
            return NotImplemented
        if other.kind != self.kind:
            other = other.to_kind(self.kind)
        return (self - other).is_zero()

    def __hash__(self):
        return hash((self.kind, tuple(sorted(self.terms))))

    def lmul(self, f) -> "OreOp":
        """f * self where f is a scalar or a matrix coefficient."""
        if isinstance(f, (int, Fraction)):
            f = self.field.const(f)
        return OreOp(self.kind, {k: f * c if not (isinstance(c, Mat) and isinstance(f, RatFun))
                                 else c.scale(f) for k, c in self.terms.items()}, self.field)

    def map_coeffs(self, fn) -> "OreOp":
        return OreOp(self.kind, {k: fn(c) for k, c in self.terms.items()}, self.field)

    def shift_u(self, s) -> "OreOp":
        """Conjugation by tau^s: every coefficient gets u -> u + s.

        The generators tau and d commute with tau, so only coefficients move.
        """
        if self.kind not in (TAU, DIFF):
            raise KindMismatch("shift conjugation only for difference operators")
        return self.map_coeffs(lambda c: c_shift(c, s))

    def subs(self, bindings) -> "OreOp":
        return self.map_coeffs(lambda c: c_map(c, lambda e: e.subs(bindings)))

    # conversions
    def to_kind(self, kind: str) -> "OreOp":
        if kind == self.kind:
            return self
        pair = {self.kind, kind}
        if pair == {TAU, DIFF}:
            # tau = d + 1, d = tau - 1
            sign = 1 if kind == DIFF else -1
            out = {}
            for i, c in self.terms.items():
                for k in range(i + 1):
                    b = comb(i, k) * (sign ** (i - k) if sign == -1 else 1)
                    add = _scale(c, b)
                    out[k] = out[k] + add if k in out else add
            return OreOp(kind, out, self.field)
        if pair == {DERIV, EULER}:
            u = self.field.sym("u")
            out = {}
            if kind == EULER:
                # f ∂^k = f u^{-k} (u∂)^{falling k}
                for k, c in self.terms.items():
                    base = _scale(c, u ** (-k)) if k else c
                    for l in range(k + 1):
                        s = stirling1(k, l)
                        if s:
                            add = _scale(base, s)
                            out[l] = out[l] + add if l in out else add
            else:
                # (u∂)^k = sum_l S2(k, l) u^l ∂^l
                for k, c in self.terms.items():
                    for l in range(k + 1):
                        s = stirling2(k, l)
                        if s:
                            add = _scale(c, s * u ** l) if l else _scale(c, s)
                            out[l] = out[l] + add if l in out else add
            return OreOp(kind, out, self.field)
        raise KindMismatch(f"no conversion {self.kind} -> {kind}")

    # action on functions
    def apply(self, f: RatFun) -> RatFun:
        return ore_apply(self, f)


def ore_mul(x: OreOp, y: OreOp) -> OreOp:
    if x.kind != y.kind:
        raise KindMismatch(f"{x.kind} vs {y.kind}")
    kind = x.kind
    out: dict = {}
    for i, a in x.terms.items():
        for j, b in y.terms.items():
            for k, c in _commute(kind, i, b).items():
                prod = a * c if not (isinstance(a, RatFun) and isinstance(c, Mat)) else c.scale(a)
                if prod.is_zero():
                    continue
                key = k + j
                out[key] = out[key] + prod if key in out else prod
    return OreOp(kind, out, x.field)


def _gen_apply(kind, f: RatFun) -> RatFun:
    if kind == TAU:
        return f.shift(1)
    if kind == DIFF:
        return f.shift(1) - f
    if kind == DERIV:
        return f.derivative("u")
    return f.field.sym("u") * f.derivative("u")


def ore_apply(x: OreOp, f: RatFun) -> RatFun:
    if x.is_matrix():
        raise TypeError("ore_apply needs scalar coefficients")
    out = f.field.zero
    cur = f
    for k in range(x.degree() + 1):
        if k:
            cur = _gen_apply(x.kind, cur)
        c = x.terms.get(k)
        if c is not None:
            out = out + c * cur
    return out


def delta_hat(x: OreOp, l) -> OreOp:
    """sum_i b_i(u) tau^i  ->  sum_i tau^i b_i(-u + l - 1), normalized left."""
    if x.kind != TAU:
        raise KindMismatch("delta_hat is defined on the tau basis")
    # tau^i g(u) = g(u + i) tau^i, with g(u) = b(-u + l - 1)
    return OreOp(TAU, {i: c_reflect(c, Fraction(l) - 1 - i) for i, c in x.terms.items()},
                 x.field)


# -- pencils -----------------------------------------------------------------

@dataclass
class Pencil:
    """sum A_ij (u + alpha)^i ((u + beta) d)^j with u-free A_ij.

    With ``kind`` equal to ``tau`` or ``uD`` the grid is instead read as
    sum A_ij (u + alpha)^i x^j with x the plain generator, which is the
    basis used for the XXX and trigonometric Gaudin operators.
    """

    alpha: Fraction
    beta: Fraction
    grid: dict = dc_field(default_factory=dict)
    kind: str = DIFF
    field: Field = QQ

    def to_operator(self) -> OreOp:
        return from_pencil(self)

    def support(self):
        return sorted(k for k, c in self.grid.items() if not c.is_zero())

    def __eq__(self, other):
        if not isinstance(other, Pencil):
            return NotImplemented
        if (self.alpha, self.beta, self.kind) != (other.alpha, other.beta, other.kind):
            return False
        keys = set(self.grid) | set(other.grid)
        for k in keys:
            a, b = self.grid.get(k), other.grid.get(k)
            if a is None:
                if not b.is_zero():
                    return False
            elif b is None:
                if not a.is_zero():
                    return False
            elif not a == b:
                return False
        return True


def _taylor(c: Coef, alpha) -> dict:
    """Coefficients of c as a polynomial in (u + alpha)."""
    if isinstance(c, Mat):
        parts = [[_taylor(e, alpha) for e in row] for row in c.a]
        degs = {k for row in parts for d in row for k in d}
        out = {}
        for k in degs:
            out[k] = Mat._raw([[d.get(k, c.field.zero) for d in row] for row in parts],
                              c.field, c.rows, c.cols)
        return out
    if not c.free_of("u") and c.den.degrees()[0] > 0:
        raise PencilMembershipError("coefficient is not polynomial in u",
                                    {"coefficient": str(c)})
    return coeffs_in(c.shift(-Fraction(alpha)), "u")


def _divide_rising(c: Coef, beta, l: int) -> Coef:
    """c / (u + beta)^{rising l}, requiring exact divisibility."""
    if l == 0:
        return c
    f = rising(c.field.sym("u") + Fraction(beta), l, c.field)
    if isinstance(c, Mat):
        return c.map(lambda e: _exact_div(e, f, l))
    return _exact_div(c, f, l)


def _exact_div(e: RatFun, f: RatFun, l: int) -> RatFun:
    q = e / f
    if not q.is_poly() and q.den.degrees()[0] > 0:
        raise PencilMembershipError(
            f"d^{l} coefficient not divisible by the rising factorial",
            {"power": l, "coefficient": str(e)})
    return q


def to_pencil(x: OreOp, alpha, beta) -> Pencil:
    """Decompose a difference operator in the basis (u+alpha)^i ((u+beta) d)^j."""
    alpha, beta = Fraction(alpha), Fraction(beta)
    if x.kind in (TAU, EULER, DERIV):
        if x.kind == DERIV:
            x = x.to_kind(EULER)
        if x.kind == TAU and beta != 0:
            x = x.to_kind(DIFF)
        else:
            grid = {}
            for j, c in x.terms.items():
                for i, a in _taylor(c, alpha).items():
                    if not a.is_zero():
                        grid[(i, j)] = a
            return Pencil(alpha, beta, grid, x.kind, x.field)
    if x.kind != DIFF:
        raise KindMismatch(x.kind)
    # P_l(u) = c_l / (u+beta)^{rising l}; ((u+beta)d)^j = sum_l S2(j,l)(u+beta)^{rising l} d^l
    B = {}
    for l, c in x.terms.items():
        for i, a in _taylor(_divide_rising(c, beta, l), alpha).items():
            if not a.is_zero():
                B[(i, l)] = a
    if not B:
        return Pencil(alpha, beta, {}, DIFF, x.field)
    top = max(l for (_, l) in B)
    A: dict = {}
    for l in range(top, -1, -1):
        for i in {i for (i, _) in B} | {i for (i, _) in A}:
            val = B.get((i, l))
            for j in range(l + 1, top + 1):
                s = stirling2(j, l)
                if s and (i, j) in A:
                    sub = _scale(A[(i, j)], -s)
                    val = sub if val is None else val + sub
            if val is not None and not val.is_zero():
                A[(i, l)] = val
    return Pencil(alpha, beta, A, DIFF, x.field)


def from_pencil(p: Pencil) -> OreOp:
    field = p.field
    u = field.sym("u")
    out = OreOp.zero(p.kind, field)
    if p.kind == DIFF:
        x = OreOp(DIFF, {1: u + p.beta}, field)
    else:
        x = OreOp.gen(p.kind, field)
    powers = {}
    for (i, j), a in sorted(p.grid.items()):
        if j not in powers:
            powers[j] = x ** j
        op = powers[j].lmul((u + p.alpha) ** i)
        out = out + op.lmul(a) if isinstance(a, Mat) else out + op.lmul(a)
    return out


def apply_F(p: Pencil, n: int, m: int) -> Pencil:
    """F_{n,m}: (u+m)^i ((u-n+1) d)^j  ->  (u+n)^j ((u-m+1) d)^i."""
    if p.kind != DIFF or p.alpha != m or p.beta != -n + 1:
        raise ValueError(f"pencil basis (alpha={p.alpha}, beta={p.beta}) is not the "
                         f"source basis of F_{{{n},{m}}}")
    return Pencil(Fraction(n), Fraction(-m + 1), {(j, i): a for (i, j), a in p.grid.items()},
                  DIFF, p.field)


# -- scalar identities used in the duality proof --------------------------------

def _inv_falling(x: RatFun, k: int) -> RatFun:
    return falling(x, k, x.field).inv()


def D_J_operator(J: set, lo: int, hi: int, field: Field = QQ) -> OreOp:
    """1/(u-j0)^{falling(j1-j0-1)} d 1/(u-j1)^{falling(j2-j1-1)} d ... with
    sentinels j0 = lo and j_{r+1} = hi + 1, and J ⊆ {lo+1..hi}."""
    u = field.sym("u")
    js = [lo] + sorted(J) + [hi + 1]
    d = OreOp.gen(DIFF, field)
    out = OreOp.scalar(DIFF, _inv_falling(u - js[0], js[1] - js[0] - 1), field)
    for s in range(1, len(js) - 1):
        out = out * d * OreOp.scalar(DIFF, _inv_falling(u - js[s], js[s + 1] - js[s] - 1), field)
    return out


def scalar_DJ_identity(n: int, m: int, J, field: Field = QQ) -> dict:
    """Check both single-block identities for the split J = J1 ∪ J2."""
    if n < 1 or m < 1:
        raise ValueError("n, m >= 1")
    J = set(J)
    J1 = {j for j in J if j <= n}
    J2 = {j for j in J if j > n}
    u = field.sym("u")
    d = OreOp.gen(DIFF, field)
    x = d.lmul(u - (n + m - 1))

    lhs2 = D_J_operator(J2, n, n + m, field).lmul(falling(u - n, m, field))
    rhs2 = OreOp.scalar(DIFF, 1, field)
    for j in sorted(J2):
        rhs2 = rhs2 * (x - (n + m - j))
    res2 = lhs2 - rhs2

    D1 = D_J_operator(J1, 0, n, field)
    lhs1 = delta_hat(D1.to_kind(TAU), n + m).to_kind(DIFF).lmul(falling(u - m, n, field))
    rhs1 = OreOp.scalar(DIFF, (-1) ** (n - len(J1)), field)
    for j in sorted(J1):
        rhs1 = rhs1 * (x - (j - 1))
    res1 = lhs1 - rhs1
    ok = res1.is_zero() and res2.is_zero()
    return {
        "n": n, "m": m, "J": sorted(J), "pass": ok,
        "residual_t15": None if res2.is_zero() else repr(res2),
        "residual_t16": None if res1.is_zero() else repr(res1),
    }


def rel41_identity(i: int, c: RatFun) -> bool:
    """(u-c)^{rising i} d^i == prod_{j=1..i} ((u-c) d - j + 1)."""
    field = c.field
    u = field.sym("u")
    d = OreOp.gen(DIFF, field)
    lhs = OreOp(DIFF, {i: rising(u - c, i, field)}, field)
    rhs = OreOp.scalar(DIFF, 1, field)
    x = d.lmul(u - c)
    for j in range(1, i + 1):
        rhs = rhs * (x - (j - 1))
    return lhs == rhs


def difference_wronskian(funcs: list, c) -> RatFun:
    """det( ((u - c) d)^p f_s ), p = 0..k-1."""
    if not funcs:
        raise ValueError("need at least one function")
    field = funcs[0].field
    u = field.sym("u")
    x = OreOp(DIFF, {1: u - c}, field)
    rows = [list(funcs)]
    for _ in range(len(funcs) - 1):
        rows.append([ore_apply(x, f) for f in rows[-1]])
    return Mat(rows, field).det()


def wronskian_factorization(n: int, m: int, J2, field: Field = QQ) -> bool:
    """The Wronskian of f_j = (u-n-m+1)^{rising(n+m-j)}, j ∈ J2, equals
    prod f_j times the Vandermonde determinant in k_j = n + m - j."""
    u = field.sym("u")
    js = sorted(J2)
    if not js:
        return True
    fs = [rising(u - (n + m - 1), n + m - j, field) for j in js]
    W = difference_wronskian(fs, n + m - 1)
    ks = [n + m - j for j in js]
    vdm = 1
    for s in range(len(ks)):
        for t in range(s + 1, len(ks)):
            vdm *= ks[t] - ks[s]
    prod = field.one
    for f in fs:
        prod = prod * f
    return W == prod * vdm


# -- the anti-isomorphism F on pencils ----------------------------------------------

def pencil_monomial(i: int, j: int, n: int, m: int, field: Field = QQ) -> Pencil:
    return Pencil(Fraction(m), Fraction(1 - n), {(i, j): field.one}, DIFF, field)


def F_antihom_pair(p: Pencil, q: Pencil, n: int, m: int) -> bool:
    """F(p q) == F(q) F(p), products taken in operator form."""
    pq = to_pencil(from_pencil(p) * from_pencil(q), m, 1 - n)
    lhs = from_pencil(apply_F(pq, n, m))
    rhs = from_pencil(apply_F(q, n, m)) * from_pencil(apply_F(p, n, m))
    return lhs == rhs


def F_involution(p: Pencil, n: int, m: int) -> bool:
    """F_{m,n}(F_{n,m}(p)) == p."""
    return apply_F(apply_F(p, n, m), m, n) == p
