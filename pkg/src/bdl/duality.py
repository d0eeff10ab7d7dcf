"""Checks of the (gl_n, gl_m) duality on weight spaces.

Bases of both carriers are indexed by contingency tables K (n x m, row sums a,
column sums b) in lexicographic order of the flattened rows, so the map Psi is
the identity on indices and Psi-hat leaves matrices unchanged.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .exact_arith import GF, QQ, Field, Mat, RatFun, charpoly_oracle
from .glk import compositions
from .ore import to_pencil
from .rep_bethe import (
    _elem, carrier_module, hamiltonians, rep_D_theta, rep_D_trig_gaudin,
    rep_D_trig_gaudin_quotient, xxx_grid_operator, z_points,
)
from .unm import BlockWeightContext, verify_main1


@dataclass(frozen=True)
class ContingencyIndex:
    K: tuple  # rows of the n x m table

    @property
    def flat(self):
        return tuple(v for row in self.K for v in row)


def contingency_tables(a, b) -> list[ContingencyIndex]:
    if sum(a) != sum(b):
        raise ValueError(f"margin mismatch: sum(a)={sum(a)} != sum(b)={sum(b)}")
    m = len(b)
    out = []

    def rec(i, rem, rows):
        if i == len(a):
            if all(r == 0 for r in rem):
                out.append(ContingencyIndex(tuple(rows)))
            return
        for row in compositions(a[i], m):
            if all(x <= r for x, r in zip(row, rem)):
                rec(i + 1, [r - x for r, x in zip(rem, row)], rows + [tuple(row)])

    rec(0, list(b), [])
    return sorted(out, key=lambda k: k.flat)


@dataclass
class Psi:
    a: tuple
    b: tuple
    tables: list
    order_m: list   # labels of S^(m)(a)[b] in table order
    order_n: list   # labels of S^(n)(b)[a] in table order

    def inverse(self) -> "Psi":
        tables = sorted((ContingencyIndex(tuple(zip(*k.K))) for k in self.tables),
                        key=lambda k: k.flat)
        pos = {k.flat: i for i, k in enumerate(self.tables)}
        perm = [pos[ContingencyIndex(tuple(zip(*k.K))).flat] for k in tables]
        return Psi(self.b, self.a, tables, [self.order_n[p] for p in perm],
                   [self.order_m[p] for p in perm])


def psi(a, b) -> Psi:
    """Contingency-table correspondence S^(m)(a)[b] <-> S^(n)(b)[a]."""
    a, b = tuple(a), tuple(b)
    tables = contingency_tables(a, b)
    n, m = len(a), len(b)
    order_m = [tuple(k.K) for k in tables]                                   # n factors in C^m
    order_n = [tuple(tuple(k.K[i][j] for i in range(n)) for j in range(m)) for k in tables]
    Vm = carrier_module(m, a).weight_space(b)
    Vn = carrier_module(n, b).weight_space(a)
    if sorted(Vm) != sorted(order_m) or sorted(Vn) != sorted(order_n):
        raise AssertionError("contingency tables do not match the weight-space bases")
    return Psi(a, b, tables, order_m, order_n)


def _zero_like(d, field):
    return Mat.zeros(d, d, field)


def _first_grid_mismatch(G1, G2, d, field, transpose=True):
    keys = set(G1) | {(j, i) for (i, j) in G2} if transpose else set(G1) | set(G2)
    for (i, j) in sorted(keys):
        A = G1.get((i, j), _zero_like(d, field))
        B = G2.get((j, i) if transpose else (i, j), _zero_like(d, field))
        if not A == B:
            return (i, j), A, B
    return None


def verify_main3(n, m, a, b, xi, lam_n, field: Field = QQ) -> dict:
    """Psi-hat(A~^(m)_ij) == A~^(n)_ji for the XXX and trigonometric Gaudin grids."""
    P = psi(a, b)
    u = field.sym("u")
    xi = [_elem(field, x) for x in xi]
    X = xxx_grid_operator(n, m, a, lam_n, b, xi, field, P.order_m)
    G = rep_D_trig_gaudin(n, m, b, xi, a, lam_n, field, P.order_n)
    pref = u ** n
    for x in xi:
        pref = pref * (u - x)
    Gm = to_pencil(G.op.lmul(pref).to_kind("uD"), 0, 0).grid
    Xm = to_pencil(X.op, 0, 0).grid
    d = len(P.tables)
    bad = _first_grid_mismatch(Xm, Gm, d, field)
    if bad is not None:
        (i, j), A, B = bad
        return {"pass": False, "witness": {"grid_position": [i, j], "xxx": str(A),
                                           "gaudin": str(B), "difference": str(A - B)}}
    support = sorted(k for k, v in Xm.items() if not v.is_zero())
    if any(i > n or j > m for i, j in support):
        return {"pass": False, "witness": {"support": [list(k) for k in support]}}
    return {"pass": True, "witness": None, "dim": d, "support": [list(k) for k in support]}


def verify_hamiltonian_duality(n, m, a, b, xi, z, field: Field = QQ) -> dict:
    P = psi(a, b)
    Gs = hamiltonians("xxxDynamical", n, m, a, b, xi, z, field, P.order_m)
    Hs = hamiltonians("trigGaudin", n, m, a, b, xi, z, field, P.order_n)
    for i, (g, h) in enumerate(zip(Gs.mats, Hs.mats)):
        if not g == h:
            return {"pass": False, "witness": {"index": i + 1, "G": str(g), "H": str(h)}}
    if not (Gs.commuting() and Hs.commuting()):
        return {"pass": False, "witness": {"reason": "Hamiltonians do not commute"}}
    return {"pass": True, "witness": None, "dim": len(P.tables)}


def verify_dual_routes(n, m, a, b, xi, lam_n, field: Field = QQ) -> dict:
    """u^n * (theta route) == quotient route, in the u∂ basis."""
    u = field.sym("u")
    T = rep_D_trig_gaudin(n, m, b, xi, a, lam_n, field)
    Q = rep_D_trig_gaudin_quotient(n, m, b, xi, a, lam_n, field, T.basis)
    lhs = T.op.lmul(u ** n).to_kind("uD")
    if lhs == Q.op:
        return {"pass": True, "witness": None, "dim": len(T.basis)}
    for k in sorted(set(lhs.terms) | set(Q.op.terms)):
        A, B = lhs.coeff(k), Q.op.coeff(k)
        if not A == B:
            return {"pass": False, "witness": {"power": k, "theta_route": str(A),
                                               "quotient_route": str(B)}}
    return {"pass": False, "witness": {"reason": "operators differ"}}


# -- grids of the two theta operators on weight spaces ------------------------------------

def rep_grids(n, m, a, b, lam, field: Field = QQ):
    """Pencil grids of the m-side (alpha=n, beta=1-m) and n-side (alpha=m, beta=1-n) operators."""
    Rm = rep_D_theta("m", n, m, a, b, lam, field)
    Rn = rep_D_theta("n", n, m, a, b, lam, field)
    Pm = to_pencil(Rm.op.to_kind("d"), n, 1 - m)
    Pn = to_pencil(Rn.op.to_kind("d"), m, 1 - n)
    return Pm.grid, Pn.grid, len(Rm.basis)


def verify_rep_pencil(n, m, a, b, lam, field: Field = QQ) -> dict:
    """Grid support (i <= n, j <= m) and pairwise commuting entries on both sides."""
    Gm, Gn, d = rep_grids(n, m, a, b, lam, field)
    for side, grid, bound in (("m", Gm, (n, m)), ("n", Gn, (m, n))):
        support = sorted(k for k, v in grid.items() if not v.is_zero())
        if any(i > bound[0] or j > bound[1] for i, j in support):
            return {"pass": False, "witness": {"side": side, "support": [list(k) for k in support]}}
        mats = [grid[k] for k in support]
        for p in range(len(mats)):
            for q in range(p + 1, len(mats)):
                if not mats[p].commutes_with(mats[q]):
                    return {"pass": False, "witness": {"side": side, "noncommuting":
                                                       [list(support[p]), list(support[q])]}}
    return {"pass": True, "witness": None, "dim": d}


def random_rational(rng: random.Random, height: int = 10, nonzero: bool = False) -> Fraction:
    while True:
        q = Fraction(rng.randint(-height, height), rng.randint(1, height))
        if q or not nonzero:
            return q


def spectral_certificate(fam1: dict, fam2: dict, trials: int, rng: random.Random,
                         field: Field = QQ, oracle: bool = False) -> dict:
    """charpoly(sum c_k X_k) == charpoly(sum c_k Y_k) for random rational c."""
    keys = sorted(set(fam1) | set(fam2))
    d = next(iter(fam1.values())).rows if fam1 else next(iter(fam2.values())).rows
    for t in range(trials):
        c = {k: random_rational(rng) for k in keys}
        X = Mat.zeros(d, d, field)
        Y = Mat.zeros(d, d, field)
        for k in keys:
            if k in fam1:
                X = X + fam1[k].scale(field.const(c[k]))
            if k in fam2:
                Y = Y + fam2[k].scale(field.const(c[k]))
        p1, p2 = X.charpoly(), Y.charpoly()
        if oracle and not p1 == charpoly_oracle(X):
            return {"pass": False, "witness": {"trial": t, "reason": "charpoly oracle disagreement"}}
        if p1 != p2:
            return {"pass": False, "witness": {"trial": t,
                                               "c": {f"{k[0]},{k[1]}": str(v) for k, v in c.items()},
                                               "charpoly_1": [str(x) for x in p1],
                                               "charpoly_2": [str(x) for x in p2]}}
    return {"pass": True, "witness": None, "trials": trials}


def rep_spectra(n, m, a, b, lam, trials: int, rng: random.Random, field: Field = QQ,
                perturb: bool = False) -> dict:
    """Spectral certificate for A^(m)_ij <-> A^(n)_ji; ``perturb`` runs the negative control."""
    Gm, Gn, d = rep_grids(n, m, a, b, lam, field)
    fam2 = {(i, j): A for (j, i), A in Gn.items()}
    if perturb:
        key = min(fam2)
        E = Mat.zeros(d, d, field)
        E.a[0][d - 1] = field.one
        fam2 = dict(fam2)
        fam2[key] = fam2[key] + E
    return spectral_certificate(Gm, fam2, trials, rng, field)


def modular_prescreen_main1(n, m, lam, drops, prime: int) -> dict:
    """F(Dbar_n) == Dbar_m with lambda reduced modulo a prime."""
    F = GF(prime)
    lam_p = [F.const(x) if not isinstance(x, RatFun) else x for x in lam]
    ctx = BlockWeightContext(n, m, lam_p, F)
    return verify_main1(ctx, drops)
