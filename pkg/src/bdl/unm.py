"""Difference operators with coefficients in U(gl_{n+m}) on Verma weight spaces.

The two operators of the duality are obtained from the evaluated column
determinant with a block twist C10 = (1^n, 0^m) or C01 = (0^n, 1^m):

    slot i twisted:    d delta_{s(i),i} - e_{s(i),i} / (u - i + 1)
    slot i untwisted:  -delta_{s(i),i}  - e_{s(i),i} / (u - i + 1)

Dbar_m = (u+n)^{falling(n+m)} (-1)^n  tau^n ev D(C01) tau^-n
Dbar_n = (u+m)^{falling(n+m)} (-1)^m  tau^m delta_hat_{n+m}(ev D(C10)) tau^-m

Coefficients are computed as matrices on a weight space of M_lambda by
applying the ordered products to PBW basis vectors.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
import itertools
import time

from .exact_arith import QQ, Field, Mat, RatFun, falling
from .glk import VermaModule, positive_drop, vadd, vscale
from .ore import DIFF, TAU, OreOp, Pencil, PencilMembershipError, apply_F, delta_hat, to_pencil
from .yangian import coldet_apply, opvecs_to_oreop


@dataclass
class BlockWeightContext:
    n: int
    m: int
    lam: list
    field: Field = QQ
    verma: VermaModule = dc_field(init=False)

    def __post_init__(self):
        if len(self.lam) != self.n + self.m:
            raise ValueError("lambda must have n+m entries")
        self.verma = VermaModule(self.n + self.m, self.lam, self.field)


def drops_up_to(k: int, total: int) -> list[tuple]:
    """Drops (epsilon coordinates) with simple-root coordinates summing to <= total."""
    out = []
    for coords in itertools.product(range(total + 1), repeat=k - 1):
        if sum(coords) > total:
            continue
        delta = [0] * k
        for t, c in enumerate(coords):
            delta[t] += c
            delta[t + 1] -= c
        out.append(tuple(delta))
    return out


def build_ev_Dnm(ctx: BlockWeightContext, pattern: str, drop) -> OreOp:
    """ev D_{n+m}(C) on M_lambda[lambda - drop], pattern 'C10' or 'C01'."""
    n, m, field = ctx.n, ctx.m, ctx.field
    N = n + m
    M = ctx.verma
    u = field.sym("u")
    if pattern == "C10":
        twisted = set(range(n))
    elif pattern == "C01":
        twisted = set(range(n, N))
    else:
        raise ValueError(pattern)
    inv = [(u - p).inv() for p in range(N)]

    def entry(row, col):
        tw = col in twisted
        a = 1 if (tw and row == col) else 0
        coef = -inv[col]

        def fn(vec, row=row, col=col, tw=tw, coef=coef):
            out = {}
            for w, c in vec.items():
                vadd(out, M.act((row, col), w), c)
            out = vscale(out, coef)
            if row == col and not tw:
                vadd(out, vec, -1)
            return out

        return a, fn

    basis = M.basis(drop)
    ovs = [coldet_apply(N, entry, DIFF, {w: field.one}, field) for w in basis]
    return opvecs_to_oreop(ovs, basis, DIFF, field)


def build_Dbar(ctx: BlockWeightContext, side: str, drop) -> OreOp:
    n, m, field = ctx.n, ctx.m, ctx.field
    u = field.sym("u")
    if side == "m":
        X = build_ev_Dnm(ctx, "C01", drop)
        pref = falling(u + n, n + m, field) * (-1) ** n
        return X.shift_u(n).lmul(pref)
    if side == "n":
        X = build_ev_Dnm(ctx, "C10", drop)
        Y = delta_hat(X.to_kind(TAU), n + m).to_kind(DIFF)
        pref = falling(u + m, n + m, field) * (-1) ** m
        return Y.shift_u(m).lmul(pref)
    raise ValueError(side)


def grids_main1(ctx: BlockWeightContext, drop) -> tuple[Pencil, Pencil]:
    """Pencil grids of Dbar_n (alpha=m, beta=1-n) and Dbar_m (alpha=n, beta=1-m)."""
    n, m = ctx.n, ctx.m
    Pn = to_pencil(build_Dbar(ctx, "n", drop), m, 1 - n)
    Pm = to_pencil(build_Dbar(ctx, "m", drop), n, 1 - m)
    return Pn, Pm


def compare_grids(P: Pencil, Q: Pencil):
    """First grid position where P and Q differ, or None."""
    keys = sorted(set(P.grid) | set(Q.grid))
    for k in keys:
        a, b = P.grid.get(k), Q.grid.get(k)
        za = a is None or a.is_zero()
        zb = b is None or b.is_zero()
        if za and zb:
            continue
        if za != zb or not a == b:
            return k
    return None


def verify_main1(ctx: BlockWeightContext, drops) -> dict:
    """F(Dbar_n) == Dbar_m on each listed weight space."""
    t0 = time.perf_counter()
    covered = []
    for drop in drops:
        if not positive_drop(drop):
            continue
        if not ctx.verma.basis(drop):
            continue
        try:
            Pn, Pm = grids_main1(ctx, drop)
        except PencilMembershipError as exc:
            return {"pass": False, "witness": {"drop": list(drop), "membership": exc.witness},
                    "weight_spaces": covered}
        FPn = apply_F(Pn, ctx.n, ctx.m)
        bad = compare_grids(FPn, Pm)
        if bad is not None:
            a, b = FPn.grid.get(bad), Pm.grid.get(bad)
            return {"pass": False,
                    "witness": {"drop": list(drop), "grid_position": list(bad),
                                "F_of_Dbar_n": str(a), "Dbar_m": str(b)},
                    "weight_spaces": covered}
        support_ok = all(i <= ctx.m and j <= ctx.n for (i, j) in Pn.grid)
        if not support_ok:
            return {"pass": False, "witness": {"drop": list(drop), "support": sorted(Pn.grid)},
                    "weight_spaces": covered}
        covered.append({"drop": list(drop), "dim": len(ctx.verma.basis(drop))})
    return {"pass": True, "witness": None, "weight_spaces": covered,
            "elapsed_s": time.perf_counter() - t0}
