import random

from bdl.checks import sample_lambda
from bdl.exact_arith import QQ, Mat
from bdl.ore import DIFF, OreOp, apply_F
from bdl.unm import (
    BlockWeightContext, build_Dbar, build_ev_Dnm, compare_grids, drops_up_to, grids_main1,
    verify_main1,
)

u, l1, l2 = QQ.syms("u", "lam1", "lam2")


def _scalar(x):
    return Mat([[x]])


def test_C10_on_highest_space():
    ctx = BlockWeightContext(1, 1, [l1, l2])
    X = build_ev_Dnm(ctx, "C10", (0, 0))
    # twisted slot 1, untwisted slot 2: (d - lam1/u)(-1 - lam2/(u-1))
    d = OreOp.gen(DIFF)
    want = (d - l1 / u) * OreOp.scalar(DIFF, -1 - l2 / (u - 1))
    assert X == want.map_coeffs(_scalar)


def test_C01_hand_expansion():
    ctx = BlockWeightContext(1, 1, [l1, l2])
    d = OreOp.gen(DIFF)
    X0 = build_ev_Dnm(ctx, "C01", (0, 0))
    want0 = OreOp.scalar(DIFF, -1 - l1 / u) * (d - l2 / (u - 1))
    assert X0 == want0.map_coeffs(_scalar)
    X1 = build_ev_Dnm(ctx, "C01", (1, -1))
    want1 = (OreOp.scalar(DIFF, -1 - (l1 - 1) / u) * (d - (l2 + 1) / (u - 1))
             - OreOp.scalar(DIFF, (l1 - l2) / (u * (u - 1))))
    assert X1 == want1.map_coeffs(_scalar)


def test_main1_n1m1_frozen_grid():
    ctx = BlockWeightContext(1, 1, [l1, l2])
    Pn, Pm = grids_main1(ctx, (0, 0))
    want = {(0, 1): -l2, (1, 1): QQ.one, (0, 0): -l1 * l2, (1, 0): l1}
    assert {k: v.a[0][0] for k, v in Pn.grid.items()} == want
    assert compare_grids(apply_F(Pn, 1, 1), Pm) is None


def test_main1_symbolic_n1m1_depths():
    ctx = BlockWeightContext(1, 1, [l1, l2])
    for depth in (1, 2):
        res = verify_main1(ctx, drops_up_to(2, depth))
        assert res["pass"], res
        assert len(res["weight_spaces"]) == depth + 1


def test_main1_random_n1m1():
    rng = random.Random(8)
    for _ in range(3):
        ctx = BlockWeightContext(1, 1, [QQ.const(x) for x in sample_lambda(rng, 2, 10)])
        assert verify_main1(ctx, drops_up_to(2, 2))["pass"]


def test_main1_n2m2_two_random():
    rng = random.Random(9)
    for _ in range(2):
        ctx = BlockWeightContext(2, 2, [QQ.const(x) for x in sample_lambda(rng, 4, 10)])
        res = verify_main1(ctx, drops_up_to(4, 2))
        assert res["pass"], res


def test_pencil_membership_of_both_sides():
    ctx = BlockWeightContext(2, 1, [QQ.const(x) for x in sample_lambda(random.Random(1), 3, 10)])
    Pn, Pm = grids_main1(ctx, (1, 0, -1))
    assert Pn.alpha == 1 and Pn.beta == -1
    assert Pm.alpha == 2 and Pm.beta == 0


def test_weight_preservation():
    ctx = BlockWeightContext(1, 2, list(QQ.syms("lam1", "lam2", "lam3")))
    op = build_Dbar(ctx, "m", (1, 0, -1))
    dim = len(ctx.verma.basis((1, 0, -1)))
    assert all(c.rows == dim and c.cols == dim for c in op.terms.values())


def test_compare_grids_detects_difference():
    ctx = BlockWeightContext(1, 1, [l1, l2])
    Pn, Pm = grids_main1(ctx, (0, 0))
    Pm.grid[(0, 0)] = Pm.grid[(0, 0)] + Mat([[1]])
    assert compare_grids(apply_F(Pn, 1, 1), Pm) == (0, 0)
