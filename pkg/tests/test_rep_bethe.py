from fractions import Fraction as F

import pytest

from bdl.exact_arith import QQ, Mat
from bdl.ore import DERIV, EULER, TAU, OreOp, to_pencil
from bdl.rep_bethe import (
    hamiltonians, mat_residue, pbw_normal, rep_D_theta, rep_D_trig_gaudin,
    rep_D_trig_gaudin_quotient, rep_D_xxx, residue, residue_identities, verify_degeneration,
    xxx_grid_operator, z_points,
)

u, l1, l2, xi1, c = QQ.syms("u", "lam1", "lam2", "xi1", "c")


def _entry_grid(P):
    return {k: v.a[0][0] for k, v in P.grid.items()}


def test_theta_operator_n1m1_hand_values():
    N = 2
    Pm = to_pencil(rep_D_theta("m", 1, 1, [N], [N], [l1, l2]).op.to_kind("d"), 1, 0)
    Pn = to_pencil(rep_D_theta("n", 1, 1, [N], [N], [l1, l2]).op.to_kind("d"), 1, 0)
    want = {(1, 1): QQ.one, (0, 1): l1 - N, (1, 0): -(l2 + N), (0, 0): N - l1 * l2}
    assert _entry_grid(Pm) == want
    assert _entry_grid(Pn) == {(j, i): x for (i, j), x in want.items()}


def test_theta_operator_commuting_n2m2():
    lam = [F(3, 7), F(-2, 5), F(9, 4), F(1, 3)]
    for side in "mn":
        R = rep_D_theta(side, 2, 2, (1, 1), (1, 1), lam)
        assert len(R.basis) == 2
        assert R.commuting()


def test_xxx_n1m1():
    N = 3
    R = rep_D_xxx(1, 1, [N], [l1], [N], [xi1])
    z = l1 + N - 1
    assert R.op == OreOp(TAU, {1: Mat([[1]]), 0: Mat([[-xi1 * (1 + N / (u - z))]])})


def test_xxx_xi_zero_keeps_only_tau_power():
    R = rep_D_xxx(2, 2, (1, 1), [F(1, 2), F(5, 3)], (1, 1), [0, 0])
    assert R.op == OreOp(TAU, {2: Mat.identity(2)})


def test_xxx_commuting_and_shifted_grid_n1m1():
    R = rep_D_xxx(2, 2, (2, 0), [F(1, 2), F(5, 3)], (1, 1), [2, F(-1, 4)])
    assert R.commuting()
    N = 2
    X = xxx_grid_operator(1, 1, [N], [l1], [N], [xi1])
    grid = _entry_grid(to_pencil(X.op, 0, 0))
    assert grid == {(1, 1): QQ.one, (0, 1): -l1 - N, (1, 0): -xi1, (0, 0): xi1 * l1}


def test_trig_gaudin_n1m1():
    N = 2
    G = rep_D_trig_gaudin(1, 1, [N], [xi1], [N], [l1])
    want = OreOp(DERIV, {1: Mat([[1]]), 0: Mat([[-N / (u - xi1) - l1 / u]])})
    assert G.op == want
    Q = rep_D_trig_gaudin_quotient(1, 1, [N], [xi1], [N], [l1])
    assert Q.op == G.op.lmul(u).to_kind(EULER)


def test_trig_gaudin_routes_n2m2_symbolic():
    lam = list(QQ.syms("lam1", "lam2"))
    G = rep_D_trig_gaudin(2, 2, (1, 1), [2, 3], (1, 1), lam)
    Q = rep_D_trig_gaudin_quotient(2, 2, (1, 1), [2, 3], (1, 1), lam, order=G.basis)
    assert G.op.lmul(u ** 2).to_kind(EULER) == Q.op
    assert G.commuting()


def test_pbw_normal_order():
    # e12 e21 = e21 e12 + e11 - e22
    got = dict(pbw_normal(((0, 1), (1, 0))))
    assert got == {((1, 0), (0, 1)): 1, ((0, 0),): 1, ((1, 1),): -1}


def test_hamiltonians_n1m1():
    N = 3
    z = l1 + N - 1
    H = hamiltonians("trigGaudin", 1, 1, [N], [N], [xi1], [z])
    G = hamiltonians("xxxDynamical", 1, 1, [N], [N], [xi1], [z])
    assert G.mats[0] == Mat([[-F(N * N, 2) + (z + 1) * N]])
    assert H.mats[0] == Mat([[(z + 1 - F(N, 2)) * N]])
    assert H.mats[0] == G.mats[0]


def test_hamiltonians_commute_with_bethe_coefficients():
    a = b = (1, 1)
    xi, lam_n = [2, F(-1, 3)], [F(1, 2), F(5, 2)]
    z = z_points([QQ.const(x) for x in lam_n], a)
    Hs = hamiltonians("trigGaudin", 2, 2, a, b, xi, z)
    G = rep_D_trig_gaudin(2, 2, b, xi, a, lam_n, order=Hs.basis)
    total = Hs.mats[0] + Hs.mats[1]
    assert Hs.commuting()
    assert all(total.commutes_with(cf.map(lambda e: e.subs({"u": 7})))
               for cf in G.op.terms.values())
    Gs = hamiltonians("xxxDynamical", 2, 2, a, b, xi, z)
    X = rep_D_xxx(2, 2, a, lam_n, b, xi, order=Gs.basis)
    total = Gs.mats[0] + Gs.mats[1]
    assert Gs.commuting()
    assert all(total.commutes_with(cf.map(lambda e: e.subs({"u": 5})))
               for cf in X.op.terms.values())


def test_hamiltonians_reject_coincident_xi():
    with pytest.raises(ValueError):
        hamiltonians("trigGaudin", 2, 2, (1, 1), (1, 1), [2, 2], [0, 0])


def test_residue_extraction():
    x = QQ.const(F(5, 2))
    assert residue(c / (u - x), x) == c
    f = (3 * u ** 2 + c) / ((u - 2) ** 2 * (u + 1))
    assert residue(f, 2) == F(8, 3) - c / 9
    assert residue(f, -1) == c / 9 + F(1, 3)
    assert residue(u ** 2, 1).is_zero()
    assert mat_residue(Mat([[1 / (u - 1), u]]), 1) == Mat([[1, 0]])


def test_residue_identities_instances():
    assert residue_identities(1, 1, [3], [3], [F(7, 2)], [F(1, 3)])["pass"]
    assert residue_identities(2, 2, (1, 1), (1, 1), [2, 3], [5, 1])["pass"]


def test_degeneration_small():
    assert verify_degeneration(1, 1, [2], [2], [F(3, 2)], [F(-1, 4)])["pass"]
    assert verify_degeneration(2, 2, (1, 1), (1, 1), [2, F(-1, 3)], [F(5, 2), 1])["pass"]
