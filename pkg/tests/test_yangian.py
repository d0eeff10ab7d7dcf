from fractions import Fraction as F
from itertools import permutations

from bdl.exact_arith import QQ, Mat, falling, perm_sign
from bdl.glk import VermaModule, sym_power
from bdl.ore import TAU, OreOp
from bdl.yangian import (
    TMatrix, assemble_D, assemble_D_coldet, bethe_Bk, build_T, op_matrix, qdet_scalar_on_singular,
    quantum_minor, verify_bethe_commutativity,
)

u, z1, z2 = QQ.syms("u", "z1", "z2")


def test_single_factor_evaluation():
    V, T = build_T(2, [(sym_power(2, 1), z1)])
    for i in range(2):
        for j in range(2):
            t = op_matrix(lambda w: T.apply_t(i, j, u, w), V.labels)
            want = V.matrix((i, j)).scale(1 / (u - z1))
            if i == j:
                want = want + Mat.identity(2)
            assert t == want


def test_rank_one_two_factors():
    V, T = build_T(1, [(sym_power(1, 3), z1), (sym_power(1, 2), z2)])
    t = op_matrix(lambda w: T.apply_t(0, 0, u, w), V.labels)
    assert t == Mat([[(1 + 3 / (u - z1)) * (1 + 2 / (u - z2))]])


def test_t_shifts_weights():
    V, T = build_T(2, [(sym_power(2, 1), 0), (sym_power(2, 2), F(1, 2))])
    for x in V.labels:
        img = T.apply_t(0, 1, u, {x: QQ.one})
        for y in img:
            wx, wy = V.weights[x], V.weights[y]
            assert (wy[0] - wx[0], wy[1] - wx[1]) == (1, -1)


def _row_form(T, J, w):
    """sum_sigma sgn t_{j1, j_s1}(u-k+1) ... t_{jk, j_sk}(u) applied to w."""
    k = len(J)
    out = {}
    for p in permutations(range(k)):
        vec = dict(w)
        for pos in range(k - 1, -1, -1):
            vec = T.apply_t(J[pos], J[p[pos]], u - (k - 1 - pos), vec)
        s = perm_sign(p)
        for key, c in vec.items():
            out[key] = out.get(key, QQ.zero) + c * s
    return {key: c for key, c in out.items() if not c.is_zero()}


def test_quantum_minor_column_and_row_forms():
    V, T = build_T(3, [(sym_power(3, 1), z1), (sym_power(3, 1), F(2, 3))])
    for J in [(0,), (0, 2), (0, 1, 2)]:
        col = quantum_minor(T, J, u, V.labels)
        row = op_matrix(lambda w: _row_form(T, J, w), V.labels)
        assert col == row
    assert quantum_minor(T, (1,), u, V.labels) == op_matrix(lambda w: T.apply_t(1, 1, u, w), V.labels)


def test_qdet_on_fundamental():
    # (1 + e11/u)(1 + e22/(u-1)) - e21 e12/(u(u-1)) = (u+1)/u on C^2(0)
    V, T = build_T(2, [(sym_power(2, 1), 0)])
    assert quantum_minor(T, (0, 1), u, V.labels) == Mat.identity(2).scale((u + 1) / u)


def test_bethe_B_edge_cases():
    V, T = build_T(2, [(sym_power(2, 1), z1), (sym_power(2, 1), 3)])
    C = [QQ.const(2), QQ.const(F(-1, 5))]
    assert bethe_Bk(T, 0, C, u, V.labels) == Mat.identity(4).scale(C[0] * C[1])
    assert bethe_Bk(T, 2, C, u, V.labels) == bethe_Bk(T, 2, [QQ.one, QQ.one], u, V.labels)
    V1, T1 = build_T(1, [(sym_power(1, 2), z1)])
    assert bethe_Bk(T1, 1, [QQ.one], u, V1.labels) == op_matrix(lambda w: T1.apply_t(0, 0, u, w), V1.labels)


def test_assemble_D_rank_one_and_routes():
    V1, T1 = build_T(1, [(sym_power(1, 2), z1)])
    c = QQ.const(F(3, 2))
    D = assemble_D(T1, [c], V1.labels)
    assert D == OreOp(TAU, {1: Mat([[c]]), 0: Mat([[-(1 + 2 / (u - z1))]])})
    V, T = build_T(2, [(sym_power(2, 1), 0)])
    C = [QQ.const(2), QQ.const(5)]
    assert assemble_D(T, C, V.labels) == assemble_D_coldet(T, C, V.labels)


def test_commutativity_small():
    V, T = build_T(2, [(sym_power(2, 1), F(1, 2)), (sym_power(2, 2), -3), (sym_power(2, 1), F(2, 7))])
    res = verify_bethe_commutativity(T, V.labels, [QQ.const(2), QQ.const(F(-1, 3))],
                                     [QQ.const(7), QQ.one])
    assert res["pass"], res


def test_qdet_scalar_on_verma():
    lam = list(QQ.syms("lam1", "lam2"))
    M = VermaModule(2, lam)
    T = TMatrix(2, [(M.act, 0)])
    want = qdet_scalar_on_singular(lam, u)
    assert want == (1 + lam[0] / u) * (1 + lam[1] / (u - 1))
    for drop in [(0, 0), (1, -1), (2, -2)]:
        for w in M.basis(drop):
            assert T.qdet(u, {w: QQ.one}) == {w: want}


def test_qdet_prefactor_identity():
    # (u+n)^{falling(n+m)} qdet_n(u+n) on weight nu equals u^{falling m} prod(u - z_i),
    # z_i = -nu_{n-i+1} - i
    n, m = 2, 3
    nu = list(QQ.syms("lam1", "lam2"))
    lhs = falling(u + n, n + m) * qdet_scalar_on_singular(nu, u, n)
    rhs = falling(u, m)
    for i in range(1, n + 1):
        rhs = rhs * (u + nu[n - i] + i)
    assert lhs == rhs
