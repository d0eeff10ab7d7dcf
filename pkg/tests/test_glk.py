import random
import pytest

from bdl.checks import sample_lambda
from bdl.exact_arith import QQ, Mat
from bdl.glk import (
    NonGeneric, TensorModule, VermaModule, VermaTensor, singular_space, sym_power, tensor,
    theta_forward, theta_inverse, verma_truncated,
)

l1, l2 = QQ.syms("lam1", "lam2")


def _commutator_ok(V, k):
    for i in range(k):
        for j in range(k):
            for p in range(k):
                for q in range(k):
                    A, B = V.matrix((i, j)), V.matrix((p, q))
                    lhs = A * B - B * A
                    rhs = Mat.zeros(V.dim, V.dim)
                    if j == p:
                        rhs = rhs + V.matrix((i, q))
                    if q == i:
                        rhs = rhs - V.matrix((p, j))
                    if not lhs == rhs:
                        return False
    return True


def test_sym_power_basics():
    V = sym_power(2, 1)
    assert V.dim == 2
    assert V.act((0, 1), (0, 1)) == {(1, 0): 1}
    S2 = sym_power(2, 2)
    assert S2.act((0, 0), (2, 0)) == {(2, 0): 2}
    S = sym_power(3, 2)
    assert S.dim == 6
    assert _commutator_ok(S, 3)


def test_tensor_products():
    triv = sym_power(2, 0)
    V = sym_power(2, 3)
    T = tensor([V, triv])
    assert T.dim == V.dim
    C2 = sym_power(2, 1)
    assert len(tensor([C2, C2]).weight_space((1, 1))) == 2
    assert _commutator_ok(tensor([C2, C2, C2]), 2)


def test_singular_spaces():
    C2 = sym_power(2, 1)
    sing = singular_space(tensor([C2, C2]), (1, 1))
    assert len(sing) == 1
    (v,) = sing
    assert v[((1, 0), (0, 1))] == -v[((0, 1), (1, 0))]
    top = singular_space(tensor([C2, C2]), (2, 0))
    assert len(top) == 1
    assert singular_space(sym_power(2, 2), (1, 1)) == []


def test_verma_highest_and_first_drop():
    M = verma_truncated(2, [l1, l2], (2,))
    assert M.verma.basis((0, 0)) == [()]
    assert M.verma.act((0, 0), ()) == {(): l1}
    f = ((1, 0),)
    assert M.verma.act((0, 1), f) == {(): l1 - l2}


def test_shapovalov_depth_two_nondegenerate():
    # e^2 f^2 v = 2 h (h - 1) v with h = lam1 - lam2
    Mv = VermaModule(2, [l1, l2])
    w = Mv.act((0, 1), ((1, 0), (1, 0)))
    ww = {}
    for t, c in w.items():
        for s, d in Mv.act((0, 1), t).items():
            ww[s] = ww.get(s, QQ.zero) + c * d
    h = l1 - l2
    assert ww == {(): 2 * h * (h - 1)}


def test_gl3_verma_relations():
    lam = QQ.syms("lam1", "lam2", "lam3")
    Mv = VermaModule(3, list(lam))
    f = ((2, 0),)
    # e_13 f_31 v = (lam1 - lam3) v
    assert Mv.act((0, 2), f) == {(): lam[0] - lam[2]}


def test_truncation_exits_recorded():
    M = verma_truncated(2, [l1, l2], (1,))
    M.matrix((1, 0))
    assert M.exits


def test_theta_round_trip_and_dimensions():
    C2 = sym_power(2, 1)
    V = tensor([C2, C2])
    VM = VermaTensor(V, VermaModule(2, [l1, l2]))
    for b in [(2, 0), (1, 1), (0, 2)]:
        Vb, lifts = theta_inverse(VM, b)
        assert len(Vb) == len(V.weight_space(b))
        for x, L in zip(Vb, lifts):
            assert theta_forward(L) == {x: QQ.one}
    Vb, lifts = theta_inverse(VM, (2, 0))
    assert lifts == [{(Vb[0], ()): QQ.one}]


def test_theta_random_instances():
    rng = random.Random(4)
    V = tensor([sym_power(2, 1), sym_power(2, 2)])
    for _ in range(10):
        lam = sample_lambda(rng, 2, 10)
        VM = VermaTensor(V, VermaModule(2, lam))
        Vb, lifts = theta_inverse(VM, (1, 2))
        for x, L in zip(Vb, lifts):
            assert theta_forward(L) == {x: QQ.one}


def test_theta_nongeneric():
    C2 = sym_power(2, 1)
    VM = VermaTensor(tensor([C2, C2]), VermaModule(2, [0, 0]))
    with pytest.raises(NonGeneric):
        theta_inverse(VM, (0, 2))
