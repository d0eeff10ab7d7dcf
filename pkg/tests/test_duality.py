import random
from fractions import Fraction as F

import pytest

from bdl.exact_arith import QQ, Mat
from bdl.duality import (
    contingency_tables, psi, rep_spectra, spectral_certificate, verify_dual_routes,
    verify_hamiltonian_duality, verify_main3, verify_rep_pencil,
)


def test_contingency_n2m2():
    tabs = contingency_tables((1, 1), (1, 1))
    assert [t.K for t in tabs] == [((0, 1), (1, 0)), ((1, 0), (0, 1))]
    P = psi((1, 1), (1, 1))
    assert len(P.order_m) == len(P.order_n) == 2
    i = [t.K for t in P.tables].index(((1, 0), (0, 1)))
    assert P.order_m[i] == ((1, 0), (0, 1)) and P.order_n[i] == ((1, 0), (0, 1))


def test_psi_single_row():
    for b in [(3, 0, 1), (1, 1, 2), (4, 0, 0)]:
        P = psi((4,), b)
        assert len(P.tables) == 1
        assert P.order_m == [(b,)]
        assert P.order_n == [tuple((x,) for x in b)]


def test_psi_inverse_swaps_roles():
    P = psi((2, 0), (1, 1))
    Q = P.inverse()
    assert (Q.a, Q.b) == ((1, 1), (2, 0))
    assert Q.order_m == P.order_n and Q.order_n == P.order_m
    R = psi((2, 1), (1, 1, 1)).inverse()
    assert [t.K for t in R.tables] == [t.K for t in psi((1, 1, 1), (2, 1)).tables]


def test_margin_mismatch():
    with pytest.raises(ValueError):
        psi((2, 1), (1, 1))


def test_main3_instances():
    N = 3
    lam, xi = QQ.syms("lam1", "xi1")
    assert verify_main3(1, 1, [N], [N], [xi], [lam])["pass"]
    res = verify_main3(2, 2, (1, 1), (1, 1), [2, 3], [5, 1])
    assert res["pass"]
    assert all(i <= 2 and j <= 2 for i, j in res["support"])


def test_hamiltonian_duality():
    N = 2
    z = QQ.sym("z1")
    assert verify_hamiltonian_duality(1, 1, [N], [N], [F(1, 2)], [z])["pass"]
    assert verify_hamiltonian_duality(2, 2, (1, 1), (1, 1), [2, 3], [F(1, 2), 4])["pass"]


def test_dual_routes():
    assert verify_dual_routes(2, 2, (1, 1), (1, 1), [F(3, 2), -1], [F(1, 5), F(7, 3)])["pass"]


def test_rep_pencil_symbolic_lambda_m():
    lam = [F(3, 7), F(-2, 5)] + list(QQ.syms("lam3", "lam4"))
    assert verify_rep_pencil(2, 2, (1, 1), (1, 1), lam)["pass"]


def _family(rng, d, keys):
    return {k: Mat([[F(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(d)] for _ in range(d)])
            for k in keys}


def test_spectral_certificate_controls():
    rng = random.Random(3)
    keys = [(0, 0), (0, 1), (1, 0)]
    fam = _family(rng, 3, keys)
    assert spectral_certificate(fam, fam, 4, random.Random(1), oracle=True)["pass"]
    P = Mat([[1, 2, 0], [0, 1, 3], [1, 0, 1]])
    Pi = P.inverse()
    conj = {k: P * A * Pi for k, A in fam.items()}
    assert spectral_certificate(fam, conj, 4, random.Random(1))["pass"]
    bad = dict(conj)
    bad[(0, 1)] = bad[(0, 1)] + Mat([[0, 0, 1], [0, 0, 0], [0, 0, 0]])
    res = spectral_certificate(fam, bad, 4, random.Random(1))
    assert not res["pass"] and res["witness"]["charpoly_1"] != res["witness"]["charpoly_2"]


def test_rep_spectra_and_negative_control():
    lam = [F(3, 7), F(-2, 5), F(9, 4), F(1, 3)]
    assert rep_spectra(2, 2, (1, 1), (1, 1), lam, 3, random.Random(0))["pass"]
    neg = rep_spectra(2, 2, (1, 1), (1, 1), lam, 3, random.Random(0), perturb=True)
    assert not neg["pass"] and neg["witness"] is not None
