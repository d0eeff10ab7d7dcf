"""Verification checks run by the command line driver.

Each check expands a configuration into independent instances.  An instance is
a (check, index) pair; its random parameters come from a generator seeded by
``f"{seed}/{check}/{index}"`` so results do not depend on scheduling.
"""

from __future__ import annotations

import random
import signal
import time
from contextlib import contextmanager
from dataclasses import dataclass, field as dc_field, asdict
from fractions import Fraction
from itertools import combinations

from .exact_arith import GF, QQ, RatFun
from .glk import NonGeneric, sym_power
from . import duality, ore, rep_bethe, unm, yangian

MAX_ATTEMPTS = 16


class BudgetExceeded(Exception):
    pass


class GenericityExhausted(Exception):
    def __init__(self, attempts, last):
        super().__init__(f"no generic sample after {attempts} attempts: {last}")
        self.attempts = attempts
        self.last = last


@dataclass
class InstanceConfig:
    check: str
    n: int | None = None
    m: int | None = None
    a: list | None = None
    b: list | None = None
    seed: int = 0
    sampling: str = "auto"          # auto | random | symbolic
    height: int = 10
    depth: int = 2
    samples: int = 3
    trials: int = 5
    mode: str = "exact"             # exact | modular
    prime: int = (1 << 61) - 1
    jobs: int = 1
    budget: float | None = None
    large: bool = False
    negative_control: bool = False

    def to_dict(self):
        return asdict(self)


CHECK_INFO = {
    "main1": "F(Dbar_n) == Dbar_m on weight spaces of the gl_{n+m} Verma module",
    "main3": "XXX and trigonometric Gaudin grids agree under Psi; theta and quotient routes agree",
    "hamiltonians": "Psi(G_i) == H_i for the XXX dynamical and trigonometric Gaudin Hamiltonians",
    "residues": "H_i and G_i recovered as residues of (C_1^2/2 - C_2) and (D_1^2/2 - D_2)",
    "duality-rep-spectra": "pencil support, commuting coefficients and charpoly certificates on the two carriers",
    "degeneration": "lambda^(m) = r xi: r-degree bounds and leading grids match the XXX and Gaudin operators",
    "ore-identities": "rising-factorial, single-block and Wronskian identities; F anti-homomorphism",
    "commutativity": "Bethe subalgebra commutativity, qdet centrality and C-independence",
}

DEFAULT_BUDGET_S = {
    "main1": 900, "main3": 600, "hamiltonians": 120, "residues": 300,
    "duality-rep-spectra": 600, "degeneration": 900, "ore-identities": 60,
    "commutativity": 300,
}


# -- sampling -------------------------------------------------------------------

def rat(rng: random.Random, height: int) -> Fraction:
    return Fraction(rng.randint(-height, height), rng.randint(1, height))


def sample_xi(rng, m, height):
    """Distinct nonzero rationals."""
    while True:
        xs = [rat(rng, height) for _ in range(m)]
        if all(x != 0 for x in xs) and len(set(xs)) == m:
            return xs


def sample_lambda(rng, k, height):
    """Rationals with no integer differences."""
    while True:
        ls = [rat(rng, height) for _ in range(k)]
        if all((x - y).denominator != 1 for x, y in combinations(ls, 2)):
            return ls


def with_resampling(rng, draw, run):
    """run(draw(rng)) with up to MAX_ATTEMPTS draws on genericity failure."""
    last = None
    for attempt in range(1, MAX_ATTEMPTS + 1):
        params = draw(rng)
        try:
            return attempt, params, run(params)
        except (NonGeneric, ZeroDivisionError) as exc:
            last = str(exc)
    raise GenericityExhausted(MAX_ATTEMPTS, last)


def fmt(x):
    if isinstance(x, (list, tuple)):
        return [fmt(y) for y in x]
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, RatFun):
        return str(x)
    return x


@contextmanager
def budget(seconds):
    if not seconds or not hasattr(signal, "setitimer"):
        yield
        return

    def handler(signum, frame):
        raise BudgetExceeded(seconds)

    old = signal.signal(signal.SIGALRM, handler)
    signal.setitimer(signal.ITIMER_REAL, seconds)
    try:
        yield
    finally:
        signal.setitimer(signal.ITIMER_REAL, 0)
        signal.signal(signal.SIGALRM, old)


# -- instance planning ----------------------------------------------------------------

def _dims(cfg: InstanceConfig, n=2, m=2, a=(1, 1), b=(1, 1)):
    n = cfg.n if cfg.n is not None else n
    m = cfg.m if cfg.m is not None else m
    a = list(cfg.a) if cfg.a is not None else list(a)
    b = list(cfg.b) if cfg.b is not None else list(b)
    return n, m, a, b


def _symbolic(cfg, small):
    if cfg.sampling == "auto":
        return small
    return cfg.sampling == "symbolic"


def plan(cfg: InstanceConfig) -> list[dict]:
    """List of instance descriptors (plain dicts, picklable)."""
    c = cfg.check
    out = []
    if c == "ore-identities":
        for fam in ("rel41", "single-block", "wronskian", "F-antihom"):
            out.append({"family": fam})
    elif c == "commutativity":
        if cfg.n is not None or cfg.a is not None:
            k = cfg.n if cfg.n is not None else 2
            parts = list(cfg.a) if cfg.a is not None else [1, 1]
            out.append({"k": k, "parts": parts})
        else:
            out += [{"k": 2, "parts": [1, 2, 1]}, {"k": 3, "parts": [1, 1]},
                    {"k": 3, "parts": [2, 1]}]
    elif c == "main1":
        n, m, _, _ = _dims(cfg, 1, 1)
        if _symbolic(cfg, n + m <= 2) and cfg.mode == "exact":
            out.append({"n": n, "m": m, "symbolic": True})
        else:
            out += [{"n": n, "m": m, "symbolic": False, "sample": s} for s in range(cfg.samples)]
    elif c in ("main3", "hamiltonians", "residues", "degeneration"):
        n, m, a, b = _dims(cfg)
        sym = _symbolic(cfg, False)
        out += [{"n": n, "m": m, "a": a, "b": b, "symbolic": sym, "sample": s}
                for s in range(1 if sym else cfg.samples)]
        if c == "main3":
            out.append({"n": n, "m": m, "a": a, "b": b, "route": "theta-vs-quotient"})
    elif c == "duality-rep-spectra":
        n, m, a, b = _dims(cfg)
        out.append({"n": n, "m": m, "a": a, "b": b, "part": "pencil"})
        out += [{"n": n, "m": m, "a": a, "b": b, "part": "spectra", "sample": s}
                for s in range(cfg.samples)]
    else:
        raise ValueError(f"unknown check {c}")
    return out


# -- instance execution ----------------------------------------------------------------

def run_instance(cfg_dict: dict, index: int, inst: dict) -> dict:
    cfg = InstanceConfig(**cfg_dict)
    rng = random.Random(f"{cfg.seed}/{cfg.check}/{index}")
    t0 = time.perf_counter()
    params = dict(inst)
    try:
        with budget(cfg.budget if cfg.budget is not None else DEFAULT_BUDGET_S[cfg.check]):
            res = _dispatch(cfg, inst, rng, params)
    except BudgetExceeded as exc:
        res = {"pass": False, "witness": {"failure_class": "budget exceeded",
                                          "budget_s": exc.args[0]}}
    except GenericityExhausted as exc:
        res = {"pass": False, "witness": {"failure_class": "genericity exhausted",
                                          "attempts": exc.attempts, "last_error": exc.last}}
    res["params"] = params
    res["elapsed_ms"] = int((time.perf_counter() - t0) * 1000)
    return res


def _dispatch(cfg, inst, rng, params):
    c = cfg.check
    if c == "ore-identities":
        return _ore(inst["family"], rng)
    if c == "commutativity":
        return _commutativity(inst, rng, cfg, params)
    if c == "main1":
        return _main1(inst, rng, cfg, params)
    if c == "duality-rep-spectra":
        return _rep_spectra(inst, rng, cfg, params)
    return _xxx_gaudin(c, inst, rng, cfg, params)


def _ore(family, rng):
    if family == "rel41":
        c = QQ.sym("c")
        bad = [i for i in range(7) if not ore.rel41_identity(i, c)]
        return {"pass": not bad, "witness": {"failing_i": bad} if bad else None}
    if family == "single-block":
        for total in range(2, 7):
            for n in range(1, total):
                m = total - n
                for k in range(n + m + 1):
                    for J in combinations(range(1, n + m + 1), k):
                        r = ore.scalar_DJ_identity(n, m, J)
                        if not r["pass"]:
                            return {"pass": False, "witness": r}
        return {"pass": True, "witness": None}
    if family == "wronskian":
        for total in range(2, 6):
            for n in range(1, total):
                m = total - n
                for k in range(m + 1):
                    for J2 in combinations(range(n + 1, n + m + 1), k):
                        if not ore.wronskian_factorization(n, m, J2):
                            return {"pass": False, "witness": {"n": n, "m": m, "J2": list(J2)}}
        return {"pass": True, "witness": None}
    if family == "F-antihom":
        for t in range(100):
            n, m = rng.randint(1, 3), rng.randint(1, 3)
            e = [rng.randint(0, 3) for _ in range(4)]
            p = ore.pencil_monomial(e[0], e[1], n, m)
            q = ore.pencil_monomial(e[2], e[3], n, m)
            if not ore.F_antihom_pair(p, q, n, m):
                return {"pass": False, "witness": {"pair": t, "n": n, "m": m, "exponents": e}}
        for t in range(20):
            n, m = rng.randint(1, 3), rng.randint(1, 3)
            grid = {(rng.randint(0, m), rng.randint(0, n)): QQ.const(rat(rng, 10))
                    for _ in range(rng.randint(1, 5))}
            p = ore.Pencil(Fraction(m), Fraction(1 - n), grid)
            if not ore.F_involution(p, n, m):
                return {"pass": False, "witness": {"involution": t, "n": n, "m": m}}
        return {"pass": True, "witness": None}
    raise ValueError(family)


def _commutativity(inst, rng, cfg, params):
    k, parts = inst["k"], inst["parts"]

    def draw(r):
        return sample_xi(r, len(parts), cfg.height), [rat(r, cfg.height) or 1 for _ in range(k)], \
            [rat(r, cfg.height) or 1 for _ in range(k)]

    def run(p):
        zs, C, C2 = p
        V, T = yangian.build_T(k, [(sym_power(k, a), z) for a, z in zip(parts, zs)])
        if V.dim > 20 and not cfg.large:
            return {"pass": False, "witness": {"failure_class": "instance too large",
                                               "dim": V.dim}}
        return yangian.verify_bethe_commutativity(T, V.labels, C, C2)

    attempts, p, res = with_resampling(rng, draw, run)
    params.update({"z": fmt(p[0]), "C": fmt(p[1]), "C2": fmt(p[2]), "attempts": attempts})
    return res


def _main1(inst, rng, cfg, params):
    n, m = inst["n"], inst["m"]
    drops = unm.drops_up_to(n + m, cfg.depth)
    params["depth"] = cfg.depth
    if inst["symbolic"]:
        lam = QQ.syms(*[f"lam{i}" for i in range(1, n + m + 1)])
        params["lambda"] = "symbolic"
        return unm.verify_main1(unm.BlockWeightContext(n, m, list(lam)), drops)

    def draw(r):
        return sample_lambda(r, n + m, cfg.height)

    def run(lam):
        pre = duality.modular_prescreen_main1(n, m, lam, drops, cfg.prime)
        if cfg.mode == "modular" or not pre["pass"]:
            return dict(pre, prescreen=pre["pass"])
        res = unm.verify_main1(unm.BlockWeightContext(n, m, [QQ.const(x) for x in lam]), drops)
        res["prescreen"] = True
        return res

    attempts, lam, res = with_resampling(rng, draw, run)
    params.update({"lambda": fmt(lam), "attempts": attempts, "prescreen": res.pop("prescreen")})
    if cfg.mode == "modular":
        params["prime"] = cfg.prime
    return res


def _rep_spectra(inst, rng, cfg, params):
    n, m, a, b = inst["n"], inst["m"], inst["a"], inst["b"]
    if inst["part"] == "pencil":
        def draw(r):
            return sample_lambda(r, n, cfg.height)

        def run(lam_left):
            lam_m = list(QQ.syms(*[f"lam{n + j}" for j in range(1, m + 1)]))
            return duality.verify_rep_pencil(n, m, a, b, [QQ.const(x) for x in lam_left] + lam_m)

        attempts, lam, res = with_resampling(rng, draw, run)
        params.update({"lambda_first_n": fmt(lam), "lambda_m": "symbolic", "attempts": attempts})
        return res

    def draw(r):
        return sample_lambda(r, n + m, cfg.height)

    def run(lam):
        trial_rng = random.Random(f"{cfg.seed}/trials/{lam}")
        pos = duality.rep_spectra(n, m, a, b, lam, cfg.trials, trial_rng,
                                  perturb=cfg.negative_control)
        if cfg.negative_control or not pos["pass"]:
            return pos
        neg = duality.rep_spectra(n, m, a, b, lam, cfg.trials, random.Random(f"{cfg.seed}/neg"),
                                  perturb=True)
        if neg["pass"] or neg["witness"] is None:
            return {"pass": False, "witness": {"reason": "negative control was not detected"}}
        return pos

    attempts, lam, res = with_resampling(rng, draw, run)
    params.update({"lambda": fmt(lam), "trials": cfg.trials, "attempts": attempts,
                   "negative_control": cfg.negative_control})
    return res


def _xxx_gaudin(check, inst, rng, cfg, params):
    n, m, a, b = inst["n"], inst["m"], inst["a"], inst["b"]
    if inst.get("route"):
        def draw(r):
            return sample_xi(r, m, cfg.height)

        def run(xi):
            lam_n = list(QQ.syms(*[f"lam{i}" for i in range(1, n + 1)]))
            return duality.verify_dual_routes(n, m, a, b, xi, lam_n)

        attempts, xi, res = with_resampling(rng, draw, run)
        params.update({"xi": fmt(xi), "lambda_n": "symbolic", "attempts": attempts})
        return res

    if inst["symbolic"]:
        def draw(r):
            return (list(QQ.syms(*[f"xi{j}" for j in range(1, m + 1)])),
                    list(QQ.syms(*[f"lam{i}" for i in range(1, n + 1)])))
    else:
        def draw(r):
            return sample_xi(r, m, cfg.height), sample_lambda(r, n, cfg.height)

    def run(p):
        xi, lam_n = p
        if check == "main3":
            return duality.verify_main3(n, m, a, b, xi, lam_n)
        if check == "hamiltonians":
            lam_n = [x if isinstance(x, RatFun) else QQ.const(x) for x in lam_n]
            return duality.verify_hamiltonian_duality(n, m, a, b, xi, rep_bethe.z_points(lam_n, a))
        if check == "residues":
            return rep_bethe.residue_identities(n, m, a, b, xi, lam_n)
        if check == "degeneration":
            return rep_bethe.verify_degeneration(n, m, a, b, xi, lam_n)
        raise ValueError(check)

    attempts, p, res = with_resampling(rng, draw, run)
    params.update({"xi": fmt(p[0]), "lambda_n": fmt(p[1]), "attempts": attempts})
    return res
