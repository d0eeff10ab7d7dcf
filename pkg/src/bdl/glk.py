"""Weight modules of gl_k: symmetric powers, tensor products, Verma modules.

Vectors are plain dicts ``label -> coefficient``.  Generators are pairs
``(i, j)`` (0-based) standing for e_ij.  Finite modules carry integer
actions; Verma modules act lazily on PBW words with coefficients in a
rational function field (the highest weight may be symbolic).
"""

from __future__ import annotations

from functools import lru_cache
import itertools

from .exact_arith import QQ, Field, Mat, RatFun


class NonGeneric(ArithmeticError):
    """A genericity assumption failed for the sampled parameters."""


class TruncationExit(RuntimeError):
    """A Verma action left the truncation inside a closed computation."""


# -- vectors -------------------------------------------------------------------

def vadd(acc: dict, vec: dict, coef=1):
    for k, c in vec.items():
        t = c * coef if coef != 1 else c
        if k in acc:
            s = acc[k] + t
            if _is_zero(s):
                del acc[k]
            else:
                acc[k] = s
        elif not _is_zero(t):
            acc[k] = t
    return acc


def vscale(vec: dict, coef) -> dict:
    out = {}
    for k, c in vec.items():
        t = c * coef
        if not _is_zero(t):
            out[k] = t
    return out


def _is_zero(x) -> bool:
    return x.is_zero() if isinstance(x, RatFun) else x == 0


def bracket(x, y):
    """[e_ij, e_kl] = delta_jk e_il - delta_li e_kj, as [(coef, gen)]."""
    (i, j), (k, l) = x, y
    out = []
    if j == k:
        out.append((1, (i, l)))
    if l == i:
        out.append((-1, (k, j)))
    return out


# -- finite modules -----------------------------------------------------------------

class WeightModule:
    """Finite-dimensional gl_k module with a weight basis."""

    def __init__(self, k: int, labels, weights, action):
        self.k = k
        self.labels = list(labels)
        self.index = {b: i for i, b in enumerate(self.labels)}
        self.weights = {b: tuple(w) for b, w in zip(self.labels, weights)}
        self._action = action

    @property
    def dim(self):
        return len(self.labels)

    def act(self, gen, label) -> dict:
        return self._action(gen, label)

    def act_vec(self, gen, vec: dict) -> dict:
        out = {}
        for b, c in vec.items():
            vadd(out, self.act(gen, b), c)
        return out

    def weight_space(self, wt) -> list:
        wt = tuple(wt)
        return [b for b in self.labels if self.weights[b] == wt]

    def matrix(self, gen, src=None, dst=None, field: Field = QQ) -> Mat:
        src = self.labels if src is None else src
        dst = self.labels if dst is None else dst
        pos = {b: i for i, b in enumerate(dst)}
        m = Mat.zeros(len(dst), len(src), field)
        for j, b in enumerate(src):
            for t, c in self.act(gen, b).items():
                if t in pos:
                    m.a[pos[t]][j] = field.const(c) if not isinstance(c, RatFun) else c
                elif not _is_zero(c):
                    raise ValueError(f"{gen} maps {b} outside the target basis")
        return m


def sym_power(k: int, a: int) -> WeightModule:
    """S^a C^k with monomial basis x^alpha; e_ij x^alpha = alpha_j x^{alpha + e_i - e_j}."""
    labels = sorted(compositions(a, k), reverse=True)

    def action(gen, alpha):
        i, j = gen
        if alpha[j] == 0:
            return {}
        if i == j:
            return {alpha: alpha[j]}
        beta = list(alpha)
        beta[j] -= 1
        beta[i] += 1
        return {tuple(beta): alpha[j]}

    return WeightModule(k, labels, labels, action)


def compositions(total: int, parts: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total, -1, -1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


class TensorModule(WeightModule):
    """Tensor product of finite weight modules; labels are tuples."""

    def __init__(self, factors: list):
        self.factors = list(factors)
        k = factors[0].k
        labels = list(itertools.product(*[f.labels for f in factors]))
        weights = [tuple(sum(f.weights[b][t] for f, b in zip(factors, lab)) for t in range(k))
                   for lab in labels]
        super().__init__(k, labels, weights, self._total)

    def act_slot(self, slot: int, gen, label) -> dict:
        out = {}
        for b, c in self.factors[slot].act(gen, label[slot]).items():
            out[label[:slot] + (b,) + label[slot + 1:]] = c
        return out

    def _total(self, gen, label):
        out = {}
        for s in range(len(self.factors)):
            vadd(out, self.act_slot(s, gen, label))
        return out


def tensor(mods: list) -> TensorModule:
    return TensorModule(mods)


def singular_space(V: WeightModule, wt, field: Field = QQ) -> list[dict]:
    """Basis of {v in V[wt] : e_{i,i+1} v = 0 for all i}."""
    src = V.weight_space(wt)
    if not src:
        return []
    blocks = []
    for i in range(V.k - 1):
        tgt_wt = list(wt)
        tgt_wt[i] += 1
        tgt_wt[i + 1] -= 1
        dst = V.weight_space(tgt_wt)
        if dst:
            blocks.append(V.matrix((i, i + 1), src, dst, field))
    if not blocks:
        return [{b: field.one} for b in src]
    rows = [row for blk in blocks for row in blk.a]
    ker = Mat(rows, field).kernel()
    return [{b: x for b, x in zip(src, vec) if not x.is_zero()} for vec in ker]


# -- Verma modules ----------------------------------------------------------------

def positive_drop(delta) -> bool:
    """delta (epsilon coordinates) is a nonnegative combination of simple roots."""
    s = 0
    for x in delta[:-1]:
        s += x
        if s < 0:
            return False
    return sum(delta) == 0


def simple_root_coords(delta) -> tuple:
    out, s = [], 0
    for x in delta[:-1]:
        s += x
        out.append(s)
    return tuple(out)


def lowering_gens(k: int) -> list:
    return sorted((i, j) for i in range(k) for j in range(i))


class VermaModule:
    """M_lambda for gl_k with PBW basis f_{w1} f_{w2} ... v_lambda.

    Words are sorted tuples of lowering generators (i, j), i > j.  The drop of
    a word is lambda - weight in epsilon coordinates.
    """

    def __init__(self, k: int, lam, field: Field = QQ):
        if len(lam) != k:
            raise ValueError("highest weight has wrong length")
        self.k = k
        self.field = field
        self.lam = [field.coerce(x) if isinstance(x, RatFun) else field.const(x) for x in lam]
        self._act_cache: dict = {}
        self._mul_cache: dict = {}

    def drop(self, word) -> tuple:
        d = [0] * self.k
        for i, j in word:
            d[j] += 1
            d[i] -= 1
        return tuple(d)

    def basis(self, delta) -> list:
        """PBW words of the given drop (Kostant partitions)."""
        delta = tuple(delta)
        if not positive_drop(delta):
            return []
        return sorted(_kostant(self.k, delta))

    def mul_lower(self, y, word) -> dict:
        """Normal-ordered expansion of f_y * f_word (integer coefficients)."""
        key = (y, word)
        hit = self._mul_cache.get(key)
        if hit is not None:
            return hit
        if not word or y <= word[0]:
            out = {(y,) + word: 1}
        else:
            w0, rest = word[0], word[1:]
            out = {}
            for w, c in self.mul_lower(y, rest).items():
                vadd(out, self.mul_lower(w0, w), c)
            for c, g in bracket(y, w0):
                vadd(out, self.mul_lower(g, rest), c)
        self._mul_cache[key] = out
        return out

    def act(self, gen, word) -> dict:
        key = (gen, word)
        hit = self._act_cache.get(key)
        if hit is not None:
            return hit
        i, j = gen
        if i > j:
            out = {w: self.field.const(c) for w, c in self.mul_lower(gen, word).items()}
        elif not word:
            out = {(): self.lam[i]} if i == j and not self.lam[i].is_zero() else {}
        else:
            y, rest = word[0], word[1:]
            out = {}
            for w, c in self.act(gen, rest).items():
                vadd(out, self.mul_lower(y, w), c)
            for c, g in bracket(gen, y):
                vadd(out, self.act(g, rest), c)
        self._act_cache[key] = out
        return out

    def act_vec(self, gen, vec: dict) -> dict:
        out = {}
        for w, c in vec.items():
            vadd(out, self.act(gen, w), c)
        return out


def _kostant(k, delta):
    gens = lowering_gens(k)

    def rec(idx, rem):
        if all(x == 0 for x in rem):
            yield ()
            return
        if idx == len(gens):
            return
        i, j = gens[idx]
        # f_ij lowers by e_j - e_i in drop coordinates: drop[j] += 1, drop[i] -= 1
        cap = rem[j]
        for t in range(cap, -1, -1):
            new = list(rem)
            new[j] -= t
            new[i] += t
            if not positive_drop(new):
                continue
            for tail in rec(idx + 1, tuple(new)):
                yield (gens[idx],) * t + tail

    for w in rec(0, tuple(delta)):
        yield tuple(sorted(w))


class VermaTruncation:
    """Finite window of a Verma module: all weight spaces whose simple-root
    drop coordinates are bounded componentwise.

    ``matrix`` records generator actions that leave the window in
    ``exits``; ``strict=True`` raises instead.
    """

    def __init__(self, verma: VermaModule, bound):
        self.verma = verma
        self.bound = tuple(bound)
        k = verma.k
        if len(self.bound) != k - 1:
            raise ValueError("bound needs k-1 simple-root coordinates")
        self.labels = []
        for coords in itertools.product(*[range(b + 1) for b in self.bound]):
            delta = [0] * k
            for t, c in enumerate(coords):
                delta[t] += c
                delta[t + 1] -= c
            self.labels.extend(verma.basis(delta))
        self.index = {w: i for i, w in enumerate(self.labels)}
        self.exits: set = set()

    @property
    def dim(self):
        return len(self.labels)

    def contains(self, word) -> bool:
        return word in self.index

    def matrix(self, gen, strict: bool = False) -> Mat:
        field = self.verma.field
        m = Mat.zeros(self.dim, self.dim, field)
        for j, w in enumerate(self.labels):
            for t, c in self.verma.act(gen, w).items():
                if t in self.index:
                    m.a[self.index[t]][j] = c
                else:
                    if strict:
                        raise TruncationExit(f"{gen} maps {w} to {t}")
                    self.exits.add((gen, w))
        return m


def verma_truncated(k: int, lam, bound, field: Field = QQ) -> VermaTruncation:
    return VermaTruncation(VermaModule(k, lam, field), bound)


# -- V ⊗ M_lambda and the theta maps -----------------------------------------------

class VermaTensor:
    """V ⊗ M_lambda, V a finite (tensor) module; labels (v_label, word)."""

    def __init__(self, V: WeightModule, M: VermaModule):
        if V.k != M.k:
            raise ValueError("rank mismatch")
        self.V, self.M, self.k = V, M, V.k
        self.field = M.field

    def basis(self, b) -> list:
        """Basis of (V ⊗ M)[lambda + b]."""
        out = []
        for x in self.V.labels:
            c = self.V.weights[x]
            delta = tuple(ci - bi for ci, bi in zip(c, b))
            for w in self.M.basis(delta):
                out.append((x, w))
        return out

    def act_V(self, gen, vec: dict) -> dict:
        out = {}
        for (x, w), c in vec.items():
            for y, a in self.V.act(gen, x).items():
                vadd(out, {(y, w): c}, a)
        return out

    def act_V_slot(self, slot, gen, vec: dict) -> dict:
        out = {}
        for (x, w), c in vec.items():
            for y, a in self.V.act_slot(slot, gen, x).items():
                vadd(out, {(y, w): c}, a)
        return out

    def act_M(self, gen, vec: dict) -> dict:
        out = {}
        for (x, w), c in vec.items():
            for w2, a in self.M.act(gen, w).items():
                vadd(out, {(x, w2): c}, a)
        return out

    def act(self, gen, vec: dict) -> dict:
        out = self.act_V(gen, vec)
        vadd(out, self.act_M(gen, vec))
        return out

    def singular_basis(self, b) -> tuple[list, list]:
        field = self.field
        src = self.basis(b)
        rows = []
        for i in range(self.k - 1):
            tb = list(b)
            tb[i] += 1
            tb[i + 1] -= 1
            dst = self.basis(tb)
            pos = {t: r for r, t in enumerate(dst)}
            blk = [[field.zero] * len(src) for _ in dst]
            for col, lab in enumerate(src):
                for t, c in self.act((i, i + 1), {lab: field.one}).items():
                    blk[pos[t]][col] = c
            rows.extend(blk)
        if not rows:
            return src, [{lab: field.one} for lab in src]
        ker = Mat(rows, field, len(rows), len(src)).kernel()
        return src, [{lab: x for lab, x in zip(src, vec) if not x.is_zero()} for vec in ker]


def theta_forward(vec: dict) -> dict:
    """Coefficient of the highest weight vector: sum over (x, ()) components."""
    return {x: c for (x, w), c in vec.items() if w == ()}


def theta_inverse(VM: VermaTensor, b, targets: list | None = None) -> tuple[list, list]:
    """Lift V[b] to singular vectors of V ⊗ M_lambda.

    Returns (V[b] basis labels, list of singular vectors L_x with
    theta_forward(L_x) = x).  Raises NonGeneric when theta is not bijective.
    """
    field = VM.field
    Vb = VM.V.weight_space(b)
    _, sing = VM.singular_basis(b)
    if len(sing) != len(Vb):
        raise NonGeneric(f"singular space has dim {len(sing)}, expected {len(Vb)}")
    if not Vb:
        return Vb, []
    theta = Mat([[theta_forward(s).get(x, field.zero) for s in sing] for x in Vb], field)
    try:
        inv = theta.inverse()
    except ZeroDivisionError as exc:
        raise NonGeneric("theta is not invertible at these parameters") from exc
    lifts = []
    for col in range(len(Vb)):
        vec = {}
        for s_idx, s in enumerate(sing):
            coef = inv.a[s_idx][col]
            if not coef.is_zero():
                vadd(vec, s, coef)
        lifts.append(vec)
    return Vb, lifts
