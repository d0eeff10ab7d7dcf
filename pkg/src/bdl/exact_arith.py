"""Exact rational functions and linear algebra over them.

Polynomials are python-flint multivariate polynomials living in one context
with a fixed global symbol order.  ``RatFun`` pairs a numerator and a monic
denominator; ``Mat`` is a small dense matrix of ``RatFun`` entries with
fraction-free elimination, Berkowitz characteristic polynomials and
independent cofactor-expansion oracles.

Two coefficient fields are supported: exact rationals (``QQ``) and a prime
field ``GF(p)`` used by the modular probe.  Both expose the same symbols.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
import itertools

import flint

MAX_LAM = 8
MAX_PTS = 6

SYMBOLS: tuple[str, ...] = (
    ("u", "v")
    + tuple(f"lam{i}" for i in range(1, MAX_LAM + 1))
    + tuple(f"xi{i}" for i in range(1, MAX_PTS + 1))
    + tuple(f"z{i}" for i in range(1, MAX_PTS + 1))
    + tuple(f"w{i}" for i in range(1, MAX_PTS + 1))
    + ("c", "r")
)
SYMBOL_INDEX = {s: i for i, s in enumerate(SYMBOLS)}

DEFAULT_PRIME = (1 << 61) - 1


class ZeroDivision(ZeroDivisionError):
    """Division by an identically vanishing rational function."""


class Field:
    """Rational function field Q(symbols) or GF(p)(symbols)."""

    def __init__(self, prime: int | None = None):
        self.prime = prime
        if prime is None:
            self.ctx = flint.fmpq_mpoly_ctx.get(SYMBOLS, "lex")
        else:
            self.ctx = flint.nmod_mpoly_ctx.get(SYMBOLS, modulus=prime)
        self.gens = tuple(self.ctx.gens())
        self._zero_poly = self.ctx.from_dict({})
        self._one_poly = self.ctx.from_dict({(0,) * len(SYMBOLS): 1})
        self.zero = RatFun(self, self._zero_poly, self._one_poly, True)
        self.one = RatFun(self, self._one_poly, self._one_poly, True)

    @property
    def modular(self) -> bool:
        return self.prime is not None

    def __repr__(self):
        return "QQ" if self.prime is None else f"GF({self.prime})"

    def poly_const(self, q):
        q = Fraction(q)
        if self.prime is None:
            c = flint.fmpq(q.numerator, q.denominator)
        else:
            if q.denominator % self.prime == 0:
                raise ZeroDivision(f"denominator {q.denominator} vanishes mod p")
            c = q.numerator * pow(q.denominator, -1, self.prime) % self.prime
        return self.ctx.from_dict({(0,) * len(SYMBOLS): c}) if c else self._zero_poly

    def const(self, q) -> "RatFun":
        if isinstance(q, RatFun):
            return self.coerce(q)
        return RatFun(self, self.poly_const(q), self._one_poly, True)

    def sym(self, name: str) -> "RatFun":
        return RatFun(self, self.gens[SYMBOL_INDEX[name]], self._one_poly, True)

    def syms(self, *names: str):
        return [self.sym(n) for n in names]

    def coerce(self, x) -> "RatFun":
        if isinstance(x, RatFun):
            if x.field is self:
                return x
            if x.field.modular:
                raise TypeError("cannot lift a modular value to another field")
            return RatFun(self, self._reduce_poly(x.num), self._reduce_poly(x.den))
        if isinstance(x, (int, Fraction)):
            return self.const(x)
        if isinstance(x, flint.fmpq):
            return self.const(Fraction(int(x.p), int(x.q)))
        raise TypeError(f"cannot coerce {type(x).__name__} into {self!r}")

    def coeff(self, c):
        """Map a flint rational (or int) into this field's coefficient ring."""
        if self.prime is None:
            return c
        if isinstance(c, int):
            return c % self.prime
        q = int(c.q)
        if q % self.prime == 0:
            raise ZeroDivision(f"denominator {q} vanishes mod p")
        return int(c.p) * pow(q, -1, self.prime) % self.prime

    def _reduce_poly(self, p):
        out = {}
        for exps, c in p.to_dict().items():
            v = self.coeff(c)
            if v:
                out[exps] = v
        return self.ctx.from_dict(out)

    def poly_from_coeff(self, c):
        return self.ctx.from_dict({(0,) * len(SYMBOLS): c}) if c else self._zero_poly


def _poly_const_value(p):
    d = p.to_dict()
    return d.get((0,) * len(SYMBOLS), 0)


class RatFun:
    """Element num/den of a rational function field.

    Denominators are kept monic.  A gcd cancellation is performed whenever a
    non-constant denominator is produced, so equal values compare equal
    structurally as well as by cross multiplication.
    """

    __slots__ = ("field", "num", "den")

    def __init__(self, field: Field, num, den, normalized: bool = False):
        self.field = field
        if den.is_zero():
            raise ZeroDivision("zero denominator")
        if not normalized:
            num, den = _normalize(field, num, den)
        self.num = num
        self.den = den

    # construction helpers -------------------------------------------------
    def _wrap(self, other):
        if isinstance(other, RatFun):
            if other.field is not self.field:
                return self.field.coerce(other)
            return other
        return self.field.const(other)

    @staticmethod
    def _foreign(other) -> bool:
        return not isinstance(other, (RatFun, int, Fraction))

    # predicates -------------------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num == self.den

    def is_poly(self) -> bool:
        return self.den.is_constant()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def free_of(self, name: str) -> bool:
        i = SYMBOL_INDEX[name]
        return self.num.degrees()[i] <= 0 and self.den.degrees()[i] <= 0

    # arithmetic --------------------------------------------------------------
    def __add__(self, other):
        if RatFun._foreign(other):
            return NotImplemented
        o = self._wrap(other)
        if o.num.is_zero():
            return self
        if self.num.is_zero():
            return o
        if self.den == o.den:
            num = self.num + o.num
            if self.den.is_constant():
                return RatFun(self.field, num, self.den, True)
            return RatFun(self.field, num, self.den)
        if o.den.is_constant():
            return RatFun(self.field, self.num + o.num * self.den, self.den, True)
        if self.den.is_constant():
            return RatFun(self.field, self.num * o.den + o.num, o.den, True)
        g = self.den.gcd(o.den)
        a = self.den / g
        b = o.den / g
        return RatFun(self.field, self.num * b + o.num * a, a * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFun(self.field, -self.num, self.den, True)

    def __sub__(self, other):
        if RatFun._foreign(other):
            return NotImplemented
        return self + (-self._wrap(other))

    def __rsub__(self, other):
        return self._wrap(other) + (-self)

    def __mul__(self, other):
        if RatFun._foreign(other):
            return NotImplemented
        o = self._wrap(other)
        if self.num.is_zero() or o.num.is_zero():
            return self.field.zero
        if self.den.is_constant() and o.den.is_constant():
            return RatFun(self.field, self.num * o.num, self.den * o.den, True)
        n1, d2 = _cancel(self.num, o.den)
        n2, d1 = _cancel(o.num, self.den)
        num, den = _monic(self.field, n1 * n2, d1 * d2)
        return RatFun(self.field, num, den, True)

    __rmul__ = __mul__

    def inv(self):
        if self.num.is_zero():
            raise ZeroDivision("inverse of zero rational function")
        return RatFun(self.field, self.den, self.num)

    def __truediv__(self, other):
        return self * self._wrap(other).inv()

    def __rtruediv__(self, other):
        return self._wrap(other) * self.inv()

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        return RatFun(self.field, self.num ** k, self.den ** k, True)

    def __eq__(self, other):
        if not isinstance(other, (RatFun, int, Fraction)):
            return NotImplemented
        o = self._wrap(other)
        return self.num * o.den == o.num * self.den

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self):
        return hash((str(self.num), str(self.den)))

    def __repr__(self):
        if self.den.is_one():
            return f"({self.num})"
        return f"({self.num})/({self.den})"

    __str__ = __repr__

    # calculus and substitution ---------------------------------------------
    def shift(self, s, name: str = "u") -> "RatFun":
        """Substitute name -> name + s."""
        if s == 0 or self.free_of(name):
            return self
        gens = list(self.field.gens)
        i = SYMBOL_INDEX[name]
        gens[i] = gens[i] + self.field.poly_const(s)
        return RatFun(self.field, self.num.compose(*gens), self.den.compose(*gens), True
                      ) if self.den.is_constant() else RatFun(
            self.field, self.num.compose(*gens), self.den.compose(*gens))

    def reflect(self, l, name: str = "u") -> "RatFun":
        """Substitute name -> -name + l."""
        gens = list(self.field.gens)
        i = SYMBOL_INDEX[name]
        gens[i] = -gens[i] + self.field.poly_const(l)
        return RatFun(self.field, self.num.compose(*gens), self.den.compose(*gens))

    def derivative(self, name: str = "u") -> "RatFun":
        i = SYMBOL_INDEX[name]
        dn = self.num.derivative(i)
        if self.den.is_constant():
            return RatFun(self.field, dn, self.den, True)
        dd = self.den.derivative(i)
        return RatFun(self.field, dn * self.den - self.num * dd, self.den * self.den)

    def subs(self, bindings: dict) -> "RatFun":
        """Exact composition name -> value for the given names."""
        return substitute(self, bindings)

    def degree(self, name: str) -> int:
        """deg num - deg den in one symbol; zero has degree -infinity (None)."""
        if self.num.is_zero():
            return None
        i = SYMBOL_INDEX[name]
        return self.num.degrees()[i] - self.den.degrees()[i]

    def leading_in(self, name: str) -> "RatFun":
        """Ratio of leading coefficients of num and den with respect to name."""
        cn = coeffs_in(RatFun(self.field, self.num, self.field._one_poly, True), name)
        cd = coeffs_in(RatFun(self.field, self.den, self.field._one_poly, True), name)
        return cn[max(cn)] / cd[max(cd)]

    def to_fraction(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        n = _poly_const_value(self.num)
        d = _poly_const_value(self.den)
        if self.field.modular:
            return Fraction(int(n) * pow(int(d), -1, self.field.prime) % self.field.prime)
        return Fraction(int(n.p) * int(d.q), int(n.q) * int(d.p))

    def symbols(self) -> set[str]:
        out = set()
        for p in (self.num, self.den):
            for i, e in enumerate(p.degrees()):
                if e > 0:
                    out.add(SYMBOLS[i])
        return out


def _cancel(a, b):
    if b.is_constant() or a.is_constant():
        return a, b
    g = a.gcd(b)
    if g.is_constant():
        return a, b
    return a / g, b / g


def _normalize(field, num, den):
    if num.is_zero():
        return field._zero_poly, field._one_poly
    if not den.is_constant():
        g = num.gcd(den)
        if not g.is_constant():
            num = num / g
            den = den / g
    return _monic(field, num, den)


def _monic(field, num, den):
    lc = den.leading_coefficient()
    if lc != 1:
        if field.modular:
            inv = pow(int(lc), -1, field.prime)
            num = num * inv
            den = den * inv
        else:
            num = num / lc
            den = den / lc
    return num, den


QQ = Field()


@lru_cache(maxsize=None)
def GF(prime: int = DEFAULT_PRIME) -> Field:
    return Field(prime)


def coeffs_in(f: RatFun, name: str) -> dict[int, RatFun]:
    """Coefficients of f as a polynomial in one symbol.

    The denominator must be free of that symbol.
    """
    i = SYMBOL_INDEX[name]
    if f.den.degrees()[i] > 0:
        raise ValueError(f"{f} is not polynomial in {name}")
    field = f.field
    parts: dict[int, dict] = {}
    for exps, c in f.num.to_dict().items():
        k = exps[i]
        e = list(exps)
        e[i] = 0
        parts.setdefault(k, {})[tuple(e)] = c
    return {k: RatFun(field, field.ctx.from_dict(d), f.den, f.den.is_constant())
            for k, d in parts.items()}


def substitute(f: RatFun, bindings: dict) -> RatFun:
    field = f.field
    if not bindings:
        return f
    vals = {SYMBOL_INDEX[k]: field.coerce(v) if not isinstance(v, (int, Fraction)) else field.const(v)
            for k, v in bindings.items()}
    if all(v.is_poly() for v in vals.values()):
        gens = list(field.gens)
        for i, v in vals.items():
            gens[i] = v.num / _poly_const_value(v.den)
        num = f.num.compose(*gens)
        den = f.den.compose(*gens)
        if den.is_zero():
            raise ZeroDivision("denominator vanishes identically under binding")
        return RatFun(field, num, den)
    num = _eval_poly(field, f.num, vals)
    den = _eval_poly(field, f.den, vals)
    if den.is_zero():
        raise ZeroDivision("denominator vanishes identically under binding")
    return num / den


def _eval_poly(field, p, vals):
    total = field.zero
    gens = field.gens
    for exps, c in p.to_dict().items():
        term = RatFun(field, field.poly_from_coeff(c), field._one_poly, True)
        for i, e in enumerate(exps):
            if e:
                base = vals[i] if i in vals else RatFun(field, gens[i], field._one_poly, True)
                term = term * base ** e
        total = total + term
    return total


def to_modular(f: RatFun, field: Field, point: dict | None = None) -> RatFun:
    """Reduce an exact value into a modular field, optionally binding symbols."""
    g = field.coerce(f)
    if point:
        g = substitute(g, point)
    return g


# --------------------------------------------------------------------------
# Matrices


class NonSquare(ValueError):
    pass


class Mat:
    """Dense matrix over a rational function field."""

    __slots__ = ("field", "rows", "cols", "a")

    def __init__(self, entries, field: Field = QQ, rows: int | None = None, cols: int | None = None):
        self.field = field
        a = [[field.coerce(x) if isinstance(x, RatFun) else field.const(x) for x in row]
             for row in entries]
        self.rows = len(a) if rows is None else rows
        self.cols = (len(a[0]) if a else 0) if cols is None else cols
        for row in a:
            if len(row) != self.cols:
                raise ValueError("ragged matrix")
        self.a = a

    @classmethod
    def _raw(cls, a, field, rows, cols):
        m = cls.__new__(cls)
        m.field, m.a, m.rows, m.cols = field, a, rows, cols
        return m

    @classmethod
    def zeros(cls, rows: int, cols: int, field: Field = QQ):
        return cls._raw([[field.zero] * cols for _ in range(rows)], field, rows, cols)

    @classmethod
    def identity(cls, n: int, field: Field = QQ):
        m = cls.zeros(n, n, field)
        for i in range(n):
            m.a[i][i] = field.one
        return m

    def __getitem__(self, ij):
        i, j = ij
        return self.a[i][j]

    def __setitem__(self, ij, val):
        i, j = ij
        self.a[i][j] = self.field.coerce(val) if isinstance(val, RatFun) else self.field.const(val)

    def copy(self):
        return Mat._raw([row[:] for row in self.a], self.field, self.rows, self.cols)

    def map(self, fn):
        return Mat._raw([[fn(x) for x in row] for row in self.a], self.field, self.rows, self.cols)

    def T(self):
        return Mat._raw([[self.a[i][j] for i in range(self.rows)] for j in range(self.cols)],
                        self.field, self.cols, self.rows)

    def __add__(self, o: "Mat"):
        self._same_shape(o)
        return Mat._raw([[x + y for x, y in zip(r, s)] for r, s in zip(self.a, o.a)],
                        self.field, self.rows, self.cols)

    def __sub__(self, o: "Mat"):
        self._same_shape(o)
        return Mat._raw([[x - y for x, y in zip(r, s)] for r, s in zip(self.a, o.a)],
                        self.field, self.rows, self.cols)

    def __neg__(self):
        return self.map(lambda x: -x)

    def scale(self, c):
        c = self.field.coerce(c) if isinstance(c, RatFun) else self.field.const(c)
        if c.is_zero():
            return Mat.zeros(self.rows, self.cols, self.field)
        return self.map(lambda x: c * x)

    def __mul__(self, o):
        if not isinstance(o, Mat):
            return self.scale(o)
        if self.cols != o.rows:
            raise ValueError(f"shape mismatch {self.shape} x {o.shape}")
        zero = self.field.zero
        cols_o = [[o.a[k][j] for k in range(o.rows)] for j in range(o.cols)]
        out = []
        for row in self.a:
            nz = [(k, x) for k, x in enumerate(row) if not x.is_zero()]
            new = []
            for col in cols_o:
                s = zero
                for k, x in nz:
                    y = col[k]
                    if not y.is_zero():
                        s = s + x * y
                new.append(s)
            out.append(new)
        return Mat._raw(out, self.field, self.rows, o.cols)

    def __rmul__(self, c):
        return self.scale(c)

    def apply(self, vec):
        return [sum((x * y for x, y in zip(row, vec) if not x.is_zero()), self.field.zero)
                for row in self.a]

    @property
    def shape(self):
        return (self.rows, self.cols)

    def _same_shape(self, o):
        if self.shape != o.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {o.shape}")

    def is_zero(self) -> bool:
        return all(x.is_zero() for row in self.a for x in row)

    def __eq__(self, o):
        if not isinstance(o, Mat):
            return NotImplemented
        return self.shape == o.shape and all(
            x == y for r, s in zip(self.a, o.a) for x, y in zip(r, s))

    def __hash__(self):
        return hash(self.shape)

    def __repr__(self):
        return "Mat[" + "; ".join(", ".join(str(x) for x in row) for row in self.a) + "]"

    def entrywise(self, fn):
        return self.map(fn)

    def commutes_with(self, o: "Mat") -> bool:
        return (self * o - o * self).is_zero()

    # elimination -----------------------------------------------------------
    def echelon(self):
        """Fraction-free (Bareiss) row echelon form.

        Each row is first cleared of denominators; elimination then stays in
        the polynomial ring with exact divisions by the previous pivot.
        Returns (rows of polynomials as RatFun, pivot columns).
        """
        field = self.field
        rows = []
        for row in self.a:
            den = field._one_poly
            for x in row:
                if not x.den.is_constant():
                    den = den * (x.den / den.gcd(x.den))
                elif not x.den.is_one():
                    den = den * x.den
            rows.append([(x.num * (den / x.den)) for x in row])
        piv_cols = []
        prev = field._one_poly
        r = 0
        nrows, ncols = self.rows, self.cols
        for c in range(ncols):
            p = next((i for i in range(r, nrows) if not rows[i][c].is_zero()), None)
            if p is None:
                continue
            rows[r], rows[p] = rows[p], rows[r]
            pv = rows[r][c]
            for i in range(r + 1, nrows):
                lead = rows[i][c]
                new = []
                for j in range(ncols):
                    t = pv * rows[i][j] - lead * rows[r][j]
                    if not prev.is_one():
                        t = t / prev
                    new.append(t)
                rows[i] = new
            prev = pv
            piv_cols.append(c)
            r += 1
            if r == nrows:
                break
        one = field._one_poly
        return [[RatFun(field, x, one, True) for x in row] for row in rows[:r]], piv_cols

    def rank(self) -> int:
        return len(self.echelon()[1])

    def kernel(self) -> list[list[RatFun]]:
        """Basis of the right null space."""
        rows, piv = self.echelon()
        free = [c for c in range(self.cols) if c not in piv]
        basis = []
        for f in free:
            x = [self.field.zero] * self.cols
            x[f] = self.field.one
            for k in range(len(piv) - 1, -1, -1):
                c = piv[k]
                s = self.field.zero
                for j in range(c + 1, self.cols):
                    if not rows[k][j].is_zero() and not x[j].is_zero():
                        s = s + rows[k][j] * x[j]
                x[c] = -s / rows[k][c]
            basis.append(_primitive(self.field, x))
        return basis

    def det(self) -> RatFun:
        if self.rows != self.cols:
            raise NonSquare("det of a non-square matrix")
        n = self.rows
        if n == 0:
            return self.field.one
        a = [row[:] for row in self.a]
        sign = 1
        prev = self.field.one
        for k in range(n - 1):
            p = next((i for i in range(k, n) if not a[i][k].is_zero()), None)
            if p is None:
                return self.field.zero
            if p != k:
                a[k], a[p] = a[p], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) / prev
            prev = a[k][k]
        return a[n - 1][n - 1] * sign

    def solve(self, rhs: "Mat") -> "Mat":
        """Unique solution X of self * X = rhs (self square, nonsingular)."""
        if self.rows != self.cols:
            raise NonSquare("solve needs a square matrix")
        n = self.rows
        aug = Mat._raw([self.a[i][:] + rhs.a[i][:] for i in range(n)], self.field, n,
                       n + rhs.cols)
        a = aug.a
        for c in range(n):
            p = next((i for i in range(c, n) if not a[i][c].is_zero()), None)
            if p is None:
                raise ZeroDivision("singular matrix")
            a[c], a[p] = a[p], a[c]
            inv = a[c][c].inv()
            a[c] = [x * inv for x in a[c]]
            for i in range(n):
                if i != c and not a[i][c].is_zero():
                    f = a[i][c]
                    a[i] = [x - f * y for x, y in zip(a[i], a[c])]
        return Mat._raw([row[n:] for row in a], self.field, n, rhs.cols)

    def inverse(self) -> "Mat":
        return self.solve(Mat.identity(self.rows, self.field))

    def charpoly(self) -> list[RatFun]:
        """Coefficients [c_0, ..., c_n] of det(x I - M), via Berkowitz."""
        if self.rows != self.cols:
            raise NonSquare("charpoly of a non-square matrix")
        n = self.rows
        field = self.field
        if n == 0:
            return [field.one]
        a = self.a
        # Berkowitz: vector of coefficients, highest degree first
        poly = [field.one, -a[0][0]]
        for r in range(1, n):
            R = [a[r][j] for j in range(r)]          # row r, first r columns
            C = [a[i][r] for i in range(r)]          # column r, first r rows
            A = [row[:r] for row in a[:r]]
            arr = a[r][r]
            # Toeplitz column: 1, -arr, -R C, -R A C, -R A^2 C, ...
            col = [field.one, -arr]
            vec = C
            for _ in range(r):
                col.append(-sum((x * y for x, y in zip(R, vec)), field.zero))
                vec = [sum((A[i][j] * vec[j] for j in range(r)), field.zero) for i in range(r)]
            new = []
            for i in range(r + 2):
                s = field.zero
                for j in range(min(i, r) + 1):
                    if i - j < len(col):
                        s = s + col[i - j] * poly[j]
                new.append(s)
            poly = new
        return list(reversed(poly))


def _primitive(field, vec):
    """Clear denominators and fix the sign so the first nonzero entry leads positively."""
    den = field._one_poly
    for x in vec:
        if not x.den.is_constant():
            den = den * (x.den / den.gcd(x.den))
    scale = RatFun(field, den, field._one_poly, True)
    out = [x * scale for x in vec]
    first = next(x for x in out if not x.is_zero())
    lc = first.num.leading_coefficient()
    if (not field.modular) and lc < 0:
        out = [-x for x in out]
    return out


def det_cofactor(m: Mat) -> RatFun:
    """Laplace expansion along the first row; an oracle independent of Bareiss."""
    if m.rows != m.cols:
        raise NonSquare("det of a non-square matrix")
    return _cofactor(m.field, tuple(tuple(r) for r in m.a))


def _cofactor(field, a):
    n = len(a)
    if n == 0:
        return field.one
    if n == 1:
        return a[0][0]
    total = field.zero
    for j in range(n):
        if a[0][j].is_zero():
            continue
        minor = tuple(tuple(row[:j] + row[j + 1:]) for row in a[1:])
        term = a[0][j] * _cofactor(field, minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def charpoly_oracle(m: Mat) -> list[RatFun]:
    """Charpoly by sampling det(x I - M) through cofactor expansion at n+1
    integer points and Lagrange interpolation in x."""
    if m.rows != m.cols:
        raise NonSquare("charpoly of a non-square matrix")
    n = m.rows
    field = m.field
    xs = list(range(n + 1))
    vals = []
    for x in xs:
        shifted = Mat._raw([[(field.const(x) if i == j else field.zero) - m.a[i][j]
                             for j in range(n)] for i in range(n)], field, n, n)
        vals.append(det_cofactor(shifted))
    # Lagrange interpolation into monomial coefficients
    coeffs = [field.zero] * (n + 1)
    for k, xk in enumerate(xs):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j == k:
                continue
            basis = [Fraction(0)] + basis
            for t in range(len(basis) - 1):
                basis[t] -= xj * basis[t + 1]
            denom *= xk - xj
        for t in range(n + 1):
            if basis[t]:
                coeffs[t] = coeffs[t] + vals[k] * (basis[t] / denom)
    return coeffs


def mat_from_fn(rows: int, cols: int, fn, field: Field = QQ) -> Mat:
    return Mat._raw([[field.coerce(fn(i, j)) if isinstance(fn(i, j), RatFun) else field.const(fn(i, j))
                      for j in range(cols)] for i in range(rows)], field, rows, cols)


def falling(x, k: int, field: Field = QQ):
    """x (x-1) ... (x-k+1) for a RatFun or number x."""
    out = field.one
    for t in range(k):
        out = out * (x - t)
    return out


def rising(x, k: int, field: Field = QQ):
    out = field.one
    for t in range(k):
        out = out * (x + t)
    return out


def stirling2(n: int, k: int) -> int:
    return _stirling2(n, k)


@lru_cache(maxsize=None)
def _stirling2(n, k):
    if n == k:
        return 1
    if k == 0 or k > n:
        return 0
    return k * _stirling2(n - 1, k) + _stirling2(n - 1, k - 1)


@lru_cache(maxsize=None)
def stirling1(n: int, k: int) -> int:
    """Signed Stirling numbers of the first kind: x^{falling n} = sum s(n,k) x^k."""
    if n == k:
        return 1
    if k == 0 or k > n:
        return 0
    return stirling1(n - 1, k - 1) - (n - 1) * stirling1(n - 1, k)


def perm_sign(p) -> int:
    p = list(p)
    s = 1
    seen = [False] * len(p)
    for i in range(len(p)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        if length % 2 == 0:
            s = -s
    return s


def permutations_with_sign(n: int):
    for p in itertools.permutations(range(n)):
        yield p, perm_sign(p)
