"""Exact arithmetic for q-numbers: rational functions of q^(1/h) over Q.

A q-number of level h is a quotient num/den of polynomials in the formal
variable u = q^(1/h) with rational coefficients.  The pair is kept reduced
(gcd(num, den) = 1), the denominator monic, and the level minimal: if every
exponent of u appearing in num and den is divisible by d, the value is
re-expressed at level h/d.  Values produced by the summation pipelines only
ever have denominators built from powers of q and factors q^(m/h) +- 1, so
they have no poles on q > 1; this is checked by sampled evaluation in the
test suite rather than enforced structurally.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from sympy.polys.domains import QQ
from sympy.polys.rings import ring

_R, _u = ring("u", QQ)

_ZERO = _R.zero
_ONE = _R.one


class DivisionByZeroQNumber(ZeroDivisionError):
    """Raised when dividing by the zero q-number."""


class PoleAtSample(ArithmeticError):
    """Raised when a denominator vanishes at the sampled q."""


def _poly_from_pairs(pairs):
    d = {}
    for e, c in pairs:
        c = QQ(Fraction(c))
        if c:
            d[(int(e),)] = d.get((int(e),), QQ(0)) + c
    return _R.from_dict({k: v for k, v in d.items() if v})


def _poly_scale_exponents(p, k):
    """Substitute u -> u**k (k a positive integer)."""
    if k == 1:
        return p
    return _R.from_dict({(e[0] * k,): c for e, c in p.terms()})


def _poly_exponent_gcd(p):
    g = 0
    for e, _ in p.terms():
        g = gcd(g, e[0])
    return g


def _poly_divide_exponents(p, d):
    return _R.from_dict({(e[0] // d,): c for e, c in p.terms()})


class QNumber:
    """A rational function of q^(1/level), reduced with monic denominator."""

    __slots__ = ("level", "num", "den")

    def __init__(self, num, den=None, level=1, _raw=False):
        if _raw:
            self.level = level
            self.num = num
            self.den = den
            return
        if den is None:
            den = _ONE
        if not den:
            raise DivisionByZeroQNumber("zero denominator")
        self.level = int(level)
        if self.level < 1:
            raise ValueError("level must be a positive integer")
        self.num = num
        self.den = den
        self._reduce()

    # -- construction -----------------------------------------------------

    @classmethod
    def from_fraction(cls, value):
        return cls(_poly_from_pairs([(0, Fraction(value))]))

    @classmethod
    def from_terms(cls, num_terms, den_terms=((0, 1),), level=1):
        """Build from (exponent, coefficient) pairs at the given level."""
        return cls(_poly_from_pairs(num_terms), _poly_from_pairs(den_terms), level)

    @classmethod
    def q_power(cls, exponent):
        """The monomial q**exponent for a rational exponent."""
        e = Fraction(exponent)
        level = e.denominator
        if e >= 0:
            return cls(_poly_from_pairs([(e.numerator, 1)]), _ONE, level)
        return cls(_ONE, _poly_from_pairs([(-e.numerator, 1)]), level)

    @classmethod
    def zero(cls):
        return cls(_ZERO)

    @classmethod
    def one(cls):
        return cls(_ONE)

    # -- canonical form ----------------------------------------------------

    def _reduce(self):
        if not self.num:
            self.num = _ZERO
            self.den = _ONE
            self.level = 1
            return
        g = self.num.gcd(self.den)
        if g != _ONE:
            self.num = self.num.quo(g)
            self.den = self.den.quo(g)
        lc = self.den.LC
        if lc != QQ(1):
            self.num = self.num.quo_ground(lc)
            self.den = self.den.quo_ground(lc)
        d = gcd(_poly_exponent_gcd(self.num), _poly_exponent_gcd(self.den))
        d = gcd(d, self.level)
        if d > 1:
            self.num = _poly_divide_exponents(self.num, d)
            self.den = _poly_divide_exponents(self.den, d)
            self.level //= d

    def lift(self, level):
        """Re-express at a level that is a multiple of the current one."""
        level = int(level)
        if level % self.level:
            raise ValueError("can only lift to a multiple of the current level")
        k = level // self.level
        return (_poly_scale_exponents(self.num, k),
                _poly_scale_exponents(self.den, k))

    @staticmethod
    def _common(a, b):
        lev = a.level * b.level // gcd(a.level, b.level)
        an, ad = a.lift(lev)
        bn, bd = b.lift(lev)
        return lev, an, ad, bn, bd

    # -- arithmetic ---------------------------------------------------------

    @staticmethod
    def _coerce(x):
        if isinstance(x, QNumber):
            return x
        if isinstance(x, (int, Fraction)):
            return QNumber.from_fraction(x)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        lev, an, ad, bn, bd = self._common(self, other)
        return QNumber(an * bd + bn * ad, ad * bd, lev)

    __radd__ = __add__

    def __neg__(self):
        return QNumber(-self.num, self.den, self.level)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        lev, an, ad, bn, bd = self._common(self, other)
        return QNumber(an * bn, ad * bd, lev)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other.num:
            raise DivisionByZeroQNumber("division by the zero q-number")
        lev, an, ad, bn, bd = self._common(self, other)
        return QNumber(an * bd, ad * bn, lev)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __pow__(self, k):
        k = int(k)
        if k < 0:
            return QNumber.one() / self ** (-k)
        return QNumber(self.num ** k, self.den ** k, self.level)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (self.level == other.level and self.num == other.num
                and self.den == other.den)

    def __hash__(self):
        return hash((self.level, tuple(sorted(self.num.terms())),
                     tuple(sorted(self.den.terms()))))

    def __bool__(self):
        return bool(self.num)

    # -- queries -------------------------------------------------------------

    def is_primary(self):
        """True iff expressible at level one (Def of primary q-numbers)."""
        return self.level == 1

    def is_polynomial(self):
        return self.den == _ONE

    def is_rational(self):
        return self.den == _ONE and all(e[0] == 0 for e, _ in self.num.terms())

    def as_fraction(self):
        if not self.is_rational():
            raise ValueError("not a rational constant: %s" % self)
        if not self.num:
            return Fraction(0)
        c = self.num.LC
        return Fraction(int(QQ.numer(c)), int(QQ.denom(c)))

    def degree_pair(self):
        """(deg num, deg den) in u = q^(1/level)."""
        dn = max((e[0] for e, _ in self.num.terms()), default=-1)
        dd = max((e[0] for e, _ in self.den.terms()), default=-1)
        return dn, dd

    # -- evaluation ------------------------------------------------------------

    def _eval_poly_exact(self, p, u0):
        acc = Fraction(0)
        for e, c in p.terms():
            acc += Fraction(int(QQ.numer(c)), int(QQ.denom(c))) * u0 ** e[0]
        return acc

    def evaluate_exact(self, q0):
        """Exact value at a rational q0 whose level-th root is rational."""
        q0 = Fraction(q0)
        u0 = _nth_root_rational(q0, self.level)
        if u0 is None:
            raise ValueError(
                "q0=%s has no rational %d-th root; use evaluate()" % (q0, self.level))
        den = self._eval_poly_exact(self.den, u0)
        if den == 0:
            raise PoleAtSample("denominator vanishes at q=%s" % q0)
        return self._eval_poly_exact(self.num, u0) / den

    def evaluate(self, q0):
        """Real value at q0 > 1 along the positive branch of q0^(1/level)."""
        q0 = Fraction(q0)
        if q0 <= 1:
            raise ValueError("evaluation requires q0 > 1")
        root = _nth_root_rational(q0, self.level)
        if root is not None:
            return float(self.evaluate_exact(q0))
        u0 = float(q0) ** (1.0 / self.level)
        den = sum(float(Fraction(int(QQ.numer(c)), int(QQ.denom(c)))) * u0 ** e[0]
                  for e, c in self.den.terms())
        num = sum(float(Fraction(int(QQ.numer(c)), int(QQ.denom(c)))) * u0 ** e[0]
                  for e, c in self.num.terms())
        if abs(den) < 1e-12 * max(1.0, abs(num)):
            raise PoleAtSample("denominator vanishes at q=%s" % q0)
        return num / den

    # -- printing / serialization ------------------------------------------------

    def _poly_str(self, p):
        if not p:
            return "0"
        parts = []
        for (e,), c in sorted(p.terms(), reverse=True):
            frac = Fraction(int(QQ.numer(c)), int(QQ.denom(c)))
            exp = Fraction(e, self.level)
            if exp == 0:
                parts.append((frac, ""))
            elif exp == 1:
                parts.append((frac, "q"))
            elif exp.denominator == 1:
                parts.append((frac, "q^{%d}" % exp.numerator))
            else:
                parts.append((frac, "q^{%d/%d}" % (exp.numerator, exp.denominator)))
        out = []
        for i, (frac, mono) in enumerate(parts):
            sign = "-" if frac < 0 else "+"
            mag = abs(frac)
            if mono and mag == 1:
                body = mono
            elif mono:
                body = "%s*%s" % (mag, mono)
            else:
                body = str(mag)
            if i == 0:
                out.append(body if sign == "+" else "-" + body)
            else:
                out.append(" %s %s" % (sign, body))
        return "".join(out)

    def __str__(self):
        if self.den == _ONE:
            return self._poly_str(self.num)
        return "(%s) / (%s)" % (self._poly_str(self.num), self._poly_str(self.den))

    def __repr__(self):
        return "QNumber(%s)" % self

    def to_json(self):
        def pairs(p):
            return [[e[0], [int(QQ.numer(c)), int(QQ.denom(c))]]
                    for e, c in sorted(p.terms(), reverse=True)]
        return {"level": self.level, "num": pairs(self.num), "den": pairs(self.den)}

    @classmethod
    def from_json(cls, data):
        num = _poly_from_pairs((e, Fraction(c[0], c[1])) for e, c in data["num"])
        den = _poly_from_pairs((e, Fraction(c[0], c[1])) for e, c in data["den"])
        return cls(num, den, data["level"])


def _nth_root_rational(x, n):
    """The rational n-th root of a positive rational, or None."""
    if n == 1:
        return x
    if x <= 0:
        return None

    def iroot(m):
        if m == 0:
            return 0
        r = round(m ** (1.0 / n))
        for cand in (r - 1, r, r + 1):
            if cand >= 0 and cand ** n == m:
                return cand
        return None

    a = iroot(x.numerator)
    b = iroot(x.denominator)
    if a is None or b is None:
        return None
    return Fraction(a, b)


def qn(value):
    """Shorthand coercion of ints/Fractions/QNumbers to QNumber."""
    if isinstance(value, QNumber):
        return value
    return QNumber.from_fraction(value)


def q_int(m):
    """The q-integer [m](q) = 1 + q + ... + q^(m-1)."""
    m = int(m)
    if m < 0:
        raise ValueError("q-integer needs m >= 0")
    return QNumber(_poly_from_pairs((i, 1) for i in range(m)))


def q_factorial(m):
    """[m]!(q) = [1][2]...[m]."""
    out = QNumber.one()
    for i in range(1, int(m) + 1):
        out = out * q_int(i)
    return out


def q_even_factorial(m):
    """[2m]!!(q) = [2][4]...[2m]."""
    out = QNumber.one()
    for i in range(1, int(m) + 1):
        out = out * q_int(2 * i)
    return out


class ParityQNumber:
    """A parity function z -> even + odd * (-1)^z with q-number parts."""

    __slots__ = ("even_part", "odd_part")

    def __init__(self, even_part, odd_part=None):
        self.even_part = qn(even_part)
        self.odd_part = qn(odd_part) if odd_part is not None else QNumber.zero()

    @classmethod
    def from_samples(cls, value_even, value_odd):
        """Reconstruct a + b(-1)^z from its values at even and odd z."""
        e, o = qn(value_even), qn(value_odd)
        half = Fraction(1, 2)
        return cls((e + o) * half, (e - o) * half)

    def value_at(self, z):
        if int(z) % 2 == 0:
            return self.even_part + self.odd_part
        return self.even_part - self.odd_part

    def is_constant(self):
        return not self.odd_part

    def __eq__(self, other):
        if not isinstance(other, ParityQNumber):
            other = ParityQNumber(qn(other))
        return (self.even_part == other.even_part
                and self.odd_part == other.odd_part)

    def __hash__(self):
        return hash((self.even_part, self.odd_part))

    def __add__(self, other):
        if not isinstance(other, ParityQNumber):
            other = ParityQNumber(qn(other))
        return ParityQNumber(self.even_part + other.even_part,
                             self.odd_part + other.odd_part)

    def __mul__(self, other):
        if isinstance(other, ParityQNumber):
            return ParityQNumber(
                self.even_part * other.even_part + self.odd_part * other.odd_part,
                self.even_part * other.odd_part + self.odd_part * other.even_part)
        return ParityQNumber(self.even_part * qn(other), self.odd_part * qn(other))

    __rmul__ = __mul__

    def __str__(self):
        if not self.odd_part:
            return str(self.even_part)
        return "(%s) + (%s)*(-1)^z" % (self.even_part, self.odd_part)

    def __repr__(self):
        return "ParityQNumber(%s)" % self
