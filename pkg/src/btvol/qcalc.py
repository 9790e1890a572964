"""Super q-exponential polynomials and their discrete calculus.

A super q-exponential polynomial is a finite sum of terms

    c * C(z, n) * (-1)^(p*z) * q^(nu*z),

with q-number coefficients c, rational orders nu, natural degrees n in the
binomial basis C(z, n) = z(z-1)...(z-n+1)/n!, and parity p in {0, 1}.  The
binomial basis (not monomials) is the storage basis; the difference operator
acts triangularly on it, which makes the anti-difference a back-substitution.

Supported operations: ring arithmetic, the difference operator Delta
f(z) -> f(z+1) - f(z), its free and anchored sections, evaluation at integers
and (for parity-free inputs) half-integers, argument shifts z -> z + k and
z -> (z + k)/2, parity restrictions z -> 2z and z -> 2z + 1, and leading-term
extraction (order, even/odd degree, even/odd leading coefficient).
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

from .qnum import QNumber, qn


class ZeroPolynomial(ValueError):
    """Raised when asking for the leading term of the zero polynomial."""


class HalfIntegerParity(ValueError):
    """Raised when a (-1)^z factor meets a strict half-integer argument."""


def _binom_product_coeffs(m, n):
    """C(z,m) * C(z,n) = sum_k coeff[k] * C(z,k) (trinomial revision)."""
    out = {}
    for k in range(max(m, n), m + n + 1):
        c = comb(k, m) * comb(m, m + n - k)
        if c:
            out[k] = c
    return out


def _binom_shift_coeffs(k, n):
    """C(z+k, n) = sum_j C(k, n-j) * C(z, j) by Vandermonde."""
    out = {}
    for j in range(0, n + 1):
        c = comb_int(k, n - j)
        if c:
            out[j] = c
    return out


def comb_int(k, m):
    """Binomial coefficient C(k, m) for any integer k and m >= 0."""
    if m < 0:
        return 0
    num = 1
    for i in range(m):
        num *= k - i
    den = 1
    for i in range(1, m + 1):
        den *= i
    return Fraction(num, den)


def _binom_poly_coeffs(n):
    """Monomial coefficients of C(z, n) as a list c[0..n] with sum c_i z^i."""
    coeffs = [Fraction(1)]
    for i in range(n):
        nxt = [Fraction(0)] * (len(coeffs) + 1)
        for d, c in enumerate(coeffs):
            nxt[d + 1] += c
            nxt[d] += c * (-i)
        coeffs = nxt
    fact = Fraction(1)
    for i in range(1, n + 1):
        fact *= i
    return [c / fact for c in coeffs]


def _monomials_to_binom(coeffs):
    """Convert sum coeffs[i] z^i into the C(z, n) basis (Stirling triangle)."""
    out = {}
    rest = list(coeffs)
    for n in range(len(rest) - 1, -1, -1):
        basis = _binom_poly_coeffs(n)
        c = rest[n] / basis[n]
        if c:
            out[n] = c
            for i, b in enumerate(basis):
                rest[i] -= c * b
    return out


class SuperQExpPoly:
    """Finite sum of c * C(z,n) * (-1)^(p z) * q^(nu z) terms."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for (nu, n, p), c in terms.items():
                self._bump(Fraction(nu), int(n), int(p) & 1, qn(c))

    def _bump(self, nu, n, p, c):
        key = (nu, n, p)
        cur = self.terms.get(key)
        new = c if cur is None else cur + c
        if new:
            self.terms[key] = new
        elif cur is not None:
            del self.terms[key]

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def constant(cls, c):
        return cls({(Fraction(0), 0, 0): qn(c)})

    @classmethod
    def term(cls, coeff, nu=0, n=0, p=0):
        return cls({(Fraction(nu), n, p): qn(coeff)})

    @classmethod
    def q_exp(cls, nu):
        return cls.term(1, nu=nu)

    @classmethod
    def binom_z(cls, n):
        return cls.term(1, n=n)

    @classmethod
    def sign_z(cls):
        return cls.term(1, p=1)

    # -- ring structure -------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, SuperQExpPoly):
            other = SuperQExpPoly.constant(other)
        out = SuperQExpPoly()
        out.terms = dict(self.terms)
        for (nu, n, p), c in other.terms.items():
            out._bump(nu, n, p, c)
        return out

    __radd__ = __add__

    def __neg__(self):
        out = SuperQExpPoly()
        out.terms = {k: -c for k, c in self.terms.items()}
        return out

    def __sub__(self, other):
        if not isinstance(other, SuperQExpPoly):
            other = SuperQExpPoly.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, SuperQExpPoly):
            return self.scale(other)
        out = SuperQExpPoly()
        for (nu1, n1, p1), c1 in self.terms.items():
            for (nu2, n2, p2), c2 in other.terms.items():
                c = c1 * c2
                for k, m in _binom_product_coeffs(n1, n2).items():
                    out._bump(nu1 + nu2, k, (p1 + p2) & 1, c * m)
        return out

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c):
        c = qn(c)
        out = SuperQExpPoly()
        if c:
            out.terms = {k: v * c for k, v in self.terms.items()}
        return out

    def __eq__(self, other):
        if not isinstance(other, SuperQExpPoly):
            other = SuperQExpPoly.constant(other)
        return self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def coefficient(self, nu, n, p):
        return self.terms.get((Fraction(nu), int(n), int(p) & 1), QNumber.zero())

    # -- calculus ----------------------------------------------------------------

    def difference(self):
        """Delta f with Delta f(z) = f(z+1) - f(z)."""
        out = SuperQExpPoly()
        for (nu, n, p), c in self.terms.items():
            qv = QNumber.q_power(nu)
            s = Fraction(-1) if p else Fraction(1)
            # Delta[C(z,n) (-1)^(pz) q^(nu z)]
            #   = ((s q^nu - 1) C(z,n) + s q^nu C(z,n-1)) (-1)^(pz) q^(nu z)
            out._bump(nu, n, p, c * (qv * s - 1))
            if n >= 1:
                out._bump(nu, n - 1, p, c * qv * s)
        return out

    def antidifference_free(self):
        """A section of Delta; deterministic via zero constant term.

        Per homogeneous (order, parity) component Delta is triangular in the
        degree, with diagonal entry s*q^nu - 1 (s = +-1 by parity); invert by
        back-substitution from the top degree.  On the order-0 even part the
        diagonal vanishes and Sum C(z,n) = C(z,n+1) raises the degree instead.
        """
        groups = {}
        for (nu, n, p), c in self.terms.items():
            groups.setdefault((nu, p), {})[n] = c
        out = SuperQExpPoly()
        for (nu, p), comp in groups.items():
            qv = QNumber.q_power(nu)
            s = Fraction(-1) if p else Fraction(1)
            diag = qv * s - 1
            rem = dict(comp)
            if diag:
                for n in sorted(rem, reverse=True):
                    c = rem.pop(n, None)
                    if not c:
                        continue
                    g = c / diag
                    out._bump(nu, n, p, g)
                    if n >= 1:
                        low = rem.get(n - 1, QNumber.zero()) - g * qv * s
                        if low:
                            rem[n - 1] = low
                        elif n - 1 in rem:
                            del rem[n - 1]
            else:
                # order 0, even parity: Delta C(z, n+1) = C(z, n)
                for n, c in comp.items():
                    out._bump(nu, n + 1, p, c)
        return out

    def antidifference_anchored(self, a):
        """The anti-difference vanishing at the integer anchor a."""
        g = self.antidifference_free()
        return g - SuperQExpPoly.constant(g.evaluate(a))

    # -- evaluation and substitution ------------------------------------------------

    def evaluate(self, z):
        """Exact value at an integer or (parity-free) half-integer z."""
        z = Fraction(z)
        if z.denominator not in (1, 2):
            raise ValueError("evaluation only at integers or half-integers")
        strict_half = z.denominator == 2
        acc = QNumber.zero()
        for (nu, n, p), c in self.terms.items():
            if p and strict_half:
                raise HalfIntegerParity(
                    "(-1)^z is undefined at z = %s" % z)
            binom = comb_int(z, n) if strict_half else comb_int(int(z), n)
            if not binom:
                continue
            val = c * binom * QNumber.q_power(nu * z)
            if p and int(z) % 2:
                val = -val
            acc = acc + val
        return acc

    def shift(self, k):
        """f(z + k) for an integer k."""
        k = int(k)
        if k == 0:
            return self
        out = SuperQExpPoly()
        for (nu, n, p), c in self.terms.items():
            c2 = c * QNumber.q_power(nu * k)
            if p and k % 2:
                c2 = -c2
            for j, m in _binom_shift_coeffs(k, n).items():
                out._bump(nu, j, p, c2 * m)
        return out

    def half_shift(self, k):
        """f((z + k)/2) for an integer k; requires f parity-free."""
        k = int(k)
        out = SuperQExpPoly()
        for (nu, n, p), c in self.terms.items():
            if p:
                raise HalfIntegerParity(
                    "cannot substitute (z+%d)/2 into a parity term" % k)
            c2 = c * QNumber.q_power(nu * Fraction(k, 2))
            # C((z+k)/2, n) as a polynomial in z, then back to the C basis.
            base = _binom_poly_coeffs(n)
            poly = [Fraction(0)] * (n + 1)
            for d, b in enumerate(base):
                # b * ((z+k)/2)^d
                half = Fraction(1, 2) ** d
                for i in range(d + 1):
                    poly[i] += b * half * comb(d, i) * Fraction(k) ** (d - i)
            for j, m in _monomials_to_binom(poly).items():
                out._bump(nu / 2, j, 0, c2 * m)
        return out

    def compose_affine(self, stretch, offset):
        """f(stretch*z + offset) for positive integer stretch, integer offset."""
        stretch, offset = int(stretch), int(offset)
        out = SuperQExpPoly()
        for (nu, n, p), c in self.terms.items():
            c2 = c * QNumber.q_power(nu * offset)
            if p and offset % 2:
                c2 = -c2
            newp = p if stretch % 2 else 0
            base = _binom_poly_coeffs(n)
            poly = [Fraction(0)] * (n + 1)
            for d, b in enumerate(base):
                for i in range(d + 1):
                    poly[i] += (b * comb(d, i) * Fraction(stretch) ** i
                                * Fraction(offset) ** (d - i))
            for j, m in _monomials_to_binom(poly).items():
                out._bump(nu * stretch, j, newp, c2 * m)
        return out

    def restrict_even(self):
        """The q-exponential polynomial r -> f(2r)."""
        return self.compose_affine(2, 0)

    def restrict_odd(self):
        """The q-exponential polynomial r -> f(2r + 1)."""
        return self.compose_affine(2, 1)

    # -- structure queries ------------------------------------------------------------

    def order(self):
        if not self.terms:
            raise ZeroPolynomial("the zero polynomial has no order")
        return max(nu for (nu, _, _) in self.terms)

    def leading_term(self):
        """(order, deg0, deg1, lead0, lead1); absent parts have degree -1."""
        if not self.terms:
            raise ZeroPolynomial("the zero polynomial has no leading term")
        nu = self.order()
        deg = {0: -1, 1: -1}
        for (o, n, p) in self.terms:
            if o == nu and n > deg[p]:
                deg[p] = n
        lead0 = (self.terms.get((nu, deg[0], 0), QNumber.zero())
                 if deg[0] >= 0 else QNumber.zero())
        lead1 = (self.terms.get((nu, deg[1], 1), QNumber.zero())
                 if deg[1] >= 0 else QNumber.zero())
        return nu, deg[0], deg[1], lead0, lead1

    def degree(self):
        _, d0, d1, _, _ = self.leading_term()
        return max(d0, d1)

    def is_primary(self):
        return all(nu.denominator == 1 and c.is_primary()
                   for (nu, _, _), c in self.terms.items())

    def is_parity_free(self):
        return all(p == 0 for (_, _, p) in self.terms)

    def parity_part(self, p):
        out = SuperQExpPoly()
        out.terms = {k: c for k, c in self.terms.items() if k[2] == p}
        return out

    # -- printing ---------------------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        keys = sorted(self.terms, key=lambda k: (-k[0], -k[1], k[2]))
        chunks = []
        for nu, n, p in keys:
            factors = ["(%s)" % self.terms[(nu, n, p)]]
            if n:
                factors.append("C(z,%d)" % n)
            if p:
                factors.append("(-1)^z")
            if nu:
                factors.append("q^(%s z)" % nu)
            chunks.append(" * ".join(factors))
        return "  +  ".join(chunks)

    def __repr__(self):
        return "SuperQExpPoly(%s)" % self

    def to_json(self):
        keys = sorted(self.terms, key=lambda k: (-k[0], -k[1], k[2]))
        return [{"order": [k[0].numerator, k[0].denominator],
                 "degree": k[1], "parity": k[2],
                 "coeff": self.terms[k].to_json()} for k in keys]


def difference(f):
    return f.difference()


def antidifference_free(f):
    return f.antidifference_free()


def antidifference_anchored(f, a):
    return f.antidifference_anchored(a)


def leading_term(f):
    return f.leading_term()
