"""Closed forms for the multi-summations behind the sphere counts.

The summations have the shape

    S[z] = sum over c in Z_{>0}^t with w . c = z of q^(mu . c + e(c mod 2)),

with weights w in {1, 2}^t, nonnegative rational slopes mu, and a parity
table e on F_2^t.  A balanced summation (all weights 1) is solved exactly by
an inductive anti-difference construction after the change of variables
b_i = c_1 + ... + c_i; parity tables enter through the Fourier expansion of
q^e over F_2^t.  Mixed weights reduce to the balanced case by substituting
c_i -> 2c_i - s_i on the weight-1 variables and re-substituting half
arguments, which requires the parity table not to depend on the weight-2
variables (summations with a genuine weight-2 parity twist fall outside this
algebra: they can oscillate with period 4).

Every closed form g satisfies g(z) = brute_force(spec, z) for all
z >= sum(w); the brute-force summation is kept as an independent oracle.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .qcalc import SuperQExpPoly
from .qnum import QNumber, qn


class UnsupportedParity(ValueError):
    """Parity table depends on a weight-2 variable: no closed form here."""


@dataclass(frozen=True)
class SummationSpec:
    """Data of one multi-summation: weights, slopes, parity table."""

    weights: tuple
    slopes: tuple
    parity: tuple = ()   # ((residue vector, value) pairs); missing -> 0

    def __post_init__(self):
        w = tuple(int(x) for x in self.weights)
        mu = tuple(Fraction(x) for x in self.slopes)
        if len(w) != len(mu) or not w:
            raise ValueError("weights and slopes must be nonempty, same length")
        if any(x not in (1, 2) for x in w):
            raise ValueError("weights must lie in {1, 2}")
        if any(m < 0 for m in mu):
            raise ValueError("slopes must be nonnegative")
        par = []
        for key, val in self.parity:
            key = tuple(int(k) & 1 for k in key)
            if len(key) != len(w):
                raise ValueError("parity keys must have one residue per variable")
            par.append((key, Fraction(val)))
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "slopes", mu)
        object.__setattr__(self, "parity", tuple(sorted(par)))

    @classmethod
    def make(cls, weights, slopes, parity_table=None):
        items = tuple(sorted(parity_table.items())) if parity_table else ()
        return cls(tuple(weights), tuple(slopes), items)

    @property
    def t(self):
        return len(self.weights)

    def parity_value(self, residues):
        key = tuple(int(r) & 1 for r in residues)
        for k, v in self.parity:
            if k == key:
                return v
        return Fraction(0)

    def has_parity(self):
        return any(v for _, v in self.parity)

    def parity_on_weight2(self):
        """True if the table genuinely depends on a weight-2 variable."""
        for i, w in enumerate(self.weights):
            if w != 2:
                continue
            for key in product((0, 1), repeat=self.t):
                flipped = list(key)
                flipped[i] ^= 1
                if self.parity_value(key) != self.parity_value(flipped):
                    return True
        return False

    def weight_sum(self):
        return sum(self.weights)

    def mu_max(self):
        return max(self.slopes)

    def i_max(self):
        m = self.mu_max()
        return tuple(i for i, mu in enumerate(self.slopes) if mu == m)

    def split_max(self, w):
        """(mu_max, i_max) restricted to variables of the given weight."""
        vals = [mu for mu, ww in zip(self.slopes, self.weights) if ww == w]
        if not vals:
            return None, ()
        m = max(vals)
        idx = tuple(i for i, (mu, ww) in enumerate(zip(self.slopes, self.weights))
                    if ww == w and mu == m)
        return m, idx


def compositions(t, total, weights=None):
    """All c in Z_{>=1}^t with sum(weights[i]*c[i]) == total."""
    if weights is None:
        weights = (1,) * t
    out = []

    def rec(i, remaining, acc):
        if i == t:
            if remaining == 0:
                out.append(tuple(acc))
            return
        w = weights[i]
        tail_min = sum(weights[i + 1:])
        c = 1
        while w * c <= remaining - tail_min:
            acc.append(c)
            rec(i + 1, remaining - w * c, acc)
            acc.pop()
            c += 1
    rec(0, total, [])
    return out


def brute_force(spec, z):
    """Direct summation; the oracle every closed form is checked against."""
    z = int(z)
    if z < 0:
        raise ValueError("z must be nonnegative")
    acc = QNumber.zero()
    for c in compositions(spec.t, z, spec.weights):
        expo = sum((m * ci for m, ci in zip(spec.slopes, c)), Fraction(0))
        expo += spec.parity_value(c)
        acc = acc + QNumber.q_power(expo)
    return acc


_signed_cache = {}


def _solve_signed(signs, slopes):
    """Closed form of sum_{c>0, sum c = z} (-1)^(signs.c) q^(slopes.c).

    Change variables to partial sums b_i = c_1 + ... + c_i and integrate one
    variable at a time with anchored anti-differences; the result agrees with
    the summation for every z >= t - 1.
    """
    key = (tuple(int(s) & 1 for s in signs), tuple(Fraction(m) for m in slopes))
    hit = _signed_cache.get(key)
    if hit is not None:
        return hit
    signs, slopes = key
    t = len(slopes)
    nu = [slopes[i] - (slopes[i + 1] if i + 1 < t else 0) for i in range(t)]
    rr = [(signs[i] ^ (signs[i + 1] if i + 1 < t else 0)) for i in range(t)]
    f = SuperQExpPoly.term(1, nu=nu[0], p=rr[0])
    for i in range(1, t):
        f = SuperQExpPoly.term(1, nu=nu[i], p=rr[i]) * f.antidifference_anchored(i)
    _signed_cache[key] = f
    return f


def _fourier_coefficients(spec, indices):
    """Fourier expansion of q^(e(.)) over F_2^indices.

    Returns {s: lambda_s} with q^(e(c)) = sum_s lambda_s (-1)^(s.c) for all
    residue vectors c supported on the given variables (others fixed to 0).
    """
    k = len(indices)
    scale = Fraction(1, 2 ** k)
    out = {}
    for s in product((0, 1), repeat=k):
        lam = QNumber.zero()
        for u in product((0, 1), repeat=k):
            full = [0] * spec.t
            for pos, val in zip(indices, u):
                full[pos] = val
            term = QNumber.q_power(spec.parity_value(full))
            if sum(a * b for a, b in zip(s, u)) % 2:
                term = -term
            lam = lam + term
        lam = lam * scale
        if lam:
            out[s] = lam
    return out


def closed_form_balanced(spec):
    """Lemma-style closed form for all weights 1 and trivial parity."""
    if any(w != 1 for w in spec.weights):
        raise ValueError("balanced solver needs all weights equal to 1")
    if spec.has_parity():
        raise ValueError("balanced solver needs a trivial parity table")
    return _solve_signed((0,) * spec.t, spec.slopes)


def closed_form_parity(spec):
    """Closed form for all weights 1, arbitrary parity table."""
    if any(w != 1 for w in spec.weights):
        raise ValueError("parity solver needs all weights equal to 1")
    out = SuperQExpPoly.zero()
    for s, lam in _fourier_coefficients(spec, tuple(range(spec.t))).items():
        out = out + _solve_signed(s, spec.slopes).scale(lam)
    return out


def closed_form_weighted(spec):
    """Closed form for weights in {1, 2}; parity only on weight-1 variables."""
    if all(w == 1 for w in spec.weights):
        return closed_form_parity(spec)
    if spec.parity_on_weight2():
        raise UnsupportedParity(
            "parity table depends on a weight-2 variable; such summations "
            "are not super q-exponential polynomials in general")
    ones = [i for i, w in enumerate(spec.weights) if w == 1]
    twos = [i for i, w in enumerate(spec.weights) if w == 2]
    inner_slopes = tuple(2 * spec.slopes[i] for i in ones) + tuple(
        spec.slopes[i] for i in twos)
    out = SuperQExpPoly.zero()
    for s in product((0, 1), repeat=len(ones)):
        k = sum(s)
        residues = [0] * spec.t
        for pos, val in zip(ones, s):
            residues[pos] = val
        expo = spec.parity_value(residues) - sum(
            (spec.slopes[i] * si for i, si in zip(ones, s)), Fraction(0))
        pref = QNumber.q_power(expo) * Fraction(1, 2)
        inner = _solve_signed((0,) * spec.t, inner_slopes)
        g = inner.half_shift(k)
        # (1/2)(1 + (-1)^(z+k)) selects the residue class where the
        # substituted variable count is integral.
        gate = SuperQExpPoly.constant(1) + SuperQExpPoly.sign_z().scale(
            qn(-1 if k % 2 else 1))
        out = out + (gate * g).scale(pref)
    return out


def closed_form(spec):
    """Dispatch on the weights; the unique closed form for this spec."""
    if all(w == 1 for w in spec.weights):
        return closed_form_parity(spec)
    return closed_form_weighted(spec)


# -- displayed leading terms, used as independent checks ------------------------


def display_balanced(spec):
    """Leading term display for the balanced, parity-free summation.

    Returns (order, degree, lead) with
    lead = prod_{i not in i_max} (q^(mu_max - mu_i) - 1)^(-1).
    """
    m = spec.mu_max()
    imax = set(spec.i_max())
    lead = QNumber.one()
    for i, mu in enumerate(spec.slopes):
        if i not in imax:
            lead = lead / (QNumber.q_power(m - mu) - 1)
    return m, len(imax) - 1, lead


def display_parity(spec):
    """Leading term display for the balanced summation with parity table.

    Returns (order, degree, C0, C1) where the summation grows like
    (C0 + C1 (-1)^z) C(z, degree) q^(order z).
    """
    m = spec.mu_max()
    imax = set(spec.i_max())
    cmu = QNumber.from_fraction(Fraction(1, 2 ** len(imax)))
    for i, mu in enumerate(spec.slopes):
        if i not in imax:
            cmu = cmu / (QNumber.q_power(2 * (m - mu)) - 1)
    c0 = QNumber.zero()
    c1 = QNumber.zero()
    for s in product((0, 1), repeat=spec.t):
        expo = spec.parity_value(s) + sum(
            ((m - mu) * si for mu, si in zip(spec.slopes, s)), Fraction(0))
        term = QNumber.q_power(expo)
        c0 = c0 + term
        c1 = c1 + (-term if sum(s) % 2 else term)
    return m, len(imax) - 1, cmu * c0, cmu * c1


def display_weighted(spec):
    """Three-case leading term display for mixed weights, trivial parity.

    Returns (order, degree, C0, C1): the summation grows like
    (C0 + C1 (-1)^z) C(z, degree) q^(order z).
    """
    if spec.has_parity():
        raise ValueError("the weighted display assumes a trivial parity table")
    m1, i1max = spec.split_max(1)
    m2, i2max = spec.split_max(2)
    ones = [i for i, w in enumerate(spec.weights) if w == 1]
    twos = [i for i, w in enumerate(spec.weights) if w == 2]
    big1 = 2 * m1 if m1 is not None else None
    if m2 is None or (big1 is not None and big1 > m2):
        # dominated by the weight-1 block
        cmu = QNumber.one()
        for i in ones:
            if i not in i1max:
                cmu = cmu / (QNumber.q_power(2 * m1 - 2 * spec.slopes[i]) - 1)
        for i in twos:
            cmu = cmu / (QNumber.q_power(2 * m1 - spec.slopes[i]) - 1)
        acc = QNumber.zero()
        for s in product((0, 1), repeat=len([i for i in ones if i not in i1max])):
            rest = [i for i in ones if i not in i1max]
            expo = sum(((m1 - spec.slopes[i]) * si for i, si in zip(rest, s)),
                       Fraction(0))
            acc = acc + QNumber.q_power(expo)
        return m1, len(i1max) - 1, cmu * acc, QNumber.zero()
    if big1 is None or big1 < m2:
        # dominated by the weight-2 block
        cmu = QNumber.from_fraction(Fraction(1, 2 ** len(i2max)))
        for i in ones:
            cmu = cmu / (QNumber.q_power(m2 - 2 * spec.slopes[i]) - 1)
        for i in twos:
            if i not in i2max:
                cmu = cmu / (QNumber.q_power(m2 - spec.slopes[i]) - 1)
        c0 = QNumber.zero()
        c1 = QNumber.zero()
        for s in product((0, 1), repeat=len(ones)):
            expo = sum(((Fraction(m2, 2) - spec.slopes[i]) * si
                        for i, si in zip(ones, s)), Fraction(0))
            term = QNumber.q_power(expo)
            c0 = c0 + term
            c1 = c1 + (-term if sum(s) % 2 else term)
        return Fraction(m2, 2), len(i2max) - 1, cmu * c0, cmu * c1
    # balanced top: 2 * m1 == m2
    cmu = QNumber.from_fraction(Fraction(1, 2 ** len(i2max)))
    for i in ones:
        if i not in i1max:
            cmu = cmu / (QNumber.q_power(2 * m1 - 2 * spec.slopes[i]) - 1)
    for i in twos:
        if i not in i2max:
            cmu = cmu / (QNumber.q_power(2 * m1 - spec.slopes[i]) - 1)
    acc = QNumber.zero()
    rest = [i for i in ones if i not in i1max]
    for s in product((0, 1), repeat=len(rest)):
        expo = sum(((m1 - spec.slopes[i]) * si for i, si in zip(rest, s)),
                   Fraction(0))
        acc = acc + QNumber.q_power(expo)
    return m1, len(i1max) + len(i2max) - 1, cmu * acc, QNumber.zero()


def applicable_display(spec):
    """The display matching the spec's shape: (order, degree, C0, C1)."""
    if all(w == 1 for w in spec.weights):
        if spec.has_parity():
            return display_parity(spec)
        order, deg, lead = display_balanced(spec)
        return order, deg, lead, QNumber.zero()
    return display_weighted(spec)


def verify_spec(spec, z_max=30, q_samples=()):
    """Compare closed form against brute force on [sum w, z_max].

    Returns (ok, first_bad_z); also checks the leading display when one
    applies (trivial parity or balanced)."""
    g = closed_form(spec)
    for z in range(spec.weight_sum(), z_max + 1):
        if g.evaluate(z) != brute_force(spec, z):
            return False, z
    if not (spec.has_parity() and any(w == 2 for w in spec.weights)):
        order, deg, c0, c1 = applicable_display(spec)
        if g:
            got = g.leading_term()
            if got[0] != order:
                return False, -1
            if g.coefficient(order, deg, 0) != c0:
                return False, -1
            if g.coefficient(order, deg, 1) != c1:
                return False, -1
    return True, None
