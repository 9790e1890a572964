"""The vertex model of the standard apartment, in coweight coordinates.

A point is x = o + sum_j gamma_j omega_j with gamma_j >= 0; the coordinate
gamma_j equals the value of the j-th simple root at x, so types (gamma_j = 0),
jumps (gamma_j not integral), root values (dot products with the coefficient
table) and the distance ceil(sum_j h_j gamma_j) all read off the same vector.
All coordinates live in (1/2)Z; enumeration code works in doubled integer
units throughout.

Besides the point-wise predicates this module parametrizes the spheres of a
fixed type I as signed unions of `Piece`s: translated sublattices
x0 + sum_i c_i v_i with c ranging over positive integers.  Each piece
compiles to a SummationSpec (weights, slopes, parity corrections) plus a
constant exponent offset and a radius offset, which is what both the fast
enumeration and the closed-form pipeline consume.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .multisum import SummationSpec, compositions
from .rootsys import TypeSubset

HALF = Fraction(1, 2)


class NegativeCoordinate(ValueError):
    """Points must stay in the closed fundamental chamber (gamma >= 0)."""


class NotAVertex(ValueError):
    """Operation defined only on vertices of the building."""


class UnsupportedCoset(ValueError):
    """Coset tag not meaningful for this family."""


class ApartmentPoint:
    """A chamber point in fundamental-coweight coordinates."""

    __slots__ = ("system", "gamma")

    def __init__(self, system, gamma):
        gamma = tuple(Fraction(g) for g in gamma)
        if len(gamma) != system.n:
            raise ValueError("expected %d coordinates" % system.n)
        if any(g < 0 for g in gamma):
            raise NegativeCoordinate("coordinates must be nonnegative")
        self.system = system
        self.gamma = gamma

    def root_value(self, coeffs):
        return sum(Fraction(m) * g for m, g in zip(coeffs, self.gamma))

    def a0(self):
        return self.root_value(self.system.highest_root)

    def two_rho_value(self):
        return self.root_value(self.system.two_rho)

    def type_of(self):
        return frozenset(j + 1 for j, g in enumerate(self.gamma) if g == 0)

    def jumps(self):
        return frozenset(j + 1 for j, g in enumerate(self.gamma)
                         if g.denominator != 1)

    def is_special(self):
        return all(g.denominator == 1 for g in self.gamma)

    def is_vertex(self):
        fam, n = self.system.family, self.system.n
        if fam == "A":
            return self.is_special()
        if any(g.denominator > 2 for g in self.gamma):
            return False
        if fam == "C":
            return all((h * g).denominator == 1
                       for h, g in zip(self.system.highest_root, self.gamma))
        J = sorted(self.jumps())
        if fam == "B":
            return not _excluded_pattern_b(J)
        # D: the half-integer lattice needs matching tail fractionality.
        tail_frac = [self.gamma[n - 2].denominator == 2,
                     self.gamma[n - 1].denominator == 2]
        if tail_frac[0] != tail_frac[1]:
            return False
        if tail_frac[0]:
            return not (set(J) <= {n - 2, n - 1, n})
        return not _excluded_pattern_b(J)

    def distance(self):
        if not self.is_vertex():
            raise NotAVertex("distance is defined for vertices only")
        a0 = self.a0()
        return -((-a0.numerator) // a0.denominator)

    def index_exponent(self):
        """sum of ceil(a(x)) over positive roots with a(x) > 0."""
        if not self.is_vertex():
            raise NotAVertex("index exponent is defined for vertices only")
        total = 0
        for m in self.system.positive_roots:
            v = self.root_value(m)
            if v > 0:
                total += -((-v.numerator) // v.denominator)
        return total

    def color(self):
        """The color class of a vertex (index of the alcove extreme point)."""
        if not self.is_vertex():
            raise NotAVertex("color is defined for vertices only")
        fam, n = self.system.family, self.system.n
        if fam == "A":
            return sum(j * g for j, g in enumerate(self.gamma, start=1)) % (n + 1)
        chi = _chi_coordinates(self)
        nonint = [c for c in chi if c.denominator != 1]
        if fam == "C":
            return len(nonint)
        if fam == "B":
            if nonint:
                return len(nonint)
            return int(sum(chi)) % 2
        if nonint:
            if len(nonint) < n:
                return len(nonint)
            s = sum(chi) - Fraction(n, 2)
            return n - 1 if int(s) % 2 else n
        return int(sum(chi)) % 2

    def __eq__(self, other):
        return (isinstance(other, ApartmentPoint)
                and self.system is other.system and self.gamma == other.gamma)

    def __hash__(self):
        return hash(self.gamma)

    def __repr__(self):
        return "ApartmentPoint(%s, gamma=%s)" % (
            self.system.name, tuple(str(g) for g in self.gamma))


def _excluded_pattern_b(J):
    """Jump patterns that kill vertex-hood on the integral-tail lattice."""
    if J == [1]:
        return True
    return len(J) == 2 and J[1] - J[0] == 1


def _chi_coordinates(point):
    """Standard coordinates of the point (for the color classes)."""
    fam, n = point.system.family, point.system.n
    g = point.gamma
    if fam == "A":
        raise ValueError("chi coordinates are used for B/C/D only")
    if fam in ("B", "C"):
        # omega_i = e_1 + ... + e_i (omega_n halved for C)
        scale_last = HALF if fam == "C" else Fraction(1)
        chi = []
        for j in range(1, n + 1):
            v = sum(g[i - 1] for i in range(j, n)) + g[n - 1] * scale_last
            chi.append(v)
        return chi
    chi = []
    for j in range(1, n - 1):
        v = sum(g[i - 1] for i in range(j, n - 1)) + HALF * (g[n - 2] + g[n - 1])
        chi.append(v)
    chi.append(HALF * (g[n - 2] + g[n - 1]))
    chi.append(HALF * (g[n - 1] - g[n - 2]))
    return chi


# -- sphere pieces -----------------------------------------------------------


@dataclass(frozen=True)
class Piece:
    """A signed translated sublattice x0 + sum c_i v_i, c_i >= 1."""

    sign: int
    shift: tuple      # gamma vector of x0 (Fractions)
    gens: tuple       # one gamma vector per free variable

    def points(self, system, radius):
        """All lattice points of the piece at sphere radius `radius`."""
        spec, _, delta, _ = compile_piece(system, self)
        total = radius + delta
        if total < 0:
            return []
        out = []
        for c in compositions(len(self.gens), total, spec.weights):
            gamma = list(self.shift)
            for ci, v in zip(c, self.gens):
                for j, vj in enumerate(v):
                    gamma[j] += ci * vj
            out.append(ApartmentPoint(system, gamma))
        return out


def _omega(system, j, primed):
    """gamma vector of omega_j (primed: omega_j / h_j)."""
    n = system.n
    h = system.highest_root[j - 1]
    val = Fraction(1, h) if primed else Fraction(1)
    return tuple(val if i == j - 1 else Fraction(0) for i in range(n))


def _scaled(vec, s):
    return tuple(Fraction(s) * v for v in vec)


def _vec_add(*vecs):
    return tuple(sum(col) for col in zip(*vecs))


def coset_shifts(system):
    """The coset translations of the full vertex lattice, keyed by tag."""
    fam, n = system.family, system.n
    zero = (Fraction(0),) * n
    if fam in ("A", "C"):
        return {"lattice": zero}
    if fam == "B":
        return {
            "X0": zero,
            "X1": _scaled(_omega(system, 1, primed=False), -HALF),
        }
    w1 = _omega(system, 1, primed=False)
    wn1 = _omega(system, n - 1, primed=False)
    wn = _omega(system, n, primed=False)
    return {
        "X00": zero,
        "X10": _scaled(w1, -HALF),
        "X01": _scaled(_vec_add(wn1, wn), -HALF),
        "X11": _scaled(_vec_add(w1, wn1, wn), -HALF),
    }


def excluded_jump_sets(system):
    """The jump patterns whose lattice points are not vertices."""
    fam, n = system.family, system.n
    if fam in ("A", "C"):
        return []
    if fam == "B":
        return [frozenset({1})] + [frozenset({j, j + 1}) for j in range(1, n)]
    out = [frozenset({1})]
    out += [frozenset({j, j + 1}) for j in range(1, n - 2)]
    out += [frozenset({n - 1, n}), frozenset({n - 2, n - 1, n})]
    return out


def pieces_for_type(system, I, variant="all"):
    """Signed pieces whose disjoint union is the type-I sphere family."""
    if not isinstance(I, TypeSubset):
        I = TypeSubset.of(system, I)
    ell = I.ell
    if not ell:
        return []
    special_gens = tuple(_omega(system, l, primed=False) for l in ell)
    if variant == "special":
        zero = (Fraction(0),) * system.n
        return [Piece(1, zero, special_gens)]
    if variant != "all":
        raise ValueError("variant must be 'all' or 'special'")
    primed_gens = tuple(_omega(system, l, primed=True) for l in ell)
    pieces = []
    for shift in coset_shifts(system).values():
        if _compatible_shift(shift, I):
            pieces.append(Piece(1, shift, primed_gens))
    for J in excluded_jump_sets(system):
        if J & I.members:
            continue
        shift = _scaled(_vec_add(*(_omega(system, j, primed=False) for j in J)),
                        -HALF)
        pieces.append(Piece(-1, shift, special_gens))
    return pieces


def _compatible_shift(shift, I):
    return all(shift[j - 1] == 0 for j in I.members)


_PIECE_CACHE = {}


def compile_piece(system, piece):
    """(SummationSpec, offset, delta, support) of a piece.

    For points x(c) = x0 + sum c_i v_i of type I, with S the positive roots
    not vanishing on them:

      sum over a in S of ceil(a(x(c))) = offset + mu . c + e(c mod 2),
      ceil(a0(x(c))) = r  <=>  w . c = r + delta,

    where w_i = a0(v_i), mu_i = sum over S of a(v_i), and e collects the
    half-unit ceiling defects, which only depend on c mod 2.
    """
    key = (system.name, piece)
    hit = _PIECE_CACHE.get(key)
    if hit is not None:
        return hit
    t = len(piece.gens)
    zero_cols = [j for j in range(system.n)
                 if piece.shift[j] == 0 and all(v[j] == 0 for v in piece.gens)]
    support = tuple(m for m in system.positive_roots
                    if any(m[j] for j in range(system.n) if j not in zero_cols))
    # root values at shift and at the generators
    a_shift = [sum(Fraction(m[j]) * piece.shift[j] for j in range(system.n))
               for m in support]
    a_gen = [[sum(Fraction(m[j]) * v[j] for j in range(system.n))
              for m in support] for v in piece.gens]
    weights = tuple(
        int(sum(Fraction(h) * v[j] for j, h in enumerate(system.highest_root)))
        for v in piece.gens)
    slopes = tuple(sum(a_gen[i], Fraction(0)) for i in range(t))
    offset = sum(a_shift, Fraction(0))
    table = {}
    for residues in product((0, 1), repeat=t):
        c = tuple(r + 2 for r in residues)
        defect = Fraction(0)
        for aidx in range(len(support)):
            val = a_shift[aidx] + sum(a_gen[i][aidx] * c[i] for i in range(t))
            defect += Fraction(-((-val.numerator) // val.denominator)) - val
        if defect:
            table[residues] = defect
    values = set(table.values()) | ({Fraction(0)} if len(table) < 2 ** t else set())
    if len(values) == 1:
        # a constant ceiling defect is an exponent offset, not a parity twist
        offset += values.pop()
        table = {}
    spec = SummationSpec.make(weights, slopes, table)
    a0_shift = sum(Fraction(h) * piece.shift[j]
                   for j, h in enumerate(system.highest_root))
    delta = (-a0_shift.numerator) // a0_shift.denominator  # -ceil(a0(x0))
    result = (spec, offset, delta, support)
    _PIECE_CACHE[key] = result
    return result


# -- enumeration -----------------------------------------------------------------


def enumerate_sphere(system, r, mode="all", method="fast"):
    """The vertices at distance exactly r of the given kind.

    mode 'all' or 'special'; method 'fast' (index-set pieces) or 'brute'
    (scan the ambient half-integer lattice and filter by is_vertex)."""
    r = int(r)
    if r < 0:
        raise ValueError("radius must be nonnegative")
    if mode not in ("all", "special"):
        raise ValueError("mode must be 'all' or 'special'")
    if method == "brute":
        return _enumerate_brute(system, r, mode)
    if method != "fast":
        raise ValueError("method must be 'fast' or 'brute'")
    if r == 0:
        return [ApartmentPoint(system, (0,) * system.n)]
    from .rootsys import all_types
    points = {}
    for I in all_types(system):
        if I.t == 0:
            continue
        for piece in pieces_for_type(system, I, mode):
            for p in piece.points(system, r):
                points[p.gamma] = points.get(p.gamma, 0) + piece.sign
    out = []
    for gamma, count in points.items():
        if count == 1:
            out.append(ApartmentPoint(system, gamma))
        elif count != 0:
            raise AssertionError("piece multiplicities are not 0/1 at %s"
                                 % (gamma,))
    return out


def _enumerate_brute(system, r, mode):
    n = system.n
    h = system.highest_root
    step = 1 if system.family == "A" else HALF
    out = []
    gamma = [Fraction(0)] * n

    def rec(j, budget):
        if j == n:
            p = ApartmentPoint(system, gamma)
            if p.a0() > r - 1 and (mode == "all" or p.is_special()):
                if p.is_vertex():
                    out.append(p)
            return
        g = Fraction(0)
        while h[j] * g <= budget:
            gamma[j] = g
            rec(j + 1, budget - h[j] * g)
            g += step
        gamma[j] = Fraction(0)

    rec(0, Fraction(r))
    return out


def enumerate_ball(system, r, mode="all", method="fast"):
    out = []
    for s in range(int(r) + 1):
        out.extend(enumerate_sphere(system, s, mode, method))
    return out


# -- parity corrections (spec fragments per coset) ----------------------------------


def parity_correction(system, I, coset_tag):
    """The SummationSpec fragment of one coset piece of type I.

    Returns (parity_table, slopes, weights, shift_exponent, radius_offset):
    for the points x(c) of the piece, sum of ceil(a(x)) over a(x) > 0 equals
    2 rho(x) + e(c mod 2) in the lattice cosets, and more generally
    shift_exponent + mu . c + e(c mod 2); the sphere of radius r corresponds
    to w . c = r + radius_offset.
    """
    if not isinstance(I, TypeSubset):
        I = TypeSubset.of(system, I)
    shifts = coset_shifts(system)
    if isinstance(coset_tag, frozenset) or isinstance(coset_tag, (set, tuple, list)):
        J = frozenset(int(j) for j in coset_tag)
        if J not in set(excluded_jump_sets(system)):
            raise UnsupportedCoset("%s is not an excluded jump set of %s"
                                   % (sorted(J), system.name))
        if J & I.members:
            raise UnsupportedCoset("jump set meets the type")
        shift = _scaled(_vec_add(*(_omega(system, j, primed=False) for j in J)),
                        -HALF)
        gens = tuple(_omega(system, l, primed=False) for l in I.ell)
    else:
        if coset_tag not in shifts:
            raise UnsupportedCoset("%r is not a coset of %s"
                                   % (coset_tag, system.name))
        shift = shifts[coset_tag]
        if not _compatible_shift(shift, I):
            raise UnsupportedCoset("coset %s has no type-%s points"
                                   % (coset_tag, sorted(I.members)))
        gens = tuple(_omega(system, l, primed=True) for l in I.ell)
    piece = Piece(1, shift, gens)
    spec, offset, delta, _ = compile_piece(system, piece)
    table = {k: v for k, v in spec.parity}
    return table, spec.slopes, spec.weights, offset, delta
