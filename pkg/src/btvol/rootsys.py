"""Classical root systems A_n, B_n, C_n, D_n and their Poincare polynomials.

Roots are stored as integer coefficient vectors over the simple-root basis,
so evaluating a root at a point given in fundamental-coweight coordinates is
a plain dot product.  The parabolic Poincare polynomial of a pair (Phi, I) is
computed as the exact quotient P_Phi / P_{Phi_I}, where Phi_I decomposes into
irreducible components read off the Dynkin diagram; the appendix-style closed
forms (multinomials and double factorials) are provided separately as a
cross-checked fast path.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .qnum import QNumber, q_factorial, q_int

FAMILIES = ("A", "B", "C", "D")

_MIN_RANK = {"A": 1, "C": 2, "B": 3, "D": 4}


class RankOutOfRange(ValueError):
    """Rank outside the modeled range for the family."""


class NonDivisible(ArithmeticError):
    """A parabolic Poincare quotient left a remainder (must never fire)."""


def _chain(i, j):
    """Coefficient pattern a_i + ... + a_j (1-based, inclusive); {} if i > j."""
    return {k: 1 for k in range(i, j + 1)}


def _vec(n, coeffs):
    return tuple(coeffs.get(j, 0) for j in range(1, n + 1))


def _positive_roots(family, n):
    roots = []
    if family == "A":
        for i in range(1, n + 1):
            for j in range(i + 1, n + 2):
                roots.append(_vec(n, _chain(i, j - 1)))
    elif family == "C":
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                roots.append(_vec(n, _chain(i, j - 1)))
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                c = _chain(i, j - 1)
                for k in range(j, n):
                    c[k] = 2
                c[n] = c.get(n, 0) + 1
                roots.append(_vec(n, c))
        for i in range(1, n + 1):
            c = {k: 2 for k in range(i, n)}
            c[n] = 1
            roots.append(_vec(n, c))
    elif family == "B":
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                roots.append(_vec(n, _chain(i, j - 1)))
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                c = _chain(i, j - 1)
                for k in range(j, n + 1):
                    c[k] = 2
                roots.append(_vec(n, c))
        for i in range(1, n + 1):
            roots.append(_vec(n, _chain(i, n)))
    elif family == "D":
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                roots.append(_vec(n, _chain(i, j - 1)))
        for i in range(1, n):
            c = _chain(i, n - 2)
            c[n] = 1
            roots.append(_vec(n, c))
        for i in range(1, n - 1):
            c = _chain(i, n - 2)
            c[n - 1] = 1
            c[n] = c.get(n, 0) + 1
            roots.append(_vec(n, c))
        for i in range(1, n - 1):
            for j in range(i + 1, n - 1):
                c = _chain(i, j - 1)
                for k in range(j, n - 1):
                    c[k] = 2
                c[n - 1] = 1
                c[n] = 1
                roots.append(_vec(n, c))
    return tuple(roots)


def _highest_root(family, n):
    if family == "A":
        return (1,) * n
    if family == "C":
        return tuple([2] * (n - 1) + [1])
    if family == "B":
        return tuple([1] + [2] * (n - 1))
    return tuple([1] + [2] * (n - 3) + [1, 1])


def _two_rho(family, n):
    if family == "A":
        return tuple(i * (n + 1 - i) for i in range(1, n + 1))
    if family == "C":
        return tuple([i * (2 * n + 1 - i) for i in range(1, n)]
                     + [comb(n + 1, 2)])
    if family == "B":
        return tuple(i * (2 * n - i) for i in range(1, n + 1))
    return tuple([i * (2 * n - 1 - i) for i in range(1, n - 1)]
                 + [comb(n, 2), comb(n, 2)])


def _weyl_degrees(family, n):
    if family == "A":
        return tuple(range(2, n + 2))
    if family in ("B", "C"):
        return tuple(2 * i for i in range(1, n + 1))
    return tuple([2 * i for i in range(1, n)] + [n])


def _dynkin_edges(family, n):
    if family == "D":
        edges = [(i, i + 1) for i in range(1, n - 1)]
        edges.append((n - 2, n))
        return edges
    return [(i, i + 1) for i in range(1, n)]


@dataclass(frozen=True)
class ClassicalRootSystem:
    family: str
    n: int
    positive_roots: tuple
    highest_root: tuple
    two_rho: tuple
    weyl_degrees: tuple

    def __repr__(self):
        return "ClassicalRootSystem(%s%d)" % (self.family, self.n)

    @property
    def name(self):
        return "%s%d" % (self.family, self.n)

    def to_json(self):
        return {
            "family": self.family,
            "rank": self.n,
            "positive_roots": [list(m) for m in self.positive_roots],
            "highest_root": list(self.highest_root),
            "two_rho": list(self.two_rho),
            "weyl_degrees": list(self.weyl_degrees),
        }


_BUILD_CACHE = {}


def build(family, n):
    """Construct the root system data; validates the tabulated invariants."""
    family = str(family).upper()
    n = int(n)
    key = (family, n)
    hit = _BUILD_CACHE.get(key)
    if hit is not None:
        return hit
    if family not in FAMILIES:
        raise RankOutOfRange("unknown family %r" % family)
    if n < _MIN_RANK[family]:
        raise RankOutOfRange(
            "family %s needs rank >= %d (low-rank coincidences are not "
            "modeled)" % (family, _MIN_RANK[family]))
    roots = _positive_roots(family, n)
    sys = ClassicalRootSystem(
        family=family, n=n,
        positive_roots=roots,
        highest_root=_highest_root(family, n),
        two_rho=_two_rho(family, n),
        weyl_degrees=_weyl_degrees(family, n),
    )
    expected = {"A": n * (n + 1) // 2, "B": n * n, "C": n * n,
                "D": n * (n - 1)}[family]
    if len(roots) != expected or len(set(roots)) != expected:
        raise AssertionError("positive root count mismatch for %s" % sys.name)
    col = [sum(m[j] for m in roots) for j in range(n)]
    if tuple(col) != sys.two_rho:
        raise AssertionError("2rho inconsistent with root table for %s" % sys.name)
    if max(roots, key=lambda m: (sum(m), m)) != sys.highest_root:
        raise AssertionError("highest root mismatch for %s" % sys.name)
    _BUILD_CACHE[key] = sys
    return sys


@dataclass(frozen=True)
class TypeSubset:
    """A subset I of the simple-root indices {1..n} with its gap data."""

    members: frozenset
    n: int

    @classmethod
    def of(cls, system, members):
        members = frozenset(int(j) for j in members)
        if not members <= set(range(1, system.n + 1)):
            raise ValueError("type subset out of range")
        return cls(members, system.n)

    @property
    def t(self):
        return self.n - len(self.members)

    @property
    def ell(self):
        """The indices outside I, increasing (the paper's ell_1 < ... < ell_t)."""
        return tuple(sorted(set(range(1, self.n + 1)) - self.members))

    def __iter__(self):
        return iter(sorted(self.members))

    def __contains__(self, j):
        return j in self.members

    def __repr__(self):
        return "TypeSubset(%s)" % sorted(self.members)


def all_types(system):
    n = system.n
    out = []
    for mask in range(1 << n):
        members = frozenset(j for j in range(1, n + 1) if mask >> (j - 1) & 1)
        out.append(TypeSubset(members, n))
    return out


def poincare(system):
    """P_Phi(z) = prod over Weyl degrees d of [d](z), as a level-1 q-number."""
    out = QNumber.one()
    for d in system.weyl_degrees:
        out = out * q_int(d)
    return out


def _components(system, members):
    """Connected components of I inside the Dynkin diagram, with types."""
    if not members:
        return []
    edges = _dynkin_edges(system.family, system.n)
    adj = {j: set() for j in members}
    for a, b in edges:
        if a in adj and b in adj:
            adj[a].add(b)
            adj[b].add(a)
    seen = set()
    comps = []
    for start in sorted(members):
        if start in seen:
            continue
        stack, comp = [start], set()
        while stack:
            v = stack.pop()
            if v in comp:
                continue
            comp.add(v)
            stack.extend(adj[v] - comp)
        seen |= comp
        comps.append(frozenset(comp))
    out = []
    n, fam = system.n, system.family
    for comp in comps:
        size = len(comp)
        if fam in ("B", "C") and n in comp:
            out.append(("C", size))
        elif fam == "D" and n - 1 in comp and n in comp:
            out.append(("D", size))
        else:
            out.append(("A", size))
    return out


def _component_poincare(kind, size):
    if kind == "A":
        return q_factorial(size + 1)
    if kind == "C":
        out = QNumber.one()
        for i in range(1, size + 1):
            out = out * q_int(2 * i)
        return out
    # D_m with m >= 2; D_2 = A_1 x A_1 and D_3 = A_3 come out right too.
    out = QNumber.one()
    for i in range(1, size):
        out = out * q_int(2 * i)
    return out * q_int(size)


def poincare_parabolic(system, I):
    """(P_{Phi;I}, its degree), via the exact quotient P_Phi / P_{Phi_I}."""
    if not isinstance(I, TypeSubset):
        I = TypeSubset.of(system, I)
    denom = QNumber.one()
    for kind, size in _components(system, I.members):
        denom = denom * _component_poincare(kind, size)
    total = poincare(system)
    quot = total / denom
    if not quot.is_polynomial():
        raise NonDivisible(
            "P_{%s;%s} is not a polynomial" % (system.name, sorted(I.members)))
    degree = parabolic_degree(system, I)
    got = quot.degree_pair()[0]
    if got != degree:
        raise NonDivisible(
            "degree mismatch for P_{%s;%s}: got %d, expected %d"
            % (system.name, sorted(I.members), got, degree))
    return quot, degree


def parabolic_degree(system, I):
    """#{a in Phi+ : a has a nonzero coefficient outside I}."""
    if not isinstance(I, TypeSubset):
        I = TypeSubset.of(system, I)
    outside = [j - 1 for j in range(1, system.n + 1) if j not in I.members]
    return sum(1 for m in system.positive_roots if any(m[j] for j in outside))


def type_support(system, I):
    """The positive roots not vanishing on type-I points."""
    if not isinstance(I, TypeSubset):
        I = TypeSubset.of(system, I)
    outside = [j - 1 for j in range(1, system.n + 1) if j not in I.members]
    return tuple(m for m in system.positive_roots if any(m[j] for j in outside))


# -- appendix closed forms (verified fast path) ---------------------------------


def _gaps(I, top):
    """The consecutive differences ell_i - ell_{i-1} against a sentinel top."""
    ell = list(I.ell)
    prev, out = 0, []
    for l in ell:
        out.append(l - prev)
        prev = l
    out.append(top - prev)
    return out


def poincare_parabolic_closed(system, I):
    """Appendix-style closed form of P_{Phi;I} (cross-check of the quotient)."""
    if not isinstance(I, TypeSubset):
        I = TypeSubset.of(system, I)
    fam, n = system.family, system.n
    ell = list(I.ell)
    if fam == "A":
        out = q_factorial(n + 1)
        for g in _gaps(I, n + 1):
            out = out / q_factorial(g)
        return out
    if fam in ("B", "C"):
        out = QNumber.one()
        for i in range(1, n + 1):
            out = out * q_int(2 * i)
        lt = ell[-1] if ell else 0
        prev = 0
        for l in ell:
            out = out / q_factorial(l - prev)
            prev = l
        for i in range(1, n - lt + 1):
            out = out / q_int(2 * i)
        return out
    # D family: branch on how I meets the fork {n-1, n}.
    total = poincare(system)
    meets = {n - 1, n} & I.members
    if len(meets) == 2:
        # tail component is D_{n - ell_t} (with ell_t < n - 1)
        lt = ell[-1] if ell else 0
        out = total
        prev = 0
        for l in ell:
            out = out / q_factorial(l - prev)
            prev = l
        m = n - lt
        for i in range(1, m):
            out = out / q_int(2 * i)
        out = out / q_int(m)
        return out
    if len(meets) == 1:
        # tail component is an A-chain through the fork
        out = total
        prev = 0
        chain_ell = [l for l in ell if l < n - 1]
        for l in chain_ell:
            out = out / q_factorial(l - prev)
            prev = l
        out = out / q_factorial(n - prev)
        return out
    # neither n-1 nor n in I: pure A-chains left of the fork
    out = total
    prev = 0
    for l in [l for l in ell if l <= n - 2]:
        out = out / q_factorial(l - prev)
        prev = l
    out = out / q_factorial(n - 1 - prev) / q_factorial(1)
    return out
