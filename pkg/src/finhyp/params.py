"""Hypergeometric parameter multisets and their combinatorics.

Parameters are two disjoint (mod Z) multisets of rationals of equal
length.  Entries are normalized once, at construction, to their
representatives in [0, 1); every floor and fractional-part formula in the
package is stated for these representatives.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import floor, gcd, lcm

from .cyclo import CycloNum, root_of_unity
from .errors import (
    DoesNotSplit,
    InternalInconsistency,
    LengthMismatch,
    NotCoprime,
    NotDisjointModZ,
)


def parse_fraction_list(text):
    """Parse "1/5,2/5,3/5" (integers allowed) into a list of Fractions."""
    items = [s.strip() for s in text.split(",") if s.strip()]
    if not items:
        raise LengthMismatch("empty parameter list")
    return [Fraction(s) for s in items]


@dataclass(frozen=True)
class POrbit:
    """One orbit of multiplication by p on a parameter multiset."""

    rep: Fraction
    values: tuple

    @property
    def length(self):
        return len(self.values)


class HGParams:
    """A pair of parameter multisets, stored sorted with entries in [0, 1)."""

    __slots__ = ("alpha", "beta", "d")

    def __init__(self, alpha, beta):
        a = tuple(sorted(Fraction(x) % 1 for x in alpha))
        b = tuple(sorted(Fraction(x) % 1 for x in beta))
        if not a or len(a) != len(b):
            raise LengthMismatch(
                f"need equal nonempty lists, got {len(a)} and {len(b)}"
            )
        common = set(a) & set(b)
        if common:
            raise NotDisjointModZ(f"shared values mod Z: {sorted(common)}")
        self.alpha = a
        self.beta = b
        self.d = len(a)

    @classmethod
    def parse(cls, alpha_text, beta_text):
        return cls(parse_fraction_list(alpha_text), parse_fraction_list(beta_text))

    def __eq__(self, other):
        if not isinstance(other, HGParams):
            return NotImplemented
        return self.alpha == other.alpha and self.beta == other.beta

    def __hash__(self):
        return hash((self.alpha, self.beta))

    def __repr__(self):
        return f"HGParams({list(self.alpha)}, {list(self.beta)})"

    # ---------------------------------------------------------- combinatorics

    def common_denominator(self):
        return lcm(*(x.denominator for x in self.alpha + self.beta))

    def conjugate(self, k):
        """The parameter pair (k*alpha, k*beta) mod Z."""
        dd = self.common_denominator()
        if gcd(k, dd) != 1:
            raise NotCoprime(f"{k} shares a factor with {dd}")
        return HGParams([k * x for x in self.alpha], [k * x for x in self.beta])

    def stabilizer(self):
        """Sorted residues k mod D with (k*alpha, k*beta) = (alpha, beta)."""
        dd = self.common_denominator()
        out = []
        for k in range(1, dd + 1):
            if gcd(k, dd) == 1 and self.conjugate(k) == self:
                out.append(k % dd if dd > 1 else 1)
        return tuple(sorted(set(out)))

    def is_defined_over_q(self):
        dd = self.common_denominator()
        full = tuple(k for k in range(1, dd + 1) if gcd(k, dd) == 1)
        if dd == 1:
            full = (1,)
        return self.stabilizer() == tuple(sorted(k % dd if dd > 1 else 1 for k in full))

    def splits_at(self, p):
        """Whether multiplication by p fixes both multisets mod Z."""
        dd = self.common_denominator()
        if gcd(p, dd) != 1:
            return False
        return self.conjugate(p) == self

    def term_exponent(self, p, m):
        """Integer exponent of -p carried by the m-th series term."""
        x = Fraction(m, p - 1)
        total = Fraction(0)
        for a in self.alpha:
            total += -floor(a + x) + floor(a)
        for b in self.beta:
            total += -floor(-b - x) + floor(-b)
        if total.denominator != 1:
            raise InternalInconsistency("term exponent must be an integer")
        return int(total)

    def _drop(self, x):
        """Step function whose maximum over [0, 1] is the denominator exponent."""
        s = 0
        for a in self.alpha:
            s += floor(x + a) - floor(a)
        for b in self.beta:
            s += floor(-x - b) - floor(-b)
        return s

    def denominator_exponent(self):
        """Largest power of p that can appear in a denominator of the p-adic sum."""
        cands = {Fraction(0), Fraction(1)}
        for a in self.alpha:
            cands.add((-a) % 1)
        for b in self.beta:
            cands.add((-b) % 1)
        pts = sorted(cands)
        xs = list(pts)
        for u, v in zip(pts, pts[1:]):
            xs.append((u + v) / 2)
        return max(self._drop(x) for x in xs)

    def global_denominator_exponent(self):
        """Max denominator exponent over all conjugate parameter pairs."""
        dd = self.common_denominator()
        best = 0
        for k in range(1, dd + 1):
            if gcd(k, dd) == 1:
                best = max(best, self.conjugate(k).denominator_exponent())
        return best

    def p_orbits(self, p):
        """Orbit decomposition of both multisets under x -> p*x mod Z.

        Returns (alpha_orbits, beta_orbits); a value of multiplicity mu
        yields mu copies of its orbit.  The representative is the smallest
        value in the orbit.
        """
        if not self.splits_at(p):
            raise DoesNotSplit(f"p = {p} does not permute the parameters")
        return self._orbits_of(self.alpha, p), self._orbits_of(self.beta, p)

    @staticmethod
    def _orbits_of(values, p):
        from collections import Counter

        counts = Counter(values)
        seen = set()
        orbits = []
        for v in sorted(counts):
            if v in seen:
                continue
            orbit = [v]
            cur = (p * v) % 1
            while cur != v:
                orbit.append(cur)
                cur = (p * cur) % 1
            mult = {counts[x] for x in orbit}
            if len(mult) != 1:
                raise DoesNotSplit("multiplicity is not constant on an orbit")
            seen.update(orbit)
            rep = min(orbit)
            for _ in range(counts[v]):
                orbits.append(POrbit(rep, tuple(orbit)))
        return orbits

    def defining_polynomials(self):
        """Coefficient lists (low degree first) of prod(x - e^(2 pi i a)).

        Coefficients are exact elements of Q(zeta_D).  When the pair is
        defined over Q they are verified to be rational integers.
        """
        dd = self.common_denominator()

        def expand(vals):
            coeffs = [CycloNum.one(dd)]
            for v in vals:
                r = root_of_unity(dd, int(v * dd))
                nxt = [CycloNum.zero(dd)] * (len(coeffs) + 1)
                for i, c in enumerate(coeffs):
                    nxt[i + 1] = nxt[i + 1] + c
                    nxt[i] = nxt[i] - c * r
                coeffs = nxt
            return coeffs

        pa, pb = expand(self.alpha), expand(self.beta)
        if self.is_defined_over_q():
            for c in pa + pb:
                r = c.as_rational()
                if r is None or r.denominator != 1:
                    raise InternalInconsistency(
                        "polynomials of a Q-stable pair must have integer coefficients"
                    )
        return pa, pb
