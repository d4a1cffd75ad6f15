"""Multiplicative and additive characters, on fields and on semisimple
algebras, with their exact Gauss sums.

A character is an exponent relative to the field's fixed generator, so
conjugating or twisting a character is integer arithmetic on exponents.
Gauss sums are assembled exactly: every summand is a root of unity, so we
tally exponents first and convert the tally to a cyclotomic number once.
"""

from dataclasses import dataclass
from functools import lru_cache
from math import lcm

from .cyclo import CycloNum, root_of_unity
from .errors import InternalInconsistency, NotUnit, ZeroElement


@dataclass(frozen=True)
class MultChar:
    """chi(g^j) = zeta_(q-1)^(e*j) on the units of a fixed field."""

    field: object
    e: int

    def __post_init__(self):
        object.__setattr__(self, "e", self.e % (self.field.q - 1))

    @property
    def is_trivial(self):
        return self.e == 0

    def eval(self, x):
        x = self.field.elem(x)
        if x.is_zero():
            raise ZeroElement("character evaluated at zero")
        qbar = self.field.q - 1
        if qbar == 1:
            return CycloNum.one(1)
        return root_of_unity(qbar, self.e * self.field.dlog(x))

    def conj(self):
        return MultChar(self.field, -self.e)

    def __mul__(self, other):
        if other.field is not self.field:
            raise ValueError("characters on different fields")
        return MultChar(self.field, self.e + other.e)

    def __pow__(self, k):
        return MultChar(self.field, self.e * k)


def add_char(field, x, a=1):
    """zeta_p^(a * Tr(x)) with Tr the absolute trace."""
    x = field.elem(x)
    if field.p == 1:
        raise ValueError("characteristic must be a prime")
    return root_of_unity(field.p, (a * field.trace_int(x)) % field.p)


def gauss_sum(chi, a=1):
    """Exact Gauss sum of chi against the a-twisted trace character."""
    return _gauss_table(chi.field, a % chi.field.p)[chi.e]


@lru_cache(maxsize=None)
def _gauss_table(field, a):
    """All Gauss sums g(m), m = 0..q-2, for one field and twist."""
    p, qbar = field.p, field.q - 1
    n = p * qbar
    table = []
    for m in range(qbar):
        weights = {}
        for j in range(qbar):
            # zeta_(q-1)^(m j) * zeta_p^(a tr(g^j)) as a power of zeta_n
            c = ((m * j % qbar) * p + (a * field.trace_of_unit(j) % p) * qbar) % n
            weights[c] = weights.get(c, 0) + 1
        table.append(CycloNum.from_powers(n, weights))
    return table


# --------------------------------------------------------------- algebras


class SemisimpleAlgebra:
    """A direct sum of field extensions of a common base field."""

    def __init__(self, base, components):
        self.base = base
        self.components = tuple(components)
        if not self.components:
            raise ValueError("need at least one component")
        for c in self.components:
            if c.p != base.p:
                raise ValueError("mixed characteristics")
            if c.f % base.f != 0:
                raise ValueError("component is not an extension of the base")
        self.degrees = tuple(c.f // base.f for c in self.components)
        self.dim = sum(self.degrees)
        # norm_to(g_i^j, base) = base_gen^(j * factor_i)
        self._norm_factors = tuple(
            c.norm_unit_dlog(base.f) if c is not base else 1
            for c in self.components
        )

    def elem(self, values):
        parts = tuple(c.elem(v) for c, v in zip(self.components, values))
        if len(parts) != len(self.components):
            raise ValueError("component count mismatch")
        return AlgebraElem(self, parts)

    def one(self):
        return AlgebraElem(self, tuple(c.one() for c in self.components))

    def minus_one(self):
        return AlgebraElem(self, tuple(-c.one() for c in self.components))

    def unit_count(self):
        n = 1
        for c in self.components:
            n *= c.q - 1
        return n

    def units(self):
        """All units, as dlog tuples (internal fast iteration order)."""
        from itertools import product

        return product(*(range(c.q - 1) for c in self.components))

    def unit_elem(self, dlogs):
        return AlgebraElem(
            self, tuple(c.unit(j) for c, j in zip(self.components, dlogs))
        )

    def norm_dlog(self, dlogs):
        """dlog (in the base field) of the norm-to-base of a unit dlog tuple."""
        qbar = self.base.q - 1
        return sum(j * f for j, f in zip(dlogs, self._norm_factors)) % qbar

    def trace_int(self, dlogs):
        """Absolute trace (an integer mod p) of a unit dlog tuple."""
        return (
            sum(c.trace_of_unit(j) for c, j in zip(self.components, dlogs))
            % self.base.p
        )

    def __repr__(self):
        comps = " + ".join(repr(c) for c in self.components)
        return f"[{comps} over {self.base!r}]"


class AlgebraElem:
    """An element of a semisimple algebra, one field element per component."""

    __slots__ = ("algebra", "parts")

    def __init__(self, algebra, parts):
        self.algebra = algebra
        self.parts = parts

    def is_unit(self):
        return all(not x.is_zero() for x in self.parts)

    def __eq__(self, other):
        return (
            isinstance(other, AlgebraElem)
            and self.algebra is other.algebra
            and self.parts == other.parts
        )

    def __repr__(self):
        return "(" + ", ".join(repr(x) for x in self.parts) + ")"


@dataclass(frozen=True)
class AlgebraChar:
    """A multiplicative character of an algebra, one field character per component."""

    algebra: SemisimpleAlgebra
    chars: tuple

    def __post_init__(self):
        if len(self.chars) != len(self.algebra.components):
            raise ValueError("one character per component required")
        for chi, comp in zip(self.chars, self.algebra.components):
            if chi.field is not comp:
                raise ValueError("character field does not match component")

    @classmethod
    def from_exponents(cls, algebra, exponents):
        return cls(
            algebra,
            tuple(MultChar(c, e) for c, e in zip(algebra.components, exponents)),
        )

    @property
    def exponents(self):
        return tuple(chi.e for chi in self.chars)

    def conj(self):
        return AlgebraChar(self.algebra, tuple(chi.conj() for chi in self.chars))

    def power(self, k):
        return AlgebraChar(self.algebra, tuple(chi**k for chi in self.chars))

    def twist_by_norm_power(self, m):
        """The character x -> chi(x) * omega(N(x))^m, omega the base generator
        character; on each component this shifts the exponent by
        m * norm_factor * (q_i - 1)/(q - 1)."""
        alg = self.algebra
        qbar = alg.base.q - 1
        shifted = []
        for chi, comp, nf in zip(self.chars, alg.components, alg._norm_factors):
            shift = m * nf * ((comp.q - 1) // qbar)
            shifted.append(MultChar(comp, chi.e + shift))
        return AlgebraChar(alg, tuple(shifted))

    def eval(self, x):
        if not isinstance(x, AlgebraElem) or x.algebra is not self.algebra:
            raise ValueError("element of the wrong algebra")
        if not x.is_unit():
            raise NotUnit("character evaluated off the unit group")
        out = CycloNum.one(1)
        for chi, part in zip(self.chars, x.parts):
            out = out * chi.eval(part)
        return out


def algebra_trace(x):
    """Absolute trace of an algebra element, as an element of F_p."""
    from .finfield import make_field

    fp = make_field(x.algebra.base.p)
    total = 0
    for comp, part in zip(x.algebra.components, x.parts):
        total += comp.trace_int(part)
    return fp.elem([total % fp.p])


def algebra_norm_to_base(x):
    """Product of the component norms down to the base field."""
    base = x.algebra.base
    out = base.one()
    for comp, part in zip(x.algebra.components, x.parts):
        out = out * (part if comp is base else comp.norm_to(part, base.f))
    return out


def algebra_norm_absolute(x):
    """Norm of the multiplication-by-x map over F_p, as an element of F_p."""
    base = x.algebra.base
    n = algebra_norm_to_base(x)
    return base.norm_to(n, 1) if base.f > 1 else n


def algebra_char_eval(chi_a, x):
    return chi_a.eval(x)


def algebra_gauss_sum(chi_a, a=1):
    """Gauss sum of an algebra character, via the component product."""
    out = CycloNum.one(1)
    for chi in chi_a.chars:
        out = out * gauss_sum(chi, a)
    return out


def algebra_gauss_sum_bruteforce(chi_a, a=1):
    """Gauss sum summed directly over every unit; cross-check for small algebras."""
    alg = chi_a.algebra
    p = alg.base.p
    orders = [c.q - 1 for c in alg.components]
    big = lcm(*orders) if orders else 1
    n = p * big
    weights = {}
    exps = chi_a.exponents
    for dl in alg.units():
        tr = (a * alg.trace_int(dl)) % p
        mult = sum(e * j * (big // o) for e, j, o in zip(exps, dl, orders)) % big
        c = (mult * p + tr * big) % n
        weights[c] = weights.get(c, 0) + 1
    return CycloNum.from_powers(n, weights)


def gauss_norm_exponent(chi_a):
    """The f with |g_A(chi)|^2 = q^f, verified exactly on the computed sum."""
    g = algebra_gauss_sum(chi_a)
    f = sum(
        deg
        for deg, chi in zip(chi_a.algebra.degrees, chi_a.chars)
        if not chi.is_trivial
    )
    q = chi_a.algebra.base.q
    if g * g.conj() != q**f:
        raise InternalInconsistency("|g|^2 is not the predicted power of q")
    return f


def invert_gauss_product(g, q, f):
    """Exact inverse of a product of Gauss sums with known |.|^2 = q^f.

    The candidate conj(g)/q^f is verified by multiplication; a failure
    falls back to the generic field inverse.
    """
    from fractions import Fraction

    cand = g.conj() * Fraction(1, q**f)
    if g * cand == 1:
        return cand
    return g.inverse()
