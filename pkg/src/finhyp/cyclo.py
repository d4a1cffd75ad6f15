"""Exact arithmetic in cyclotomic fields Q(zeta_N).

An element is stored as a vector of rationals over the power basis
1, z, ..., z^(phi(N)-1), z = exp(2*pi*i/N), reduced modulo the N-th
cyclotomic polynomial.  The reduced representation is unique, so equality,
rationality and subfield membership are exact coefficient checks; no
floating point is involved anywhere except the diagnostic to_float.

Binary operations on elements with different conductors silently promote
both sides into Q(zeta_lcm).
"""

from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm

from .errors import DivisionByZero, InternalInconsistency, NotCoprime, NotDivisor

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _poly_divide_exact(num, den):
    """Exact division of integer polynomials (lists, low degree first)."""
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1]
        q, r = divmod(c, den[-1])
        if r:
            raise InternalInconsistency("non-exact cyclotomic division")
        out[i] = q
        for j, dj in enumerate(den):
            num[i + j] -= q * dj
    if any(num[: len(den) - 1]):
        raise InternalInconsistency("non-exact cyclotomic division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n):
    """Coefficients of Phi_n, low degree first, as a tuple of ints."""
    if n == 1:
        return (-1, 1)
    poly = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divide_exact(poly, cyclotomic_polynomial(d))
    return tuple(poly)


class _Structure:
    """Per-conductor tables: Phi_N and power-basis rows for z^j."""

    def __init__(self, n):
        self.n = n
        phi_poly = cyclotomic_polynomial(n)
        self.degree = len(phi_poly) - 1
        d = self.degree
        # pow_rows[j] = integer coordinates of z^j for 0 <= j < max(n, 2d-1)
        rows = [[0] * d for _ in range(max(n, 2 * d - 1))]
        for j in range(min(d, len(rows))):
            rows[j][j] = 1
        top = [-c for c in phi_poly[:-1]]  # z^d in the basis
        for j in range(d, len(rows)):
            prev = rows[j - 1]
            shifted = [0] + prev[:-1]
            lead = prev[-1]
            if lead:
                for i in range(d):
                    shifted[i] += lead * top[i]
            rows[j] = shifted
        self.pow_rows = [tuple(r) for r in rows]


@lru_cache(maxsize=None)
def _structure(n):
    return _Structure(n)


class CycloNum:
    """An element of Q(zeta_N) in reduced power-basis form."""

    __slots__ = ("conductor", "coeffs")

    def __init__(self, conductor, coeffs):
        st = _structure(conductor)
        c = [Fraction(x) for x in coeffs]
        if len(c) != st.degree:
            raise ValueError(
                f"need {st.degree} coefficients for conductor {conductor}, got {len(c)}"
            )
        self.conductor = conductor
        self.coeffs = tuple(c)

    # ---------------------------------------------------------------- basics

    @staticmethod
    def zero(conductor=1):
        return CycloNum(conductor, [0] * _structure(conductor).degree)

    @staticmethod
    def one(conductor=1):
        return CycloNum.from_rational(1, conductor)

    @staticmethod
    def from_rational(x, conductor=1):
        c = [_ZERO] * _structure(conductor).degree
        c[0] = Fraction(x)
        return CycloNum(conductor, c)

    @staticmethod
    def from_powers(conductor, weights):
        """Sum of weights[j] * z^j over all j, weights indexed mod N.

        Accepts a full list of length N or a {exponent: weight} mapping.
        This is the workhorse for assembling character sums exactly.
        """
        st = _structure(conductor)
        acc = [_ZERO] * st.degree
        items = weights.items() if hasattr(weights, "items") else enumerate(weights)
        for j, w in items:
            if not w:
                continue
            row = st.pow_rows[j % conductor]
            for i in range(st.degree):
                if row[i]:
                    acc[i] += w * row[i]
        return CycloNum(conductor, acc)

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def as_rational(self):
        """The element as a Fraction, or None when it is irrational."""
        if any(self.coeffs[1:]):
            return None
        return self.coeffs[0]

    # ------------------------------------------------------------- promotion

    def embed(self, conductor):
        """Image in Q(zeta_M) for a multiple M of the conductor."""
        if conductor == self.conductor:
            return self
        if conductor % self.conductor != 0:
            raise NotDivisor(f"{self.conductor} does not divide {conductor}")
        st = _structure(conductor)
        step = conductor // self.conductor
        acc = [_ZERO] * st.degree
        for j, c in enumerate(self.coeffs):
            if not c:
                continue
            row = st.pow_rows[(j * step) % conductor]
            for i in range(st.degree):
                if row[i]:
                    acc[i] += c * row[i]
        return CycloNum(conductor, acc)

    def _common(self, other):
        if isinstance(other, (int, Fraction)):
            other = CycloNum.from_rational(other, 1)
        if not isinstance(other, CycloNum):
            return None, None
        if self.conductor == other.conductor:
            return self, other
        m = lcm(self.conductor, other.conductor)
        return self.embed(m), other.embed(m)

    # ------------------------------------------------------------ arithmetic

    def __add__(self, other):
        a, b = self._common(other)
        if a is None:
            return NotImplemented
        return CycloNum(a.conductor, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CycloNum(self.conductor, [-x for x in self.coeffs])

    def __sub__(self, other):
        a, b = self._common(other)
        if a is None:
            return NotImplemented
        return CycloNum(a.conductor, [x - y for x, y in zip(a.coeffs, b.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycloNum(self.conductor, [c * other for c in self.coeffs])
        if not isinstance(other, CycloNum):
            return NotImplemented
        a, b = self._common(other)
        st = _structure(a.conductor)
        d = st.degree
        conv = [_ZERO] * (2 * d - 1)
        bc = b.coeffs
        for i, av in enumerate(a.coeffs):
            if not av:
                continue
            for j, bv in enumerate(bc):
                if bv:
                    conv[i + j] += av * bv
        acc = list(conv[:d])
        for j in range(d, 2 * d - 1):
            w = conv[j]
            if not w:
                continue
            row = st.pow_rows[j]
            for i in range(d):
                if row[i]:
                    acc[i] += w * row[i]
        return CycloNum(a.conductor, acc)

    __rmul__ = __mul__

    def inverse(self):
        """Exact inverse, computed from the product of Galois conjugates."""
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        n = self.conductor
        if n <= 2 or not any(self.coeffs[1:]):
            r = self.as_rational()
            if r is not None:
                return CycloNum.from_rational(1 / r, n)
        cof = CycloNum.one(n)
        for k in range(2, n):
            if gcd(k, n) == 1:
                cof = cof * self.galois(k)
        norm = (self * cof).as_rational()
        if norm is None or norm == 0:
            raise InternalInconsistency("field norm must be a nonzero rational")
        return cof * (1 / norm)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise DivisionByZero("division by zero")
            return self * (_ONE / Fraction(other))
        if not isinstance(other, CycloNum):
            return NotImplemented
        return self * other.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out = CycloNum.one(self.conductor)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            r = self.as_rational()
            return r is not None and r == other
        if not isinstance(other, CycloNum):
            return NotImplemented
        a, b = self._common(other)
        return a.coeffs == b.coeffs

    def __hash__(self):
        r = self.as_rational()
        if r is not None:
            return hash(r)
        return hash((self.conductor, self.coeffs))

    # ---------------------------------------------------------------- galois

    def galois(self, k):
        """The automorphism z -> z^k, k coprime to the conductor."""
        n = self.conductor
        if gcd(k, n) != 1:
            raise NotCoprime(f"{k} is not coprime to {n}")
        st = _structure(n)
        acc = [_ZERO] * st.degree
        for j, c in enumerate(self.coeffs):
            if not c:
                continue
            row = st.pow_rows[(j * k) % n]
            for i in range(st.degree):
                if row[i]:
                    acc[i] += c * row[i]
        return CycloNum(n, acc)

    def conj(self):
        """Complex conjugation, z -> z^(-1)."""
        if self.conductor <= 2:
            return self
        return self.galois(self.conductor - 1)

    def is_in_subfield(self, conductor):
        """Re-express over Q(zeta_M) for M | N, or None if not possible.

        Solves the linear system expressing the element in the embedded
        power basis of the subfield; solvability is exactly membership.
        """
        n = self.conductor
        if n % conductor != 0:
            raise NotDivisor(f"{conductor} does not divide {n}")
        if conductor == n:
            return self
        sub = _structure(conductor)
        big = _structure(n)
        step = n // conductor
        cols = []
        for j in range(sub.degree):
            cols.append(big.pow_rows[(j * step) % n])
        # Gaussian elimination on the (big.degree x sub.degree) system.
        rows = big.degree
        mat = [[Fraction(cols[c][r]) for c in range(sub.degree)] + [self.coeffs[r]]
               for r in range(rows)]
        piv_cols = []
        r = 0
        for c in range(sub.degree):
            piv = next((i for i in range(r, rows) if mat[i][c] != 0), None)
            if piv is None:
                continue
            mat[r], mat[piv] = mat[piv], mat[r]
            inv = _ONE / mat[r][c]
            mat[r] = [v * inv for v in mat[r]]
            for i in range(rows):
                if i != r and mat[i][c] != 0:
                    f = mat[i][c]
                    mat[i] = [v - f * w for v, w in zip(mat[i], mat[r])]
            piv_cols.append(c)
            r += 1
        if any(row[-1] != 0 for row in mat[r:]):
            return None
        sol = [_ZERO] * sub.degree
        for i, c in enumerate(piv_cols):
            sol[c] = mat[i][-1]
        return CycloNum(conductor, sol)

    # ------------------------------------------------------------------- io

    def to_float(self):
        """Numerical approximation; diagnostics only, never for assertions."""
        import cmath

        z = cmath.exp(2j * cmath.pi / self.conductor)
        acc = 0j
        for j, c in enumerate(self.coeffs):
            if c:
                acc += float(c) * z**j
        return acc

    def to_json(self):
        return {
            "conductor": self.conductor,
            "coeffs": [str(c) for c in self.coeffs],
        }

    @staticmethod
    def from_json(obj):
        return CycloNum(obj["conductor"], [Fraction(s) for s in obj["coeffs"]])

    def __repr__(self):
        r = self.as_rational()
        if r is not None:
            return str(r)
        parts = []
        for j, c in enumerate(self.coeffs):
            if not c:
                continue
            if j == 0:
                parts.append(str(c))
            elif c == 1:
                parts.append(f"z{self.conductor}^{j}")
            else:
                parts.append(f"({c})*z{self.conductor}^{j}")
        return " + ".join(parts) if parts else "0"


def root_of_unity(conductor, k=1):
    """zeta_N^k as a CycloNum."""
    st = _structure(conductor)
    return CycloNum(conductor, list(st.pow_rows[k % conductor]))
