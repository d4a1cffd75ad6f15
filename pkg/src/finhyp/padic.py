"""Fixed-precision p-adic arithmetic, Morita's p-adic Gamma function, and
the p-adic hypergeometric sum evaluated along two independent routes.

A PadicNum is p^v times a unit known modulo p^N.  Addition tracks the
worst-case precision of the result; nothing is ever reported beyond what
the inputs support.

Gamma values are computed by the factorial definition: Gamma_p of a
p-adic integer x is (-1)^x' * prod of j < x', p not dividing j, where x'
is the representative of x in [1, p^N].  The cost is O(p^N), so all
arguments needed by one computation are collected first and served from
a single sweep; large sweeps run through a vectorized block product.
The default cost cap is p^N <= 10^7; callers may override it.
"""

import math
from fractions import Fraction

from .cyclo import CycloNum
from .errors import (
    BadPrime,
    BoundExceeded,
    ConductorNotDividing,
    DivisionByZero,
    DoesNotSplit,
    ExponentNotIntegral,
    InternalInconsistency,
    NotPAdicInteger,
    NotPrime,
    ZeroArgument,
    ZeroElement,
)
from .finfield import is_prime, make_field

MAX_PN_DEFAULT = 10**7

_NUMPY_CUTOFF = 1 << 19  # below this, a plain python loop is faster


def _vp(n, p):
    if n == 0:
        raise ValueError("valuation of zero")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


class PadicNum:
    """p^v * (u + O(p^prec)); u == 0 with prec == 0 encodes O(p^v)."""

    __slots__ = ("p", "v", "u", "prec", "exact")

    def __init__(self, p, v, u, prec, exact=False):
        self.p = p
        if exact:
            self.v, self.u, self.prec, self.exact = 0, 0, 0, True
            return
        self.exact = False
        mod = p**prec
        u %= mod if prec > 0 else 1
        if u == 0:
            self.v, self.u, self.prec = v + prec, 0, 0
            return
        w = _vp(u, p)
        self.v = v + w
        self.prec = prec - w
        self.u = (u // p**w) % (p**self.prec)
        if self.u == 0:  # all remaining digits were zero
            self.v, self.u, self.prec = v + prec, 0, 0

    # ----------------------------------------------------------- constructors

    @classmethod
    def exact_zero(cls, p):
        return cls(p, 0, 0, 0, exact=True)

    @classmethod
    def from_int_mod(cls, value, p, prec):
        """An integer known modulo p^prec."""
        return cls(p, 0, value, prec)

    @classmethod
    def from_rational(cls, x, p, prec):
        x = Fraction(x)
        if x == 0:
            return cls.exact_zero(p)
        num, den = x.numerator, x.denominator
        vn = _vp(num, p) if num % p == 0 else 0
        vd = _vp(den, p) if den % p == 0 else 0
        num //= p**vn
        den //= p**vd
        mod = p**prec
        u = num * pow(den, -1, mod) % mod
        return cls(p, vn - vd, u, prec)

    # ------------------------------------------------------------- structure

    @property
    def abs_prec(self):
        """The value is known modulo p to this power."""
        if self.exact:
            return math.inf
        return self.v + self.prec

    def is_exact_zero(self):
        return self.exact

    def valuation_lower_bound(self):
        if self.exact:
            return math.inf
        return self.v

    @property
    def valuation(self):
        """Exact valuation; None when only a lower bound is known."""
        if self.exact or self.u == 0:
            return None
        return self.v

    def is_zero_mod(self, k):
        """Provably divisible by p^k at the tracked precision."""
        if self.exact:
            return True
        if self.u != 0:
            return self.v >= k
        if self.v >= k:
            return True
        raise InternalInconsistency(
            f"need precision O(p^{k}) but only O(p^{self.v}) is known"
        )

    def eq_mod(self, other, k):
        return (self - other).is_zero_mod(k)

    # ------------------------------------------------------------ arithmetic

    def _coerce(self, other):
        if isinstance(other, PadicNum):
            if other.p != self.p:
                raise ValueError("mixed primes")
            return other
        if isinstance(other, (int, Fraction)):
            prec = self.prec if not self.exact else 1
            return PadicNum.from_rational(other, self.p, max(prec, 1))
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.exact:
            return other
        if other.exact:
            return self
        p = self.p
        target = min(self.abs_prec, other.abs_prec)
        vm = min(self.v, other.v)
        k = target - vm
        if k <= 0:
            return PadicNum(p, target, 0, 0)
        mod = p**k
        s = (self.u * p ** (self.v - vm) + other.u * p ** (other.v - vm)) % mod
        return PadicNum(p, vm, s, k)

    __radd__ = __add__

    def __neg__(self):
        if self.exact or self.u == 0:
            return self
        return PadicNum(self.p, self.v, -self.u, self.prec)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.exact or other.exact:
            return PadicNum.exact_zero(self.p)
        if self.u == 0 or other.u == 0:
            # O(p^a) * p^v(u + ...) = O(p^(a + v))
            return PadicNum(self.p, self.v + other.v, 0, 0)
        prec = min(self.prec, other.prec)
        return PadicNum(self.p, self.v + other.v, self.u * other.u, prec)

    __rmul__ = __mul__

    def inverse(self):
        if self.exact or self.u == 0:
            raise DivisionByZero("inverse of a (possible) zero")
        mod = self.p**self.prec
        return PadicNum(self.p, -self.v, pow(self.u, -1, mod), self.prec)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out = PadicNum(self.p, 0, 1, self.prec if not self.exact else 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.exact and other.exact:
            return True
        try:
            return (self - other).is_zero_mod(min(self.abs_prec, other.abs_prec))
        except InternalInconsistency:
            return False

    def __hash__(self):
        raise TypeError("PadicNum carries precision; not hashable")

    # ------------------------------------------------------------------- io

    def centered_lift(self):
        """The integer in (-p^A/2, p^A/2] congruent to the value mod p^A."""
        if self.exact:
            return 0
        if self.u == 0:
            return 0
        if self.v < 0:
            raise ValueError("negative valuation has no integer lift")
        a = self.abs_prec
        mod = self.p**a
        x = self.u * self.p**self.v % mod
        return x - mod if x > mod // 2 else x

    def digits(self):
        """Unit digits base p, least significant first."""
        out = []
        u = self.u
        for _ in range(self.prec):
            u, r = divmod(u, self.p)
            out.append(r)
        return out

    def to_json(self):
        if self.exact:
            return {"p": self.p, "exact_zero": True}
        return {
            "p": self.p,
            "valuation": self.v if self.u else None,
            "min_valuation": self.v,
            "prec": self.prec,
            "digits": self.digits(),
        }

    @staticmethod
    def from_json(obj):
        p = obj["p"]
        if obj.get("exact_zero"):
            return PadicNum.exact_zero(p)
        if not obj["digits"]:
            return PadicNum(p, obj["min_valuation"], 0, 0)
        u = 0
        for d in reversed(obj["digits"]):
            u = u * p + d
        return PadicNum(p, obj["min_valuation"], u, obj["prec"])

    def __repr__(self):
        if self.exact:
            return "0 (exact)"
        if self.u == 0:
            return f"O({self.p}^{self.v})"
        terms = []
        for i, d in enumerate(self.digits()):
            if d:
                e = i + self.v
                if e == 0:
                    terms.append(f"{d}")
                elif e == 1:
                    terms.append(f"{d}*{self.p}")
                else:
                    terms.append(f"{d}*{self.p}^{e}")
        body = " + ".join(terms) if terms else "0"
        return f"{body} + O({self.p}^{self.abs_prec})"


def teichmuller(a, p, prec):
    """The (p-1)-st root of unity in Z_p congruent to a mod p."""
    if isinstance(a, int):
        x = a % p
    else:
        x = a.coeffs[0] % p  # element of F_p
    if x == 0:
        raise ZeroElement("no Teichmuller lift of zero")
    mod = p**prec
    x %= mod
    for _ in range(prec + 1):
        nxt = pow(x, p, mod)
        if nxt == x:
            break
        x = nxt
    return PadicNum(p, 0, x, prec)


# --------------------------------------------------------------- Gamma_p


_gamma_cache = {}


def _range_product_skip_p(lo, hi, p, m):
    """Product of all j in [lo, hi) with p not dividing j, modulo m.

    Long ranges fold blocks into a vector of running products (one
    vectorized mulmod per element) and reduce the vector once at the end.
    Requires m < 2**40 for the 17-bit split to stay inside int64; larger
    moduli fall back to the scalar loop.
    """
    if hi - lo < _NUMPY_CUTOFF or m >= 1 << 40:
        prod = 1
        for j in range(lo, hi):
            if j % p:
                prod = prod * j % m
        return prod
    import numpy as np

    block = 1 << 21
    acc = np.ones(block, dtype=np.int64)
    buf = np.empty(block, dtype=np.int64)
    t1 = np.empty(block, dtype=np.int64)
    t2 = np.empty(block, dtype=np.int64)
    base = np.arange(block, dtype=np.int64)
    for start in range(lo, hi, block):
        stop = min(start + block, hi)
        n = stop - start
        arr = buf[:n]
        np.add(base[:n], start, out=arr)
        arr[(-start) % p::p] = 1
        a, u, v = acc[:n], t1[:n], t2[:n]
        np.right_shift(arr, 17, out=u)
        np.multiply(a, u, out=u)
        np.remainder(u, m, out=u)
        np.left_shift(u, 17, out=u)
        np.bitwise_and(arr, 0x1FFFF, out=v)
        np.multiply(a, v, out=v)
        np.add(u, v, out=u)
        np.remainder(u, m, out=a)
    total = 1
    arr = acc
    while arr.size > 1:
        if arr.size & 1:
            total = total * int(arr[-1]) % m
            arr = arr[:-1]
        a, b = arr[0::2].copy(), arr[1::2]
        hi_ = b >> 17
        lo_ = b & 0x1FFFF
        t = (a * hi_) % m
        arr = ((t << 17) + a * lo_) % m
    return total * int(arr[0]) % m


def _gamma_sweep(p, prec, residues, max_pn):
    """Fill the (p, prec) cache for all requested residues in one pass.

    For odd p each argument is served from the smaller of its own
    representative and the reflected one, via Gamma_p(x) Gamma_p(1-x) =
    (-1)^(x mod p, taken in [1, p]); that halves the typical sweep length.
    """
    cache = _gamma_cache.setdefault((p, prec), {})
    todo = set(residues) - set(cache)
    if not todo:
        return cache
    m = p**prec
    direct = set()
    reflected = {}
    for r in todo:
        rr = (1 - r) % m or m
        if p > 2 and rr < r:
            reflected[r] = rr
            if rr not in cache:
                direct.add(rr)
        else:
            direct.add(r)
    if direct:
        cap = max_pn if max_pn is not None else MAX_PN_DEFAULT
        if max(direct) > cap:
            raise BoundExceeded(
                f"Gamma_p sweep of length {max(direct)} exceeds the cap {cap} "
                f"(p^N = {m}); raise max_pn to allow it"
            )
        prod = 1
        pos = 1
        for x in sorted(direct):
            prod = prod * _range_product_skip_p(pos, x, p, m) % m
            pos = x
            cache[x] = (m - prod) % m if x & 1 else prod
    for r, rr in reflected.items():
        x0 = r % p or p
        sign = -1 if x0 & 1 else 1
        cache[r] = sign * pow(cache[rr], -1, m) % m
    return cache


def _gamma_residue(x, p, prec):
    """Representative in [1, p^N] of a p-adic integer argument."""
    mod = p**prec
    if isinstance(x, PadicNum):
        if x.exact:
            r = 0
        else:
            if x.v < 0:
                raise NotPAdicInteger("argument has negative valuation")
            r = x.u * p**x.v % mod
    else:
        x = Fraction(x)
        if x.denominator % p == 0:
            raise NotPAdicInteger(f"denominator of {x} is divisible by {p}")
        r = x.numerator * pow(x.denominator, -1, mod) % mod
    return r if r else mod


def prefetch_gamma_p(args, p, prec, max_pn=None):
    """Compute Gamma_p for many arguments with one shared sweep."""
    residues = [_gamma_residue(x, p, prec) for x in args]
    _gamma_sweep(p, prec, residues, max_pn)


def gamma_p(x, p, prec, max_pn=None):
    """Morita's p-adic Gamma function modulo p^prec."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    r = _gamma_residue(x, p, prec)
    cache = _gamma_cache.get((p, prec), {})
    if r not in cache:
        _gamma_sweep(p, prec, [r], max_pn)
        cache = _gamma_cache[(p, prec)]
    return PadicNum(p, 0, cache[r], prec)


def _gamma_unit(x, p, prec, max_pn=None):
    """Gamma_p as a raw unit integer mod p^prec (internal fast path)."""
    r = _gamma_residue(x, p, prec)
    cache = _gamma_cache.get((p, prec), {})
    if r not in cache:
        _gamma_sweep(p, prec, [r], max_pn)
        cache = _gamma_cache[(p, prec)]
    return cache[r]


# ------------------------------------------------------------ Gauss sums


class PiExp:
    """A unit of Z_p times pi^e, pi^(p-1) = -p, with e an exact rational."""

    __slots__ = ("p", "prec", "e", "u")

    def __init__(self, p, prec, e, u):
        self.p = p
        self.prec = prec
        self.e = Fraction(e)
        mod = p**prec
        self.u = u % mod
        if self.u % p == 0:
            raise InternalInconsistency("PiExp mantissa must be a unit")

    def __mul__(self, other):
        if not isinstance(other, PiExp) or other.p != self.p:
            return NotImplemented
        prec = min(self.prec, other.prec)
        return PiExp(self.p, prec, self.e + other.e, self.u * other.u)

    def __truediv__(self, other):
        if not isinstance(other, PiExp) or other.p != self.p:
            return NotImplemented
        prec = min(self.prec, other.prec)
        mod = self.p**prec
        return PiExp(self.p, prec, self.e - other.e, self.u * pow(other.u, -1, mod))

    def to_padic(self):
        """Convert using pi^(p-1) = -p; requires an integral power of -p."""
        k = self.e / (self.p - 1)
        if k.denominator != 1:
            raise ExponentNotIntegral(
                f"pi-exponent {self.e} is not an integer multiple of {self.p - 1}"
            )
        k = int(k)
        sign = -1 if k & 1 else 1
        return PadicNum(self.p, k, sign * self.u, self.prec)

    def __repr__(self):
        return f"pi^({self.e}) * ({self.u} mod {self.p}^{self.prec})"


def gauss_sum_padic(p, f, m, prec, max_pn=None):
    """The Gauss sum over F_{p^f} with character exponent m, evaluated
    p-adically: minus the product over the Frobenius orbit of
    pi^((p-1){p^i m/(q-1)}) * Gamma_p({p^i m/(q-1)})."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    q = p**f
    qbar = q - 1
    fracs = [Fraction((p**i * m) % qbar, qbar) for i in range(f)]
    prefetch_gamma_p(fracs, p, prec, max_pn)
    e = (p - 1) * sum(fracs)
    u = 1
    mod = p**prec
    for x in fracs:
        u = u * _gamma_unit(x, p, prec, max_pn) % mod
    return PiExp(p, prec, e, -u)


# ------------------------------------------------- p-adic hypergeometric sum


def _validate_args(params, p, t):
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if params.common_denominator() % p == 0:
        raise BadPrime(f"{p} divides a parameter denominator")
    if isinstance(t, int):
        tt = t % p
    else:
        tt = t.coeffs[0] % p
    if tt == 0:
        raise ZeroArgument("t must be a unit mod p")
    return tt


def _series_total(params, p, prec, unit_terms):
    """Assemble sum(unit_m * (-p)^Lambda(m)) / (1 - p) from unit terms.

    unit_terms maps m to an integer unit mod p^prec.  The p-power bookkeeping
    uses the largest realized drop, so no precision is given away.
    """
    exponents = [params.term_exponent(p, m) for m in range(p - 1)]
    drop = max(0, max(-lam for lam in exponents))
    mod = p**prec
    s = 0
    for m, lam in enumerate(exponents):
        term = unit_terms[m] * pow(p, drop + lam, mod) % mod
        if lam & 1:
            term = mod - term
        s = (s + term) % mod
    out = PadicNum.from_int_mod(s, p, prec)
    inv = PadicNum(p, 0, pow(1 - p, -1, mod), prec)
    return out * inv * PadicNum(p, -drop, 1, prec)


def padic_sum_direct(params, p, t, prec, max_pn=None):
    """The p-adic hypergeometric sum from its Gamma-quotient series."""
    tt = _validate_args(params, p, t)
    mod = p**prec
    args = []
    for m in range(p - 1):
        x = Fraction(m, p - 1)
        for a in params.alpha:
            args.append((a + x) % 1)
        for b in params.beta:
            args.append((-b - x) % 1)
    prefetch_gamma_p(args, p, prec, max_pn)

    den = 1
    for a in params.alpha:
        den = den * _gamma_unit(a % 1, p, prec, max_pn) % mod
    for b in params.beta:
        den = den * _gamma_unit((-b) % 1, p, prec, max_pn) % mod
    den_inv = pow(den, -1, mod)

    a0 = (tt if params.d % 2 == 0 else (-tt)) % p
    tau_inv = pow(teichmuller(a0, p, prec).u, -1, mod)

    unit_terms = []
    omega = 1
    for m in range(p - 1):
        x = Fraction(m, p - 1)
        u = den_inv * omega % mod
        for a in params.alpha:
            u = u * _gamma_unit((a + x) % 1, p, prec, max_pn) % mod
        for b in params.beta:
            u = u * _gamma_unit((-b - x) % 1, p, prec, max_pn) % mod
        unit_terms.append(u)
        omega = omega * tau_inv % mod
    return _series_total(params, p, prec, unit_terms)


def padic_sum_via_orbits(params, p, t, prec, max_pn=None):
    """The same sum assembled from Gauss sums over the orbit fields.

    The pi-exponent of every series coefficient must cancel to
    (p-1) * Lambda(m); any other outcome is raised loudly.
    """
    tt = _validate_args(params, p, t)
    if not params.splits_at(p):
        raise DoesNotSplit(f"multiplication by {p} does not fix the parameters")
    alpha_orbits, beta_orbits = params.p_orbits(p)
    mod = p**prec

    specs = []
    for o in alpha_orbits:
        q_i = p**o.length
        specs.append((o.length, int(o.rep * (q_i - 1)), (q_i - 1) // (p - 1), 1))
    for o in beta_orbits:
        q_i = p**o.length
        specs.append((o.length, int(o.rep * (q_i - 1)), (q_i - 1) // (p - 1), -1))

    fracs = []
    for m in range(p - 1):
        for ln, base_e, step, sgn in specs:
            qbar_i = p**ln - 1
            for i in range(ln):
                fracs.append(
                    Fraction((p**i * sgn * (base_e + step * m)) % qbar_i, qbar_i)
                )
    prefetch_gamma_p(fracs, p, prec, max_pn)

    den = None
    for ln, base_e, step, sgn in specs:
        g = gauss_sum_padic(p, ln, sgn * base_e, prec, max_pn)
        den = g if den is None else den * g

    a0 = (tt if params.d % 2 == 0 else (-tt)) % p
    tau_inv = pow(teichmuller(a0, p, prec).u, -1, mod)

    unit_terms = []
    omega = 1
    for m in range(p - 1):
        num = None
        for ln, base_e, step, sgn in specs:
            g = gauss_sum_padic(p, ln, sgn * (base_e + step * m), prec, max_pn)
            num = g if num is None else num * g
        coeff = num / den
        lam = params.term_exponent(p, m)
        if coeff.e != (p - 1) * lam:
            if (coeff.e / (p - 1)).denominator != 1:
                raise ExponentNotIntegral(
                    f"coefficient pi-exponent {coeff.e} at m={m}"
                )
            raise InternalInconsistency(
                f"pi-exponent {coeff.e} != (p-1)*Lambda = {(p - 1) * lam} at m={m}"
            )
        unit_terms.append(coeff.u * omega % mod)
        omega = omega * tau_inv % mod
    return _series_total(params, p, prec, unit_terms)


# ------------------------------------------------------------- embeddings


def embed_cyclotomic(value, p, prec, generator=None):
    """Image of a Q(zeta_M) element in Z_p, M | p-1, sending the root of
    unity attached to the field generator g to teichmuller(g)^(-1).

    Coefficients may carry p-powers in their denominators that cancel in
    the full combination; guard digits keep the result known to at least
    p^prec times the value's own p-power denominator.
    """
    if not isinstance(value, CycloNum):
        raise TypeError("expected a CycloNum")
    m = value.conductor
    if (p - 1) % m != 0:
        raise ConductorNotDividing(f"conductor {m} does not divide {p - 1}")
    if generator is None:
        generator = make_field(p).generator.to_int()
    g = generator if isinstance(generator, int) else generator.to_int()
    guard = 0
    for c in value.coeffs:
        den = c.denominator
        if den % p == 0:
            guard = max(guard, _vp(den, p))
    work = prec + guard
    tau = teichmuller(g, p, work)
    img = (tau ** ((p - 1) // m)).inverse()
    acc = PadicNum.exact_zero(p)
    for c in reversed(value.coeffs):
        acc = acc * img + PadicNum.from_rational(c, p, work)
    return acc
