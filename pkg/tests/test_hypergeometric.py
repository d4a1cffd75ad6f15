import random
from fractions import Fraction

import pytest

from finhyp.charsums import AlgebraChar, MultChar, SemisimpleAlgebra, add_char
from finhyp.cyclo import CycloNum
from finhyp.errors import AssumptionFails, ZeroArgument
from finhyp.finfield import make_field
from finhyp.hypergeometric import (
    HGAlgebraInstance,
    algebra_sum_direct,
    algebra_sum_fourier,
    classic_sum,
    greene_factor,
    katz_unnormalized,
    orbit_instance,
    split_instance,
)
from finhyp.params import HGParams

F = Fraction


def _gauss_bruteforce(field, e):
    """Gauss sum by direct summation; slow, independent of the table path."""
    total = CycloNum.zero(1)
    chi = MultChar(field, e)
    for j in range(field.q - 1):
        x = field.unit(j)
        total = total + chi.eval(x) * add_char(field, x)
    return total


def _classic_bruteforce(params, q, t):
    """Second, unoptimized evaluation of the series; generic division only."""
    field = make_field(q)
    qbar = q - 1
    total = CycloNum.zero(1)
    omega = MultChar(field, 1)
    arg = (-field.one()) ** params.d * field.elem(t)
    for m in range(qbar):
        term = CycloNum.one(1)
        for a in params.alpha:
            e = int(qbar * a)
            term = term * _gauss_bruteforce(field, m + e)
            term = term * _gauss_bruteforce(field, e).inverse()
        for b in params.beta:
            e = int(qbar * b)
            term = term * _gauss_bruteforce(field, -m - e)
            term = term * _gauss_bruteforce(field, -e).inverse()
        total = total + term * (omega.eval(arg) ** m)
    return total * Fraction(1, 1 - q)


def test_classic_against_bruteforce():
    cases = [
        (HGParams([F(1, 2)], [0]), 5),
        (HGParams([F(1, 4), F(3, 4)], [0, F(1, 2)]), 5),
        (HGParams([F(1, 6)], [F(1, 2)]), 7),
        (HGParams([F(1, 3), F(2, 3)], [F(1, 2), F(1, 2)]), 7),
    ]
    for params, q in cases:
        for t in range(1, q):
            assert classic_sum(params, q, t) == _classic_bruteforce(params, q, t), (
                params, q, t,
            )


def test_classic_rejects_bad_inputs():
    params = HGParams([F(1, 2)], [0])
    with pytest.raises(ZeroArgument):
        classic_sum(params, 5, 0)
    with pytest.raises(AssumptionFails):
        classic_sum(HGParams([F(1, 5)], [0]), 7, 1)


def test_generator_independence():
    params = HGParams([F(1, 2), F(1, 2)], [0, 0])
    field = make_field(13)
    alt = field.nth_generator(1)
    for t in (1, 2, 5, 12):
        assert classic_sum(params, 13, t) == classic_sum(params, 13, t, generator=alt)


def test_rational_when_defined_over_q():
    params = HGParams([F(1, 2), F(1, 2)], [0, 0])
    for t in range(1, 13):
        v = classic_sum(params, 13, t)
        assert v.as_rational() is not None


def test_split_instance_structure():
    params = HGParams([F(1, 5), F(2, 5), F(3, 5), F(4, 5)], [0, 0, 0, 0])
    inst = split_instance(params, 11)
    assert len(inst.A.components) == params.d
    assert inst.chiA.exponents == (2, 4, 6, 8)
    assert inst.chiB.exponents == (0, 0, 0, 0)
    from finhyp.charsums import algebra_norm_to_base

    assert algebra_norm_to_base(inst.B.minus_one()) == inst.base.elem((-1) ** params.d)


def test_split_recovers_classic():
    cases = [
        (HGParams([F(1, 6), F(5, 6)], [0, F(1, 2)]), 7),
        (HGParams([F(1, 4)], [F(1, 2)]), 9),
    ]
    for params, q in cases:
        inst = split_instance(params, q)
        for j in range(q - 1):
            t = inst.base.unit(j)
            assert classic_sum(params, q, t) == algebra_sum_direct(inst, t)


def test_fourier_equals_direct_mixed():
    F3 = make_field(3)
    A = SemisimpleAlgebra(F3, [F3, make_field(3, 2)])
    B = SemisimpleAlgebra(F3, [F3, F3, F3])
    inst = HGAlgebraInstance(
        A, B,
        AlgebraChar.from_exponents(A, [1, 3]),
        AlgebraChar.from_exponents(B, [0, 1, 1]),
    )
    for t in (1, 2):
        assert algebra_sum_direct(inst, t) == algebra_sum_fourier(inst, t)


def test_fourier_coefficient_at_zero_is_one():
    from finhyp.hypergeometric import _fourier_coefficients

    F5 = make_field(5)
    A = SemisimpleAlgebra(F5, [F5, make_field(5, 2)])
    B = SemisimpleAlgebra(F5, [F5, F5, F5])
    inst = HGAlgebraInstance(
        A, B,
        AlgebraChar.from_exponents(A, [3, 7]),
        AlgebraChar.from_exponents(B, [1, 0, 2]),
    )
    assert _fourier_coefficients(inst, 1)[0] == 1


def test_twist_invariance_equidimensional():
    F7 = make_field(7)
    A = SemisimpleAlgebra(F7, [make_field(7, 2)])
    B = SemisimpleAlgebra(F7, [F7, F7])
    inst = HGAlgebraInstance(
        A, B,
        AlgebraChar.from_exponents(A, [5]),
        AlgebraChar.from_exponents(B, [2, 4]),
    )
    for t in (1, 3):
        ref = algebra_sum_direct(inst, t)
        for a in range(2, 7):
            assert algebra_sum_direct(inst, t, twist=a) == ref


def test_orbits_structure():
    params = HGParams([F(1, 5), F(2, 5), F(3, 5), F(4, 5)], [0, 0, 0, 0])
    inst = orbit_instance(params, 7)
    assert [c.f for c in inst.A.components] == [4]
    assert inst.chiA.exponents == ((7**4 - 1) // 5,)
    assert [c.f for c in inst.B.components] == [1, 1, 1, 1]
    assert inst.chiB.exponents == (0, 0, 0, 0)

    inst2 = orbit_instance(HGParams([F(1, 2), F(1, 2)], [0, 0]), 5)
    assert inst2.chiA.exponents == (2, 2)


def test_orbit_representative_swap_changes_nothing():
    # replacing the representative by p times it is a Frobenius twist
    params = HGParams([F(1, 8), F(3, 8)], [0, 0])
    p = 11
    inst = orbit_instance(params, p)
    comp = inst.A.components[0]
    e = inst.chiA.exponents[0]
    swapped = AlgebraChar.from_exponents(inst.A, [e * p % (comp.q - 1)])
    inst_swapped = HGAlgebraInstance(inst.A, inst.B, swapped, inst.chiB)
    for t in (1, 2, 7):
        assert algebra_sum_direct(inst, t) == algebra_sum_direct(inst_swapped, t)


def test_values_descend_to_omega_field():
    # zeta_p-free after promotion: the split sum lies in Q(zeta_(q-1))
    params = HGParams([F(1, 4), F(3, 4)], [0, F(1, 2)])
    q = 5
    for t in range(1, q):
        v = classic_sum(params, q, t)
        assert v.is_in_subfield(q - 1) is not None


def test_katz_identity():
    params = HGParams([F(1, 2), F(1, 2)], [0, 0])
    q = 13
    from finhyp.charsums import _gauss_table

    field = make_field(13)
    table = _gauss_table(field, 1)
    prod = CycloNum.one(1)
    for a in params.alpha:
        prod = prod * table[int(12 * a) % 12]
    for b in params.beta:
        prod = prod * table[(-int(12 * b)) % 12]
    for t in (2, 7):
        assert katz_unnormalized(params, q, t) == classic_sum(params, q, t) * prod


def test_greene_factor_example():
    # alpha=(1/2), beta=(0), q=5: omega(-1)^0 * 5^-1 * g(2)g(0)/g(2) = -1/5
    gf = greene_factor(HGParams([F(1, 2)], [0]), 5)
    assert gf.as_rational() == F(-1, 5)


def test_greene_factor_modulus_is_power_of_q():
    params = HGParams([F(1, 6), F(5, 6)], [0, F(1, 2)])
    gf = greene_factor(params, 7)
    norm = gf * gf.conj()
    r = norm.as_rational()
    assert r is not None and r > 0
    # |factor|^2 = 7^k for an integer k (possibly negative)
    num, den = r.numerator, r.denominator
    assert (num == 1 or _is_power_of(num, 7)) and (den == 1 or _is_power_of(den, 7))


def _is_power_of(n, p):
    while n % p == 0:
        n //= p
    return n == 1


def test_random_instances_direct_equals_fourier():
    from finhyp.checks import random_algebra_instance

    rng = random.Random(123)
    for q in (3, 5, 9):
        inst = random_algebra_instance(rng, q, max_size=81)
        for j in range(inst.base.q - 1):
            t = inst.base.unit(j)
            assert algebra_sum_direct(inst, t) == algebra_sum_fourier(inst, t)
