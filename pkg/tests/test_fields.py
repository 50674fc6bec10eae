"""
Tests for the finite and cyclotomic field backends.
"""

from fractions import Fraction

import numpy as np
import pytest
import sympy

from snevily_verifier.core.fields import (
    CyclotomicFieldCtx, FieldBackend, PrimePowerFieldCtx, admissible_primes, build_cyclotomic_field, build_field,
    build_finite_field, cyclotomic_poly, first_irreducible,
    euler_phi, find_root_of_unity, format_elem, is_irreducible_mod_p, multiplicative_order, parse_elem,
    parse_field_spec, prime_factors, random_element,
)
from snevily_verifier.exceptions import FieldError, ParseError


def test_gf4_construction(gf4):
    assert gf4.degree == 2
    assert gf4.q == 4
    assert gf4.modulus == (1, 1, 1)
    assert gf4.zeta == gf4.element([0, 1])
    assert gf4.name == "GF(2^2)"


def test_gf8_construction(gf8):
    assert gf8.degree == 3
    assert gf8.q == 8
    assert gf8.has_exact_order(gf8.zeta, 7)


def test_characteristic_dividing_exponent_is_rejected():
    with pytest.raises(FieldError):
        build_finite_field(3, 3)
    with pytest.raises(FieldError):
        build_finite_field(4, 3)


def test_contexts_are_cached():
    assert build_finite_field(2, 3) is build_finite_field(2, 3)
    assert build_cyclotomic_field(6) is build_cyclotomic_field(6)


def test_gf4_multiplication(gf4):
    x = gf4.element([0, 1])
    assert x * x == gf4.element([1, 1])
    assert x * x * x == 1


def test_inverse_of_one(gf4, cyc5):
    assert gf4.one().inverse() == 1
    assert cyc5.one().inverse() == 1


def test_inverses_exhaustive_in_gf8(gf8):
    for a in gf8.elements():
        if not a.is_zero():
            assert a * a.inverse() == gf8.one()


def test_inverse_of_zero_raises(gf4):
    with pytest.raises(FieldError):
        gf4.zero().inverse()


def test_mixing_fields_raises(gf4, gf8):
    with pytest.raises(FieldError):
        gf4.one() + gf8.one()


def test_elements_enumeration(gf4):
    elements = list(gf4.elements())
    assert len(elements) == 4
    assert len(set(elements)) == 4
    assert elements[0].is_zero()


@pytest.mark.parametrize("n, expected", [
    (1, (-1, 1)),
    (2, (1, 1)),
    (4, (1, 0, 1)),
    (6, (1, -1, 1)),
    (12, (1, 0, -1, 0, 1)),
])
def test_cyclotomic_poly(n, expected):
    assert cyclotomic_poly(n) == expected


@pytest.mark.parametrize("n", [5, 9, 15, 18, 20, 36])
def test_cyclotomic_poly_matches_sympy(n):
    x = sympy.symbols("x")
    expected = sympy.Poly(sympy.cyclotomic_poly(n, x), x).all_coeffs()[::-1]
    assert list(cyclotomic_poly(n)) == [int(c) for c in expected]


def test_cyclotomic_trivial_root():
    ctx = build_cyclotomic_field(1)
    assert ctx.degree == 1
    assert ctx.zeta == 1


@pytest.mark.parametrize("n", [1, 2, 3, 4, 6, 9, 12, 15])
def test_cyclotomic_degree_is_euler_phi(n):
    assert build_cyclotomic_field(n).degree == euler_phi(n)


def test_cyclotomic_zeta_relations(cyc5):
    assert cyc5.zeta ** 5 == 1
    assert cyc5.zeta ** 1 != 1
    ctx4 = build_cyclotomic_field(4)
    assert ctx4.zeta ** 2 == -1


def test_cyclotomic_division(cyc5):
    a = cyc5.element([1, 2, 0, 3])
    b = cyc5.element([0, 1, 1])
    assert (a / b) * b == a


def test_has_exact_order(gf4):
    assert build_cyclotomic_field(1).has_exact_order(build_cyclotomic_field(1).one(), 1)
    assert gf4.has_exact_order(gf4.element([0, 1]), 3)
    assert not gf4.has_exact_order(gf4.element([0, 1]), 1)


def test_find_root_of_unity(gf4, gf8, cyc5):
    assert gf8.has_exact_order(find_root_of_unity(gf8, 7), 7)
    assert gf4.has_exact_order(find_root_of_unity(gf4, 3), 3)
    assert find_root_of_unity(gf4, 1) == gf4.one()
    assert find_root_of_unity(cyc5, 5) == cyc5.zeta
    with pytest.raises(FieldError):
        find_root_of_unity(gf4, 5)


@pytest.mark.parametrize("p, n, expected", [(2, 3, 2), (2, 7, 3), (3, 4, 2), (2, 1, 1), (5, 36, 6)])
def test_multiplicative_order(p, n, expected):
    assert multiplicative_order(p, n) == expected


def test_prime_factors():
    assert prime_factors(36) == [2, 3]
    assert prime_factors(97) == [97]


def test_admissible_primes():
    assert admissible_primes(6, 2) == [5, 7]
    assert admissible_primes(5, 2) == [2, 3]


@pytest.mark.parametrize("p, d", [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2)])
def test_irreducibility_matches_sympy(p, d):
    x = sympy.symbols("x")
    for index in range(p ** d):
        coeffs = [(index // p ** i) % p for i in range(d)] + [1]
        poly = sympy.Poly(list(reversed(coeffs)), x, modulus=p)
        assert is_irreducible_mod_p(coeffs, p) == poly.is_irreducible


def test_cyclotomic_polys_factor_x_to_the_n_minus_one():
    x = sympy.symbols("x")
    for n in range(1, 61):
        product = sympy.Poly(1, x)
        for d in sympy.divisors(n):
            product *= sympy.Poly(list(reversed(cyclotomic_poly(d))), x)
        assert product == sympy.Poly(x ** n - 1, x)


@pytest.mark.parametrize("n", range(1, 31))
def test_zeta_has_exact_order(n):
    for p in admissible_primes(n, 3):
        ctx = build_finite_field(p, n)
        assert ctx.has_exact_order(ctx.zeta, n), ctx.name
    ctx = build_cyclotomic_field(n)
    assert ctx.has_exact_order(ctx.zeta, n)


@pytest.mark.parametrize("p", [2, 3, 5, 7])
@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_chosen_modulus_is_irreducible(p, d):
    x = sympy.symbols("x")
    modulus = first_irreducible(p, d)
    assert len(modulus) == d + 1 and modulus[-1] == 1
    assert sympy.Poly(list(reversed(modulus)), x, modulus=p).is_irreducible


@pytest.mark.parametrize("p, n", [(2, 3), (2, 7), (3, 8), (5, 12), (2, 15), (7, 9)])
def test_rebuilt_finite_field_is_identical(p, n):
    cached, fresh = build_finite_field(p, n), PrimePowerFieldCtx(p, n)
    assert fresh is not cached
    assert fresh.modulus == cached.modulus
    assert fresh.zeta.value == cached.zeta.value


@pytest.mark.parametrize("n", [1, 4, 5, 12])
def test_rebuilt_cyclotomic_field_is_identical(n):
    cached, fresh = build_cyclotomic_field(n), CyclotomicFieldCtx(n)
    assert fresh.phi == cached.phi
    assert fresh.zeta.value == cached.zeta.value


def test_cyclotomic_values_stay_in_lowest_terms(cyc5):
    half = cyc5.element([Fraction(1, 2), 0, Fraction(3, 2)])
    assert half.value == ((1, 0, 3, 0), 2)
    assert format_elem(half) == "[1/2,0,3/2,0]"
    assert (half + half).value == ((1, 0, 3, 0), 1)
    assert (half * 4 - half * 4).value == cyc5.zero().value
    assert cyc5.element([Fraction(2, 4)]) == cyc5.element([Fraction(1, 2)])


@pytest.mark.parametrize("ctx", [build_finite_field(3, 8), build_cyclotomic_field(12)], ids=["gf9", "cyc12"])
def test_zeta_power_sums(ctx):
    exponents = [0, 1, 1, 5, 13, -3]
    expected = ctx.zero()
    for e in exponents:
        expected = expected + ctx.zeta_pow(e)
    assert ctx.zeta_power_sum(exponents) == expected
    assert ctx.zeta_power_sum(range(ctx.root_order)) == (1 if ctx.root_order == 1 else 0)


@pytest.mark.parametrize("ctx", [build_finite_field(5, 6), build_cyclotomic_field(6)], ids=["gf5", "cyc6"])
def test_zeta_weighted_sums(ctx, rng):
    values = [random_element(ctx, rng) for _ in range(4)]
    exponents = np.array([[0, 1, 2, 3], [5, 5, 0, 7], [0, 0, 0, 0]])
    sums = ctx.zeta_weighted_sums(exponents, values, divisor=5 if ctx.characteristic == 0 else 1)
    for row, total in zip(exponents, sums):
        expected = ctx.zero()
        for e, v in zip(row, values):
            expected = expected + v * ctx.zeta_pow(int(e))
        if ctx.characteristic == 0:
            expected = expected / 5
        assert total == expected
    with pytest.raises(FieldError):
        ctx.zeta_weighted_sums(exponents[:, :2], values)


def test_weighted_sums_with_fractional_values(cyc5):
    values = [cyc5.element([Fraction(1, 3), 1]), cyc5.element([0, Fraction(-2, 7)])]
    [total] = cyc5.zeta_weighted_sums([[1, 2]], values)
    assert total == values[0] * cyc5.zeta + values[1] * cyc5.zeta ** 2


def test_parse_field_spec():
    assert parse_field_spec("gf:2") == (FieldBackend.FINITE, 2)
    assert parse_field_spec("cyc") == (FieldBackend.CYCLOTOMIC, None)
    with pytest.raises(ParseError):
        parse_field_spec("gf:two")
    with pytest.raises(ParseError):
        parse_field_spec("real")


def test_build_field():
    assert build_field("gf:2", 3) is build_finite_field(2, 3)
    assert build_field("cyc", 5) is build_cyclotomic_field(5)


def test_format_and_parse_elem(gf4, cyc5):
    assert format_elem(gf4.element([1, 1])) == "[1,1]"
    assert parse_elem(gf4, "[0,1]") == gf4.zeta
    assert parse_elem(cyc5, "[1/2,0,0,-1]") == cyc5.element([Fraction(1, 2), 0, 0, -1])
    with pytest.raises(ParseError):
        parse_elem(gf4, "[1/2,0]")
    with pytest.raises(ParseError):
        parse_elem(gf4, "1,1")


def test_random_element_is_reproducible(gf8):
    first = [random_element(gf8, np.random.default_rng(7)) for _ in range(3)]
    again = [random_element(gf8, np.random.default_rng(7)) for _ in range(3)]
    assert first == again
