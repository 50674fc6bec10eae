"""
Tests for characters, orthogonality and Fourier coefficients.
"""

import numpy as np
import pytest

from snevily_verifier.core.abelian_group import (
    GroupElement, GroupSpec, abelian_groups_up_to, add, enumerate_elements, index_of,
)
from snevily_verifier.core.characters import (
    Character, character_product, character_table, character_table_determinant, character_values, dual_elements,
    evaluate, exponent_table, fourier_coefficients, orthogonality_sum, parse_characters,
)
from snevily_verifier.core.fields import admissible_primes, build_cyclotomic_field, build_finite_field, random_element
from snevily_verifier.core.linalg import determinant
from snevily_verifier.exceptions import FieldError, GroupError, InstanceError, ParseError


def test_trivial_character_is_one(z2xz3):
    ctx = build_cyclotomic_field(6)
    for g in enumerate_elements(z2xz3):
        assert evaluate(ctx, z2xz3, Character((0, 0)), g) == 1


def test_is_trivial():
    assert Character((0, 0)).is_trivial()
    assert not Character((1, 0)).is_trivial()


def test_evaluate_over_gf4(z3, gf4):
    assert evaluate(gf4, z3, Character((1,)), GroupElement((1,))) == gf4.zeta


def test_evaluate_mixed_moduli(z2xz3):
    ctx = build_cyclotomic_field(6)
    assert evaluate(ctx, z2xz3, Character((1, 0)), GroupElement((1, 0))) == -1


def test_field_must_match_exponent(z3):
    with pytest.raises(FieldError):
        evaluate(build_finite_field(2, 7), z3, Character((1,)), GroupElement((1,)))


def test_character_validation(z3, gf4):
    with pytest.raises(GroupError):
        evaluate(gf4, z3, Character((3,)), GroupElement((1,)))


@pytest.mark.parametrize("moduli", [(3,), (2, 3), (2, 2), (4,), (3, 3)])
def test_orthogonality(moduli):
    spec = GroupSpec(moduli)
    for ctx in (build_finite_field(5, spec.exponent), build_cyclotomic_field(spec.exponent)):
        chars = dual_elements(spec)
        for u in chars:
            for v in chars:
                expected = ctx.from_int(spec.order) if u == v else ctx.zero()
                assert orthogonality_sum(ctx, spec, u, v) == expected


def test_orthogonality_in_characteristic_two(z3, gf4):
    assert orthogonality_sum(gf4, z3, Character((1,)), Character((2,))) == 0
    assert orthogonality_sum(gf4, z3, Character((1,)), Character((1,))) == 1


def test_character_table_is_nonsingular(z2xz3):
    ctx = build_finite_field(7, 6)
    assert not determinant(ctx, character_table(ctx, z2xz3)).is_zero()


def test_character_product(z2xz3):
    assert character_product(z2xz3, Character((1, 2)), Character((1, 2))) == Character((0, 1))
    ctx = build_cyclotomic_field(6)
    u, v = Character((1, 1)), Character((0, 2))
    w = character_product(z2xz3, u, v)
    for g in enumerate_elements(z2xz3):
        assert evaluate(ctx, z2xz3, w, g) == evaluate(ctx, z2xz3, u, g) * evaluate(ctx, z2xz3, v, g)


def test_fourier_of_constant(z2xz3):
    ctx = build_cyclotomic_field(6)
    fourier = fourier_coefficients(ctx, z2xz3, {g: ctx.one() for g in enumerate_elements(z2xz3)})
    assert fourier[Character((0, 0))] == 1
    assert fourier.support() == [Character((0, 0))]


def test_fourier_of_single_character(z5, cyc5):
    v = Character((2,))
    phi = {g: evaluate(cyc5, z5, v, g) for g in enumerate_elements(z5)}
    assert fourier_coefficients(cyc5, z5, phi).support() == [v]
    assert fourier_coefficients(cyc5, z5, phi)[v] == 1


def test_fourier_of_indicator_in_gf4(z3, gf4):
    phi = {g: gf4.one() if g == GroupElement((0,)) else gf4.zero() for g in enumerate_elements(z3)}
    fourier = fourier_coefficients(gf4, z3, phi)
    assert all(fourier[u] == 1 for u in dual_elements(z3))


def test_fourier_round_trip(rng):
    spec = GroupSpec((3, 3))
    ctx = build_finite_field(2, 3)
    for _ in range(5):
        phi = {g: random_element(ctx, rng) for g in enumerate_elements(spec)}
        fourier = fourier_coefficients(ctx, spec, phi)
        assert all(fourier.reconstruct(g) == phi[g] for g in enumerate_elements(spec))


def test_fourier_needs_every_value(z3, gf4):
    with pytest.raises(InstanceError):
        fourier_coefficients(gf4, z3, {GroupElement((0,)): gf4.one()})


def test_parse_characters(z2xz3):
    assert parse_characters(z2xz3, "(0,0);(1,2)") == [Character((0, 0)), Character((1, 2))]
    with pytest.raises(ParseError):
        parse_characters(z2xz3, "(2,0)")


def test_characters_are_homomorphisms():
    for spec in abelian_groups_up_to(36):
        elements = enumerate_elements(spec)
        exponents = exponent_table(spec)
        sums = np.array([[index_of(spec, add(spec, g, h)) for h in elements] for g in elements])
        assert (exponents[:, sums] == (exponents[:, :, None] + exponents[:, None, :]) % spec.exponent).all()
        ctx = build_finite_field(admissible_primes(spec.exponent, 1)[0], spec.exponent)
        values = character_values(ctx, spec, dual_elements(spec), elements)
        for row in values:
            for i, j in np.ndindex(sums.shape):
                assert row[sums[i, j]] == row[i] * row[j]


def test_evaluate_agrees_with_character_values(z2xz3):
    ctx = build_cyclotomic_field(6)
    chars, elements = dual_elements(z2xz3), enumerate_elements(z2xz3)
    values = character_values(ctx, z2xz3, chars, elements)
    assert values == [[evaluate(ctx, z2xz3, u, g) for g in elements] for u in chars]
    assert character_values(ctx, z2xz3, chars[:2], []) == [[], []]


@pytest.mark.parametrize("moduli", [(2,), (3,), (4,), (2, 2), (2, 3), (3, 3), (2, 4), (5,)])
def test_table_determinant_matches_elimination(moduli):
    spec = GroupSpec(moduli)
    for ctx in (build_finite_field(admissible_primes(spec.exponent, 1)[0], spec.exponent),
                build_cyclotomic_field(spec.exponent)):
        factored = character_table_determinant(ctx, spec)
        assert factored == determinant(ctx, character_table(ctx, spec))
        assert not factored.is_zero()


def test_reconstruct_all_matches_pointwise(rng):
    spec = GroupSpec((2, 4))
    for ctx in (build_finite_field(3, 4), build_cyclotomic_field(4)):
        phi = {g: random_element(ctx, rng) for g in enumerate_elements(spec)}
        fourier = fourier_coefficients(ctx, spec, phi)
        values = fourier.reconstruct_all()
        assert values == {g: fourier.reconstruct(g) for g in enumerate_elements(spec)}
        assert values == phi
