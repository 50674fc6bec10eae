"""
Tests for finite abelian groups: arithmetic, enumeration and text formats.
"""

import numpy as np
import pytest
import sympy

from snevily_verifier.core.abelian_group import (
    GroupElement, GroupSpec, abelian_groups_of_order, abelian_groups_up_to, add, element_at, enumerate_elements,
    format_elements, index_of, neg, order_of, parse_element, parse_elements, parse_group_spec, sub, zero,
)
from snevily_verifier.exceptions import GroupError, ParseError


def g(*coords):
    return GroupElement(coords)


@pytest.mark.parametrize("moduli, x, y, expected", [
    ((4,), (3,), (2,), (1,)),
    ((2, 3), (1, 2), (1, 2), (0, 1)),
    ((2, 3, 9), (1, 1, 8), (0, 0, 0), (1, 1, 8)),
])
def test_add(moduli, x, y, expected):
    assert add(GroupSpec(moduli), g(*x), g(*y)) == g(*expected)


@pytest.mark.parametrize("moduli, x, expected", [
    ((5,), (2,), (3,)),
    ((2, 3), (0, 0), (0, 0)),
    ((6,), (1,), (5,)),
])
def test_neg(moduli, x, expected):
    assert neg(GroupSpec(moduli), g(*x)) == g(*expected)


def test_sub_inverts_add(z2xz3):
    for x in enumerate_elements(z2xz3):
        for y in enumerate_elements(z2xz3):
            assert sub(z2xz3, add(z2xz3, x, y), y) == x


def test_zero_is_identity(z2xz3):
    for x in enumerate_elements(z2xz3):
        assert add(z2xz3, x, zero(z2xz3)) == x


def test_order_and_exponent():
    spec = GroupSpec((2, 3))
    assert spec.order == 6
    assert spec.exponent == 6
    assert GroupSpec((2, 3, 9)).exponent == 18
    assert GroupSpec((2, 2)).exponent == 2


def test_order_of_element():
    spec = GroupSpec((2, 3, 9))
    assert order_of(spec, g(0, 0, 0)) == 1
    assert order_of(spec, g(1, 0, 3)) == 6
    assert order_of(spec, g(1, 1, 1)) == 18


@pytest.mark.parametrize("moduli, expected", [
    ((2, 3), [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2)]),
    ((3,), [(0,), (1,), (2,)]),
    ((2, 2), [(0, 0), (0, 1), (1, 0), (1, 1)]),
])
def test_enumeration_order(moduli, expected):
    assert [x.coords for x in enumerate_elements(GroupSpec(moduli))] == expected


@pytest.mark.parametrize("moduli, x, expected", [
    ((2, 3), (1, 0), 3),
    ((2, 3), (0, 0), 0),
    ((12,), (7,), 7),
])
def test_index_of(moduli, x, expected):
    assert index_of(GroupSpec(moduli), g(*x)) == expected


def test_index_round_trip():
    spec = GroupSpec((2, 3, 4))
    assert [index_of(spec, x) for x in enumerate_elements(spec)] == list(range(spec.order))
    assert element_at(spec, 23) == g(1, 2, 3)


def test_index_round_trip_in_every_group_up_to_256():
    for spec in abelian_groups_up_to(256):
        for i, x in enumerate(enumerate_elements(spec)):
            assert index_of(spec, x) == i
            assert element_at(spec, i) == x


def _moduli_lists(limit, smallest=2):
    """Non-decreasing moduli lists with product at most limit"""
    for n in range(smallest, limit + 1):
        yield (n,)
        for rest in _moduli_lists(limit // n, n):
            yield (n,) + rest


def test_order_and_exponent_share_prime_support():
    lists = list(_moduli_lists(100))
    assert (2, 2, 5, 5) in lists and (3, 33) in lists
    for moduli in lists:
        spec = GroupSpec(moduli)
        assert sympy.primefactors(spec.order) == sympy.primefactors(spec.exponent)
        assert spec.order % spec.exponent == 0


def _sum_table(spec):
    elements = enumerate_elements(spec)
    return np.array([[index_of(spec, add(spec, x, y)) for y in elements] for x in elements])


def test_addition_is_commutative_and_associative():
    for spec in abelian_groups_up_to(64):
        table = _sum_table(spec)
        assert (table == table.T).all(), spec
        assert (table[table, :] == table[:, table]).all(), spec


@pytest.mark.parametrize("moduli", [(), (1,), (0,), (3, -2)])
def test_invalid_moduli(moduli):
    with pytest.raises(GroupError):
        GroupSpec(moduli)


def test_validate_rejects_foreign_elements(z2xz3):
    with pytest.raises(GroupError):
        z2xz3.validate(g(2, 0))
    with pytest.raises(GroupError):
        z2xz3.validate(g(1,))
    with pytest.raises(GroupError):
        add(z2xz3, g(0, 3), g(0, 0))


@pytest.mark.parametrize("m, expected", [
    (2, [(2,)]),
    (4, [(4,), (2, 2)]),
    (8, [(8,), (2, 4), (2, 2, 2)]),
    (12, [(12,), (2, 6)]),
    (36, [(36,), (2, 18), (3, 12), (6, 6)]),
])
def test_abelian_groups_of_order(m, expected):
    assert [spec.moduli for spec in abelian_groups_of_order(m)] == expected


def test_abelian_groups_up_to():
    groups = abelian_groups_up_to(9)
    assert len(groups) == 12
    assert [spec.order for spec in groups] == sorted(spec.order for spec in groups)


def test_parse_group_spec():
    assert parse_group_spec("2,3,9").moduli == (2, 3, 9)
    with pytest.raises(ParseError):
        parse_group_spec("2,x")
    with pytest.raises(ParseError):
        parse_group_spec("0")


def test_parse_elements(z2xz3):
    assert parse_elements(z2xz3, "(0,1); (1,2)") == [g(0, 1), g(1, 2)]
    assert parse_elements(z2xz3, "") == []
    assert format_elements(parse_elements(z2xz3, "(0,1);(1,2)")) == "(0,1);(1,2)"


@pytest.mark.parametrize("text", ["0,1", "(0,1", "(2,0)", "(0)", "(a,b)"])
def test_parse_element_errors(z2xz3, text):
    with pytest.raises(ParseError):
        parse_element(z2xz3, text)
