"""
Characters of a finite abelian group with values in a FieldCtx.

The dual group is identified coordinate-wise with G: the character with dual
coordinates u sends g to zeta^(sum_i u_i * g_i * n / n_i), where n is the exponent.
Sums over the whole group run on the cached integer table of these exponents.
"""

import functools
import logging
from dataclasses import dataclass
from typing import Dict, Iterator, List, Mapping, Sequence, Tuple

import numpy as np

from .abelian_group import GroupElement, GroupSpec, enumerate_elements, index_of, parse_coords
from .fields import FieldCtx, FieldElem
from ..exceptions import FieldError, GroupError, InstanceError, ParseError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class Character:
    """A dual-group element given by its dual coordinates"""
    coords: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, 'coords', tuple(int(c) for c in self.coords))

    def is_trivial(self) -> bool:
        return not any(self.coords)

    def __str__(self) -> str:
        return "(" + ",".join(str(c) for c in self.coords) + ")"


@dataclass(frozen=True)
class FourierData:
    """Coefficients lambda_u of a function G -> F in the character basis"""
    ctx: FieldCtx
    spec: GroupSpec
    coefficients: Dict[Character, FieldElem]

    def __getitem__(self, u: Character) -> FieldElem:
        return self.coefficients[u]

    def __iter__(self) -> Iterator[Character]:
        return iter(self.coefficients)

    def support(self) -> List[Character]:
        """Characters with a nonzero coefficient, in canonical order"""
        return [u for u, lam in self.coefficients.items() if not lam.is_zero()]

    def _lambdas(self) -> List[FieldElem]:
        return [self.coefficients[u] for u in dual_elements(self.spec)]

    def reconstruct(self, g: GroupElement) -> FieldElem:
        """sum_u lambda_u * chi_u(g)"""
        column = exponent_table(self.spec)[:, index_of(self.spec, g)]
        return self.ctx.zeta_weighted_sums(column[None, :], self._lambdas())[0]

    def reconstruct_all(self) -> Dict[GroupElement, FieldElem]:
        """reconstruct(g) for every g, in one pass"""
        values = self.ctx.zeta_weighted_sums(exponent_table(self.spec).T, self._lambdas())
        return dict(zip(enumerate_elements(self.spec), values))


def validate_character(spec: GroupSpec, u: Character) -> None:
    if len(u.coords) != spec.rank:
        raise GroupError(f"character {u} has {len(u.coords)} coordinates, expected {spec.rank}")
    for c, n in zip(u.coords, spec.moduli):
        if not 0 <= c < n:
            raise GroupError(f"dual coordinate {c} of {u} is outside [0, {n})")


def character_index(spec: GroupSpec, u: Character) -> int:
    """Position of u in dual_elements(spec)"""
    validate_character(spec, u)
    index = 0
    for c, n in zip(u.coords, spec.moduli):
        index = index * n + c
    return index


def _check_compatible(ctx: FieldCtx, spec: GroupSpec) -> None:
    if ctx.root_order != spec.exponent:
        raise FieldError(f"{ctx.name} carries roots of order {ctx.root_order}, "
                         f"group {spec} has exponent {spec.exponent}")


def pairing_exponent(spec: GroupSpec, u: Character, g: GroupElement) -> int:
    """e with chi_u(g) = zeta^e, reduced mod the exponent"""
    validate_character(spec, u)
    spec.validate(g)
    n = spec.exponent
    return sum(a * b * (n // m) for a, b, m in zip(u.coords, g.coords, spec.moduli)) % n


@functools.lru_cache(maxsize=128)
def exponent_table(spec: GroupSpec) -> np.ndarray:
    """Read-only m x m array of pairing exponents; rows follow the dual enumeration, columns the group's"""
    coords = np.array([g.coords for g in enumerate_elements(spec)], dtype=np.int64)
    n = spec.exponent
    scale = np.array([n // m for m in spec.moduli], dtype=np.int64)
    table = ((coords * scale) @ coords.T) % n
    table.setflags(write=False)
    return table


def evaluate(ctx: FieldCtx, spec: GroupSpec, u: Character, g: GroupElement) -> FieldElem:
    """chi_u(g), always a power of zeta"""
    _check_compatible(ctx, spec)
    return ctx.zeta_pow(pairing_exponent(spec, u, g))


def character_values(ctx: FieldCtx, spec: GroupSpec, chars: Sequence[Character],
                     elems: Sequence[GroupElement]) -> List[List[FieldElem]]:
    """Rows [chi(g) for g in elems] for every chi in chars"""
    _check_compatible(ctx, spec)
    rows = [character_index(spec, u) for u in chars]
    cols = [index_of(spec, g) for g in elems]
    exponents = exponent_table(spec)[np.ix_(rows, cols)].tolist() if rows and cols else [[] for _ in rows]
    return [[ctx.zeta_pow(e) for e in row] for row in exponents]


def dual_elements(spec: GroupSpec) -> Tuple[Character, ...]:
    """All characters in canonical order (same order as the group enumeration)"""
    return tuple(Character(g.coords) for g in enumerate_elements(spec))


def character_product(spec: GroupSpec, u: Character, v: Character) -> Character:
    """The pointwise product chi_u * chi_v as a character"""
    validate_character(spec, u)
    validate_character(spec, v)
    return Character(tuple((a + b) % n for a, b, n in zip(u.coords, v.coords, spec.moduli)))


def character_table(ctx: FieldCtx, spec: GroupSpec):
    """The m x m matrix (chi_u(g)); rows follow the dual enumeration, columns the group enumeration"""
    from .linalg import char_matrix
    return char_matrix(ctx, spec, dual_elements(spec), enumerate_elements(spec))


def character_table_determinant(ctx: FieldCtx, spec: GroupSpec) -> FieldElem:
    """Determinant of character_table(ctx, spec) without elimination.

    In the canonical order the table is the Kronecker product of the tables of the
    cyclic factors, and the table of Z_k is the Vandermonde matrix on the k-th roots
    of unity. So Det = prod_i V_i^(m / n_i) with V_i = prod_{b < c} (w_i^c - w_i^b).
    """
    _check_compatible(ctx, spec)
    n, m = spec.exponent, spec.order
    result = ctx.one()
    for k in spec.moduli:
        step = n // k
        nodes = [ctx.zeta_pow(step * b) for b in range(k)]
        vandermonde = ctx.one()
        for c in range(k):
            for b in range(c):
                vandermonde = vandermonde * (nodes[c] - nodes[b])
        result = result * vandermonde ** (m // k)
    return result


def orthogonality_sum(ctx: FieldCtx, spec: GroupSpec, u: Character, v: Character) -> FieldElem:
    """sum_g chi_u(g) * chi_v(g)^-1"""
    _check_compatible(ctx, spec)
    table = exponent_table(spec)
    return ctx.zeta_power_sum(table[character_index(spec, u)] - table[character_index(spec, v)])


def fourier_coefficients(ctx: FieldCtx, spec: GroupSpec,
                         phi: Mapping[GroupElement, FieldElem]) -> FourierData:
    """lambda_u = m^-1 * sum_g phi(g) * chi_u(g)^-1 for every character u"""
    _check_compatible(ctx, spec)
    elements = enumerate_elements(spec)
    missing = [g for g in elements if g not in phi]
    if missing:
        raise InstanceError(f"phi is undefined at {len(missing)} group elements, first {missing[0]}")
    if ctx.from_int(spec.order).is_zero():
        raise FieldError(f"|G| = {spec.order} is not invertible in {ctx.name}")
    values = ctx.zeta_weighted_sums(-exponent_table(spec), [phi[g] for g in elements], divisor=spec.order)
    return FourierData(ctx, spec, dict(zip(dual_elements(spec), values)))


def parse_character(spec: GroupSpec, text: str) -> Character:
    u = Character(parse_coords(text))
    try:
        validate_character(spec, u)
    except GroupError as e:
        raise ParseError(str(e)) from e
    return u


def parse_characters(spec: GroupSpec, text: str) -> List[Character]:
    """Parse a ``;``-separated list of dual coordinate tuples"""
    text = text.strip()
    if not text:
        return []
    return [parse_character(spec, part) for part in text.split(";")]


def as_characters(spec: GroupSpec, items: Sequence) -> List[Character]:
    """Coerce coordinate tuples or group elements to validated characters"""
    chars = []
    for item in items:
        u = item if isinstance(item, Character) else Character(getattr(item, 'coords', item))
        validate_character(spec, u)
        chars.append(u)
    return chars
