"""
Finite abelian groups Z_{n_1} x ... x Z_{n_r} and their elements.

Elements are residue vectors. The canonical enumeration is mixed-radix with the
last coordinate varying fastest; every index t_i used downstream refers to it.
"""

import functools
import itertools
import math
import re
from dataclasses import dataclass
from typing import Iterator, List, Sequence, Tuple

from ..exceptions import GroupError, ParseError


@dataclass(frozen=True)
class GroupSpec:
    """A finite abelian group given by its list of cyclic factors"""
    moduli: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, 'moduli', tuple(int(n) for n in self.moduli))
        if not self.moduli:
            raise GroupError("a group needs at least one cyclic factor")
        for n in self.moduli:
            if n < 2:
                raise GroupError(f"every modulus must be at least 2, got {n}")

    @property
    def rank(self) -> int:
        return len(self.moduli)

    @property
    def order(self) -> int:
        """m = product of the moduli"""
        return math.prod(self.moduli)

    @property
    def exponent(self) -> int:
        """n = lcm of the moduli"""
        return functools.reduce(lambda a, b: a * b // math.gcd(a, b), self.moduli, 1)

    def element(self, coords: Sequence[int]) -> 'GroupElement':
        """Build a validated element of this group"""
        x = GroupElement(tuple(coords))
        self.validate(x)
        return x

    def validate(self, x: 'GroupElement') -> None:
        if len(x.coords) != len(self.moduli):
            raise GroupError(f"element {format_element(x)} has {len(x.coords)} coordinates, "
                             f"group {format_group_spec(self)} has {len(self.moduli)}")
        for c, n in zip(x.coords, self.moduli):
            if not 0 <= c < n:
                raise GroupError(f"coordinate {c} of {format_element(x)} is outside [0, {n})")

    def __str__(self) -> str:
        return " x ".join(f"Z_{n}" for n in self.moduli)


@dataclass(frozen=True, order=True)
class GroupElement:
    """A group element as a vector of reduced residues"""
    coords: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, 'coords', tuple(int(c) for c in self.coords))

    def __str__(self) -> str:
        return format_element(self)


def add(spec: GroupSpec, x: GroupElement, y: GroupElement) -> GroupElement:
    """Componentwise sum modulo the cyclic factors"""
    spec.validate(x)
    spec.validate(y)
    return GroupElement(tuple((a + b) % n for a, b, n in zip(x.coords, y.coords, spec.moduli)))


def neg(spec: GroupSpec, x: GroupElement) -> GroupElement:
    spec.validate(x)
    return GroupElement(tuple((-a) % n for a, n in zip(x.coords, spec.moduli)))


def sub(spec: GroupSpec, x: GroupElement, y: GroupElement) -> GroupElement:
    """x - y"""
    return add(spec, x, neg(spec, y))


def zero(spec: GroupSpec) -> GroupElement:
    return GroupElement((0,) * spec.rank)


def order_of(spec: GroupSpec, x: GroupElement) -> int:
    """Order of x: lcm over coordinates of n_i / gcd(x_i, n_i)"""
    spec.validate(x)
    result = 1
    for c, n in zip(x.coords, spec.moduli):
        k = n // math.gcd(c, n)
        result = result * k // math.gcd(result, k)
    return result


@functools.lru_cache(maxsize=256)
def _enumeration(spec: GroupSpec) -> Tuple[GroupElement, ...]:
    return tuple(GroupElement(coords) for coords in itertools.product(*(range(n) for n in spec.moduli)))


def enumerate_elements(spec: GroupSpec) -> Tuple[GroupElement, ...]:
    """All m elements, mixed-radix order with the last coordinate fastest"""
    return _enumeration(spec)


def index_of(spec: GroupSpec, g: GroupElement) -> int:
    """Position of g in enumerate_elements(spec)"""
    spec.validate(g)
    index = 0
    for c, n in zip(g.coords, spec.moduli):
        index = index * n + c
    return index


def element_at(spec: GroupSpec, index: int) -> GroupElement:
    if not 0 <= index < spec.order:
        raise GroupError(f"index {index} is outside [0, {spec.order})")
    return _enumeration(spec)[index]


def _partitions(e: int, largest: int = None) -> Iterator[Tuple[int, ...]]:
    """Partitions of e into non-increasing parts"""
    if largest is None:
        largest = e
    if e == 0:
        yield ()
        return
    for part in range(min(e, largest), 0, -1):
        for rest in _partitions(e - part, part):
            yield (part,) + rest


def _factorize(m: int) -> List[Tuple[int, int]]:
    factors = []
    p = 2
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            factors.append((p, e))
        p += 1
    if m > 1:
        factors.append((m, 1))
    return factors


def abelian_groups_of_order(m: int) -> List[GroupSpec]:
    """One invariant-factor representative (n_1 | n_2 | ...) per isomorphism class of order m"""
    if m < 2:
        return []
    prime_powers = _factorize(m)
    groups = []
    for choice in itertools.product(*(list(_partitions(e)) for _, e in prime_powers)):
        length = max(len(parts) for parts in choice)
        factors = []
        for j in range(length):
            d = 1
            for (p, _), parts in zip(prime_powers, choice):
                if j < len(parts):
                    d *= p ** parts[j]
            factors.append(d)
        groups.append(GroupSpec(tuple(sorted(factors))))
    return sorted(groups, key=lambda g: (len(g.moduli), g.moduli))


def abelian_groups_up_to(max_m: int) -> List[GroupSpec]:
    """All isomorphism classes of order 2..max_m, ordered by order"""
    groups = []
    for m in range(2, max_m + 1):
        groups.extend(abelian_groups_of_order(m))
    return groups


_ELEMENT_RE = re.compile(r"^\(\s*(-?\d+(?:\s*,\s*-?\d+)*)\s*\)$")


def parse_group_spec(text: str) -> GroupSpec:
    """Parse comma-separated moduli such as ``2,3,9``"""
    try:
        moduli = tuple(int(part) for part in text.split(","))
    except ValueError as e:
        raise ParseError(f"group spec must be comma-separated integers, got {text!r}") from e
    try:
        return GroupSpec(moduli)
    except GroupError as e:
        raise ParseError(str(e)) from e


def parse_coords(text: str) -> Tuple[int, ...]:
    """Parse a parenthesized coordinate tuple such as ``(1,0,4)``"""
    match = _ELEMENT_RE.match(text.strip())
    if not match:
        raise ParseError(f"expected coordinates like (1,0,4), got {text!r}")
    return tuple(int(part) for part in match.group(1).split(","))


def parse_element(spec: GroupSpec, text: str) -> GroupElement:
    try:
        return spec.element(parse_coords(text))
    except GroupError as e:
        raise ParseError(str(e)) from e


def parse_elements(spec: GroupSpec, text: str) -> List[GroupElement]:
    """Parse a ``;``-separated element list such as ``(0);(1)``"""
    text = text.strip()
    if not text:
        return []
    return [parse_element(spec, part) for part in text.split(";")]


def format_group_spec(spec: GroupSpec) -> str:
    return ",".join(str(n) for n in spec.moduli)


def format_element(x) -> str:
    return "(" + ",".join(str(c) for c in x.coords) + ")"


def format_elements(xs) -> str:
    return ";".join(format_element(x) for x in xs)
