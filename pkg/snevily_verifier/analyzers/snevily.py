"""
Distinct-sum permutations and the determinant identities behind them.

For k-subsets A, B of an abelian group this module builds

- the permutation whose multiset of sums a_i + b_pi(i) no other permutation attains,
  by the pivot-and-recurse construction (pivot g = first a + first b);
- the Snevily polynomial Det(t_{a_i + b_j}), stored as signed integer coefficients of
  the monomials indexed by multiset signatures;
- a backtracking search for a permutation with pairwise distinct sums;
- exact checks of the Cauchy-Binet expansion of Det(phi(a_i + b_j)) and of the
  characteristic-2 expansion over pairs (character subset, permutation).
"""

import functools
import itertools
import logging
import math
from collections import Counter
from dataclasses import dataclass
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from ..core.abelian_group import (
    GroupElement, GroupSpec, add, enumerate_elements, format_group_spec, index_of, neg, parse_group_spec,
)
from ..core.characters import Character, as_characters, dual_elements, evaluate, fourier_coefficients
from ..core.fields import FieldCtx, FieldElem, is_prime, random_element
from ..core.linalg import Matrix, char_matrix, determinant, matmul, transpose
from ..exceptions import (
    BudgetExceededError, FieldError, GroupError, InstanceError, ParseError, SpecializationError,
)

logger = logging.getLogger(__name__)

MultisetSignature = Tuple[int, ...]

DEFAULT_MAX_K = 8
DEFAULT_MAX_SUBSETS = 1_000_000


def permutation_sign(one_line: Sequence[int]) -> int:
    """Sign of a permutation in one-line notation, from its cycle count"""
    seen, cycles = set(), 0
    for start in range(len(one_line)):
        if start not in seen:
            cycles += 1
            j = start
            while j not in seen:
                seen.add(j)
                j = one_line[j]
    return -1 if (len(one_line) - cycles) % 2 else 1


@dataclass(frozen=True)
class Permutation:
    """A bijection of {0, ..., k-1} in one-line notation"""
    one_line: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, 'one_line', tuple(int(j) for j in self.one_line))
        if sorted(self.one_line) != list(range(len(self.one_line))):
            raise InstanceError(f"{list(self.one_line)} is not a permutation")

    @classmethod
    def identity(cls, k: int) -> 'Permutation':
        return cls(tuple(range(k)))

    @property
    def sign(self) -> int:
        """+1 for even, -1 for odd permutations"""
        return permutation_sign(self.one_line)

    def __len__(self) -> int:
        return len(self.one_line)

    def __getitem__(self, i: int) -> int:
        return self.one_line[i]

    def __iter__(self):
        return iter(self.one_line)

    def __str__(self) -> str:
        return "[" + ",".join(str(j) for j in self.one_line) + "]"


@dataclass(frozen=True)
class SnevilyPolynomial:
    """Det(t_{a_i + b_j}) as {multiset signature: integer coefficient}; zero coefficients are dropped"""
    k: int
    terms: Dict[MultisetSignature, int]

    def coefficient(self, signature: Sequence[int]) -> int:
        return self.terms.get(tuple(signature), 0)

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def l1_norm(self) -> int:
        return sum(abs(c) for c in self.terms.values())

    def evaluate(self, ctx: FieldCtx, spec: GroupSpec, phi: Mapping[GroupElement, FieldElem]) -> FieldElem:
        """Specialize t_i to phi(g_i)"""
        elements = enumerate_elements(spec)
        total = ctx.zero()
        for signature, c in self.terms.items():
            term = ctx.from_int(c)
            for index in signature:
                term = term * phi[elements[index]]
            total = total + term
        return total

    def to_json(self) -> Dict[str, int]:
        return {"[" + ",".join(str(i) for i in signature) + "]": c for signature, c in self.terms.items()}


def _validate_pair(spec: GroupSpec, A: Sequence[GroupElement],
                   B: Sequence[GroupElement]) -> Tuple[Tuple[GroupElement, ...], Tuple[GroupElement, ...]]:
    A, B = tuple(A), tuple(B)
    if len(A) != len(B):
        raise InstanceError(f"sets differ in size: {len(A)} vs {len(B)}")
    for name, items in (("A", A), ("B", B)):
        for x in items:
            spec.validate(x)
        if len(set(items)) != len(items):
            raise InstanceError(f"{name} contains duplicate elements")
    return A, B


@functools.lru_cache(maxsize=64)
def addition_table(spec: GroupSpec) -> Tuple[Tuple[int, ...], ...]:
    """table[i][j] = index of g_i + g_j in the canonical enumeration"""
    elements = enumerate_elements(spec)
    return tuple(tuple(index_of(spec, add(spec, x, y)) for y in elements) for x in elements)


@functools.lru_cache(maxsize=64)
def negation_table(spec: GroupSpec) -> Tuple[int, ...]:
    """table[i] = index of -g_i"""
    return tuple(index_of(spec, neg(spec, x)) for x in enumerate_elements(spec))


def _indices(spec: GroupSpec, items: Sequence[GroupElement]) -> Tuple[int, ...]:
    return tuple(index_of(spec, x) for x in items)


def _sum_indices(spec: GroupSpec, A: Sequence[GroupElement], B: Sequence[GroupElement]) -> List[List[int]]:
    """sums[i][j] = index_of(a_i + b_j)"""
    table = addition_table(spec)
    rows_b = _indices(spec, B)
    return [[table[i][j] for j in rows_b] for i in _indices(spec, A)]


def transversal_sums(spec: GroupSpec, A: Sequence[GroupElement], B: Sequence[GroupElement],
                     sigma: Permutation) -> List[GroupElement]:
    """a_i + b_sigma(i) for every i"""
    A, B = _validate_pair(spec, A, B)
    if len(sigma) != len(A):
        raise InstanceError(f"permutation of size {len(sigma)} for sets of size {len(A)}")
    return [add(spec, a, B[sigma[i]]) for i, a in enumerate(A)]


def multiset_signature(spec: GroupSpec, A: Sequence[GroupElement], B: Sequence[GroupElement],
                       sigma: Permutation) -> MultisetSignature:
    return tuple(sorted(index_of(spec, g) for g in transversal_sums(spec, A, B, sigma)))


def is_snevily_permutation(spec: GroupSpec, A: Sequence[GroupElement], B: Sequence[GroupElement],
                           sigma: Permutation) -> bool:
    sums = transversal_sums(spec, A, B, sigma)
    return len(set(sums)) == len(sums)


def distinguished_indices(table: Sequence[Sequence[int]], negation: Sequence[int],
                          A: Sequence[int], B: Sequence[int]) -> Tuple[int, ...]:
    """The lemma4 permutation on element indices, without validation.

    Repeatedly pivot on g = (first unmatched a) + (first unmatched b), match every
    unmatched a_i whose partner g - a_i is an unmatched b, and continue on the rest.
    """
    k = len(A)
    perm = [0] * k
    free_a, free_b = list(range(k)), list(range(k))
    while free_a:
        row = table[table[A[free_a[0]]][B[free_b[0]]]]
        partner_of = {B[j]: j for j in free_b}
        matched = {}
        for i in free_a:
            j = partner_of.get(row[negation[A[i]]])
            if j is not None:
                matched[i] = j
        for i, j in matched.items():
            perm[i] = j
        free_a = [i for i in free_a if i not in matched]
        used = set(matched.values())
        free_b = [j for j in free_b if j not in used]
    return tuple(perm)


def lemma4_permutation(spec: GroupSpec, A: Sequence[GroupElement],
                       B: Sequence[GroupElement]) -> Permutation:
    """Permutation whose sum multiset is attained by no other permutation"""
    A, B = _validate_pair(spec, A, B)
    perm = distinguished_indices(addition_table(spec), negation_table(spec), _indices(spec, A), _indices(spec, B))
    logger.debug("distinguished permutation %s for k=%d in %s", list(perm), len(perm), spec)
    return Permutation(perm)


def signed_count(sums: Sequence[Sequence[int]], signature: Sequence[int]) -> Tuple[int, int]:
    """(number of permutations whose sum multiset is signature, sum of their signs).

    The second entry is the coefficient of the signature's monomial in the Snevily
    polynomial. Placing column j after the used columns above j adds that many
    inversions, which is how the sign is carried along.
    """
    k = len(sums)
    if len(signature) != k:
        return 0, 0
    remaining = Counter(signature)
    used = [False] * k

    def extend(i: int, sign: int) -> Tuple[int, int]:
        if i == k:
            return 1, sign
        count = signed = 0
        for j in range(k):
            s = sums[i][j]
            if not used[j] and remaining[s] > 0:
                flips = sum(used[j + 1:])
                used[j] = True
                remaining[s] -= 1
                c, t = extend(i + 1, -sign if flips % 2 else sign)
                count += c
                signed += t
                remaining[s] += 1
                used[j] = False
        return count, signed

    return extend(0, 1)


def count_attaining(spec: GroupSpec, A: Sequence[GroupElement], B: Sequence[GroupElement],
                    signature: Sequence[int], max_k: int = DEFAULT_MAX_K) -> int:
    """Number of permutations whose sum multiset equals signature"""
    A, B = _validate_pair(spec, A, B)
    k = len(A)
    if k > max_k:
        raise BudgetExceededError("count_attaining", k, max_k)
    return signed_count(_sum_indices(spec, A, B), signature)[0]


def all_permutations(k: int) -> Iterator[Permutation]:
    for p in itertools.permutations(range(k)):
        yield Permutation(p)


def snevily_polynomial(spec: GroupSpec, A: Sequence[GroupElement], B: Sequence[GroupElement],
                       max_k: int = DEFAULT_MAX_K) -> SnevilyPolynomial:
    """Accumulate sgn(sigma) into the bucket of each permutation's signature"""
    A, B = _validate_pair(spec, A, B)
    k = len(A)
    if k > max_k:
        raise BudgetExceededError("snevily_polynomial", k, max_k)
    sums = _sum_indices(spec, A, B)
    coefficients: Counter = Counter()
    for sigma in all_permutations(k):
        coefficients[tuple(sorted(sums[i][sigma[i]] for i in range(k)))] += sigma.sign
    terms = {signature: c for signature, c in sorted(coefficients.items()) if c}
    return SnevilyPolynomial(k, terms)


def reduce_mod_char(poly: SnevilyPolynomial, c: int) -> SnevilyPolynomial:
    """Coefficients reduced modulo the characteristic c (unchanged for c = 0)"""
    if c == 0:
        return poly
    if not is_prime(c):
        raise FieldError(f"characteristic must be 0 or prime, got {c}")
    return SnevilyPolynomial(poly.k, {s: v % c for s, v in poly.terms.items() if v % c})


def find_snevily_permutation(spec: GroupSpec, A: Sequence[GroupElement],
                             B: Sequence[GroupElement]) -> Optional[Permutation]:
    """First permutation (most-constrained index first) with pairwise distinct sums, or None"""
    A, B = _validate_pair(spec, A, B)
    k = len(A)
    sums = _sum_indices(spec, A, B)
    assigned: List[Optional[int]] = [None] * k
    used_b, used_sums = set(), set()

    def options(i: int) -> List[int]:
        return [j for j in range(k) if j not in used_b and sums[i][j] not in used_sums]

    def search() -> bool:
        free = [i for i in range(k) if assigned[i] is None]
        if not free:
            return True
        i, choices = min(((i, options(i)) for i in free), key=lambda t: (len(t[1]), t[0]))
        for j in choices:
            assigned[i] = j
            used_b.add(j)
            used_sums.add(sums[i][j])
            if search():
                return True
            used_sums.discard(sums[i][j])
            used_b.discard(j)
            assigned[i] = None
        return False

    if not search():
        logger.debug("no distinct-sum permutation exists for k=%d in %s", k, spec)
        return None
    return Permutation(tuple(assigned))


def sum_matrix(ctx: FieldCtx, spec: GroupSpec, A: Sequence[GroupElement], B: Sequence[GroupElement],
               phi: Mapping[GroupElement, FieldElem]) -> Matrix:
    """L with L[i][j] = phi(a_i + b_j)"""
    try:
        rows = [[phi[add(spec, a, b)] for b in B] for a in A]
    except KeyError as e:
        raise InstanceError(f"phi is undefined at {e.args[0]}") from None
    return Matrix.from_rows(ctx, rows, len(B))


def _check_budget(what: str, required: int, budget: int) -> None:
    if required > budget:
        raise BudgetExceededError(what, required, budget)


def cauchy_binet_check(ctx: FieldCtx, spec: GroupSpec, A: Sequence[GroupElement], B: Sequence[GroupElement],
                       phi: Mapping[GroupElement, FieldElem], max_subsets: int = DEFAULT_MAX_SUBSETS) -> bool:
    """Det L equals the sum over k-sets of characters of (prod lambda) * Det(chi(A)) * Det(chi(B))"""
    A, B = _validate_pair(spec, A, B)
    k, m = len(A), spec.order
    _check_budget("Cauchy-Binet expansion", math.comb(m, k), max_subsets)

    L = sum_matrix(ctx, spec, A, B, phi)
    lhs = determinant(ctx, L)

    fourier = fourier_coefficients(ctx, spec, phi)
    chars = dual_elements(spec)
    M = Matrix.from_rows(ctx, [[fourier[u] * evaluate(ctx, spec, u, a) for u in chars] for a in A], m)
    N = Matrix.from_rows(ctx, [[evaluate(ctx, spec, u, b) for u in chars] for b in B], m)
    factorization_holds = matmul(M, transpose(N)) == L
    if not factorization_holds:
        logger.warning("L != M N^T in %s for %s", ctx.name, spec)

    rhs = ctx.zero()
    for us in itertools.combinations(chars, k):
        weight = ctx.one()
        for u in us:
            weight = weight * fourier[u]
        if weight.is_zero():
            continue
        rhs = rhs + weight * determinant(ctx, char_matrix(ctx, spec, us, A)) \
            * determinant(ctx, char_matrix(ctx, spec, us, B))
    return factorization_holds and lhs == rhs


def _char2_term(ctx: FieldCtx, spec: GroupSpec, us: Sequence[Character], sums: Sequence[GroupElement],
                fourier) -> FieldElem:
    """Det of the matrix with (i, j) entry lambda_{u_j} * chi_{u_j}(sums[i])"""
    rows = [[fourier[u] * evaluate(ctx, spec, u, g) for u in us] for g in sums]
    return determinant(ctx, Matrix.from_rows(ctx, rows, len(us)))


def char2_identity_check(ctx: FieldCtx, spec: GroupSpec, A: Sequence[GroupElement], B: Sequence[GroupElement],
                         phi: Mapping[GroupElement, FieldElem], max_subsets: int = DEFAULT_MAX_SUBSETS) -> bool:
    """In characteristic 2: Det L equals the sum over (character k-set, permutation) of the term determinants"""
    if ctx.characteristic != 2:
        raise FieldError(f"the identity holds in characteristic 2, {ctx.name} has characteristic {ctx.characteristic}")
    A, B = _validate_pair(spec, A, B)
    if spec.order % 2 == 0:
        raise InstanceError(f"group order {spec.order} is even")
    k, m = len(A), spec.order
    _check_budget("characteristic-2 expansion", math.comb(m, k) * math.factorial(k), max_subsets)

    lhs = determinant(ctx, sum_matrix(ctx, spec, A, B, phi))
    fourier = fourier_coefficients(ctx, spec, phi)
    support = fourier.support()
    sum_lists = [transversal_sums(spec, A, B, sigma) for sigma in all_permutations(k)]
    rhs = ctx.zero()
    for us in itertools.combinations(support, k):
        for sums in sum_lists:
            rhs = rhs + _char2_term(ctx, spec, us, sums, fourier)
    return lhs == rhs


def snevily_rhs_vanishes(ctx: FieldCtx, spec: GroupSpec, A: Sequence[GroupElement], B: Sequence[GroupElement],
                         phi: Mapping[GroupElement, FieldElem], sigma: Permutation) -> bool:
    """For sigma with a repeated sum, every term determinant of sigma has two equal rows and vanishes"""
    A, B = _validate_pair(spec, A, B)
    sums = transversal_sums(spec, A, B, sigma)
    if len(set(sums)) == len(sums):
        raise InstanceError(f"sums of {sigma} are pairwise distinct")
    fourier = fourier_coefficients(ctx, spec, phi)
    return all(_char2_term(ctx, spec, us, sums, fourier).is_zero()
               for us in itertools.combinations(dual_elements(spec), len(A)))


def _indicator(ctx: FieldCtx, spec: GroupSpec, support) -> Dict[GroupElement, FieldElem]:
    one, zero = ctx.one(), ctx.zero()
    return {g: one if g in support else zero for g in enumerate_elements(spec)}


def lemma4_indicator_phi(ctx: FieldCtx, spec: GroupSpec, A: Sequence[GroupElement], B: Sequence[GroupElement],
                         max_attempts: int = 64, seed: int = 0) -> Dict[GroupElement, FieldElem]:
    """A concrete phi: G -> F with Det(phi(a_i + b_j)) != 0.

    Tries the indicator of the sums of the distinguished permutation first, then
    g_i -> zeta^i, then seeded pseudorandom assignments.
    """
    A, B = _validate_pair(spec, A, B)
    pi = lemma4_permutation(spec, A, B)
    elements = enumerate_elements(spec)

    def candidates():
        yield "indicator", _indicator(ctx, spec, set(transversal_sums(spec, A, B, pi)))
        yield "zeta powers", {g: ctx.zeta_pow(i) for i, g in enumerate(elements)}
        rng = np.random.default_rng(seed)
        for _ in range(max_attempts):
            yield "pseudorandom", {g: random_element(ctx, rng) for g in elements}

    for label, phi in candidates():
        if not determinant(ctx, sum_matrix(ctx, spec, A, B, phi)).is_zero():
            if label != "indicator":
                logger.info("indicator specialization vanished; using %s values", label)
            return phi
    raise SpecializationError(f"no nonvanishing specialization found in {ctx.name} "
                              f"after {max_attempts + 2} attempts")


def verify_theorem1_witness(ctx: FieldCtx, spec: GroupSpec, A: Sequence[GroupElement],
                            B: Sequence[GroupElement], chars: Sequence[Character]) -> bool:
    """True iff both Det(chi_i(a_j)) and Det(chi_i(b_j)) are nonzero"""
    if not len(chars) == len(A) == len(B):
        raise InstanceError(f"{len(chars)} characters for sets of sizes {len(A)} and {len(B)}")
    chars = as_characters(spec, chars)
    det_a = determinant(ctx, char_matrix(ctx, spec, chars, A))
    det_b = determinant(ctx, char_matrix(ctx, spec, chars, B))
    return not det_a.is_zero() and not det_b.is_zero()


PERMUTATION_WITNESS_KINDS = ("lemma4", "snevily")


def permutation_witness_to_json(kind: str, spec: GroupSpec, A: Sequence[GroupElement], B: Sequence[GroupElement],
                                sigma: Permutation) -> Dict[str, object]:
    """Certificate for a distinguished (lemma4) or distinct-sum (snevily) permutation"""
    if kind not in PERMUTATION_WITNESS_KINDS:
        raise InstanceError(f"unknown permutation witness kind {kind!r}")
    return {
        "kind": kind,
        "group": format_group_spec(spec),
        "set_a": [list(a.coords) for a in A],
        "set_b": [list(b.coords) for b in B],
        "permutation": list(sigma.one_line),
        "sums": [list(g.coords) for g in transversal_sums(spec, A, B, sigma)],
    }


def verify_permutation_witness_json(data: Mapping[str, object], max_k: int = DEFAULT_MAX_K) -> bool:
    """Re-check a saved permutation witness against its defining property"""
    kind = data.get("kind")
    if kind not in PERMUTATION_WITNESS_KINDS:
        raise ParseError(f"unknown permutation witness kind {kind!r}")
    try:
        spec = parse_group_spec(str(data["group"]))
        A = [spec.element(c) for c in data["set_a"]]
        B = [spec.element(c) for c in data["set_b"]]
        sigma = Permutation(tuple(data["permutation"]))
    except KeyError as e:
        raise ParseError(f"witness is missing the {e.args[0]!r} entry") from None
    except (TypeError, GroupError, InstanceError) as e:
        raise ParseError(f"witness is malformed: {e}") from e
    if kind == "snevily":
        return is_snevily_permutation(spec, A, B, sigma)
    return count_attaining(spec, A, B, multiset_signature(spec, A, B, sigma), max_k) == 1
