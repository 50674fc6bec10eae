"""
Linear matroids over the character group and a matroid-intersection solver.

``LinearMatroid.over_characters(A)`` is the matroid M_A on ground set G^ whose
independent sets are the character sets with linearly independent value vectors
on A. ``common_basis`` grows a common independent set of two such matroids along
shortest augmenting paths of the exchange graph; the resulting basis is a witness
that both character matrices are nonsingular.
"""

import itertools
import logging
import math
from dataclasses import dataclass, field
from typing import Dict, Hashable, List, Mapping, Optional, Sequence, Tuple

import networkx as nx

from ..core.abelian_group import GroupElement, GroupSpec, enumerate_elements, format_group_spec, parse_group_spec
from ..core.characters import Character, as_characters, character_values, dual_elements
from ..core.fields import FieldCtx, FieldElem, build_field, format_elem, format_field_spec, parse_elem
from ..core.linalg import Matrix, char_matrix, determinant, rank
from ..exceptions import BudgetExceededError, GroupError, InstanceError, ParseError

logger = logging.getLogger(__name__)

SOURCE = "source"
SINK = "sink"


@dataclass(frozen=True, eq=False)
class LinearMatroid:
    """Column matroid of a k x |ground| matrix over a FieldCtx"""
    ctx: FieldCtx
    spec: GroupSpec
    ground: Tuple[Hashable, ...]
    anchors: Tuple[Hashable, ...]
    vectors: Dict[Hashable, Tuple[FieldElem, ...]]
    _positions: Dict[Hashable, int] = field(init=False, repr=False)
    matrix: Matrix = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_positions", {e: i for i, e in enumerate(self.ground)})
        rows = [[self.vectors[e][i] for e in self.ground] for i in range(len(self.anchors))]
        object.__setattr__(self, "matrix", Matrix.from_rows(self.ctx, rows, len(self.ground)))

    @classmethod
    def over_characters(cls, ctx: FieldCtx, spec: GroupSpec, anchors: Sequence[GroupElement]) -> 'LinearMatroid':
        """M_A: ground set G^, the vector of u is (chi_u(a))_{a in A}"""
        anchors = _distinct(anchors, "anchor set")
        for a in anchors:
            spec.validate(a)
        ground = dual_elements(spec)
        values = character_values(ctx, spec, ground, anchors)
        return cls(ctx, spec, ground, anchors, {u: tuple(row) for u, row in zip(ground, values)})

    @classmethod
    def over_elements(cls, ctx: FieldCtx, spec: GroupSpec, chars: Sequence[Character]) -> 'LinearMatroid':
        """The dual matroid: ground set G, the vector of g is (chi(g))_{chi in X}"""
        chars = _distinct(as_characters(spec, chars), "character set")
        ground = enumerate_elements(spec)
        values = character_values(ctx, spec, chars, ground)
        vectors = {g: tuple(row[j] for row in values) for j, g in enumerate(ground)}
        return cls(ctx, spec, ground, chars, vectors)

    @property
    def k(self) -> int:
        return len(self.anchors)

    def position(self, e: Hashable) -> int:
        try:
            return self._positions[e]
        except KeyError:
            raise InstanceError(f"{e} is not in the ground set") from None

    def restrict(self, subset: Sequence[Hashable]) -> Matrix:
        """k x |subset| matrix whose columns are the vectors of subset"""
        return self.matrix.column_submatrix([self.position(e) for e in subset])


def _distinct(items: Sequence, what: str) -> Tuple:
    items = tuple(items)
    if len(set(items)) != len(items):
        raise InstanceError(f"{what} contains duplicates")
    return items


def is_independent(mat: LinearMatroid, subset) -> bool:
    """True iff the vectors of subset are linearly independent"""
    members = sorted(set(subset), key=mat.position)
    if len(members) > mat.k:
        return False
    if not members:
        return True
    return rank(mat.ctx, mat.restrict(members)) == len(members)


def matroid_rank(mat: LinearMatroid) -> int:
    return rank(mat.ctx, mat.matrix)


class SpanCoordinates:
    """Coordinates of vectors over a fixed independent set of columns.

    Gauss-Jordan on [V | I] turns V into [I_r; 0] and leaves T with T V = [I_r; 0],
    so T y is [c; 0] exactly when y = V c.
    """

    def __init__(self, ctx: FieldCtx, k: int, columns: Sequence[Sequence[FieldElem]]):
        self.ctx = ctx
        self.r = len(columns)
        zero, one = ctx.zero_value(), ctx.one().value
        rows = [[col[i].value for col in columns] + [one if j == i else zero for j in range(k)]
                for i in range(k)]
        for col in range(self.r):
            pivot = next((r for r in range(col, k) if not ctx.value_is_zero(rows[r][col])), None)
            if pivot is None:
                raise InstanceError("columns are linearly dependent")
            rows[col], rows[pivot] = rows[pivot], rows[col]
            inverse = ctx.inv_value(rows[col][col])
            rows[col] = [ctx.mul_values(inverse, x) for x in rows[col]]
            for r in range(k):
                factor = rows[r][col]
                if r != col and not ctx.value_is_zero(factor):
                    rows[r] = [ctx.sub_values(x, ctx.mul_values(factor, y)) for x, y in zip(rows[r], rows[col])]
        self.transform = [row[self.r:] for row in rows]

    def solve(self, vector: Sequence[FieldElem]) -> Optional[List[tuple]]:
        """Values c with vector = sum_i c_i * column_i, or None outside the span"""
        ctx = self.ctx
        image = []
        for row in self.transform:
            total = ctx.zero_value()
            for t, y in zip(row, vector):
                if not ctx.value_is_zero(t):
                    total = ctx.add_values(total, ctx.mul_values(t, y.value))
            image.append(total)
        if any(not ctx.value_is_zero(z) for z in image[self.r:]):
            return None
        return image[:self.r]


class _IntersectionSearch:
    """Private state of one common_basis run"""

    def __init__(self, matA: LinearMatroid, matB: LinearMatroid):
        self.mats = (matA, matB)
        self.order = matA.position
        self.solves = 0

    def coordinates(self, current: List[Hashable],
                    stop_early: bool = True) -> Tuple[Tuple[Dict, Dict], Optional[Hashable]]:
        """Span coordinates of the outside elements in both matroids.

        The second entry is the first outside y independent of ``current`` in both, which
        is then the whole shortest augmenting path. With ``stop_early`` the scan ends there.
        """
        direct = None
        inside = frozenset(current)
        solvers = [SpanCoordinates(mat.ctx, mat.k, [mat.vectors[x] for x in current]) for mat in self.mats]
        coords: Tuple[Dict, Dict] = ({}, {})
        for y in self.mats[0].ground:
            if y in inside:
                continue
            for which, mat in enumerate(self.mats):
                coords[which][y] = solvers[which].solve(mat.vectors[y])
            self.solves += 2
            if direct is None and coords[0][y] is None and coords[1][y] is None:
                direct = y
                if stop_early:
                    break
        return coords, direct

    def exchange_graph(self, current: List[Hashable], coords: Tuple[Dict, Dict] = None) -> nx.DiGraph:
        """Edges from one span solve per outside element and matroid.

        For independent I: I + y is independent iff y is outside span(I), and
        I - x + y is independent iff that holds or x has a nonzero coordinate in y.
        """
        if coords is None:
            coords, _ = self.coordinates(current, stop_early=False)
        coords_a, coords_b = coords
        graph = nx.DiGraph()
        graph.add_nodes_from([SOURCE, SINK])
        graph.add_nodes_from(self.mats[0].ground)
        ctx = self.mats[0].ctx
        for y in coords_a:
            if coords_a[y] is None:
                graph.add_edge(SOURCE, y)
            if coords_b[y] is None:
                graph.add_edge(y, SINK)
        for slot, x in enumerate(current):
            for y in coords_a:
                a, b = coords_a[y], coords_b[y]
                if a is None or not ctx.value_is_zero(a[slot]):
                    graph.add_edge(x, y)
                if b is None or not ctx.value_is_zero(b[slot]):
                    graph.add_edge(y, x)
        return graph

    def augmenting_path(self, graph: nx.DiGraph) -> Optional[List[Hashable]]:
        """Shortest source-sink path, ties broken lexicographically by ground position.

        Walks forward from the source, always to the earliest neighbour one step
        closer to the sink.
        """
        distance = dict(nx.single_target_shortest_path_length(graph, SINK))
        if SOURCE not in distance:
            return None
        path, node = [], SOURCE
        while distance[node] > 1:
            node = min((v for v in graph.successors(node) if distance.get(v) == distance[node] - 1),
                       key=self.order)
            path.append(node)
        return path


def common_basis(matA: LinearMatroid, matB: LinearMatroid) -> Optional[Tuple[Hashable, ...]]:
    """A k-set independent in both matroids, or None if augmentation stalls below k"""
    if matA.ground != matB.ground:
        raise InstanceError("matroids have different ground sets")
    if matA.k != matB.k:
        raise InstanceError(f"matroid ranks differ: {matA.k} vs {matB.k}")
    target = matA.k
    if target > len(matA.ground):
        return None

    search = _IntersectionSearch(matA, matB)
    current: List[Hashable] = []
    while len(current) < target:
        coords, direct = search.coordinates(current)
        path = [direct] if direct is not None else search.augmenting_path(search.exchange_graph(current, coords))
        if path is None:
            logger.debug("augmentation stalled at size %d of %d after %d span solves",
                         len(current), target, search.solves)
            return None
        current = sorted(set(current).symmetric_difference(path), key=matA.position)
        logger.debug("augmented along %d-element path to size %d", len(path), len(current))
    logger.debug("common basis of size %d found with %d span solves", target, search.solves)
    return tuple(current)


def brute_force_common_basis(matA: LinearMatroid, matB: LinearMatroid,
                             max_subsets: int = 1_000_000) -> Optional[Tuple[Hashable, ...]]:
    """First k-subset in canonical lexicographic order that is independent in both matroids"""
    if matA.ground != matB.ground:
        raise InstanceError("matroids have different ground sets")
    if matA.k != matB.k:
        raise InstanceError(f"matroid ranks differ: {matA.k} vs {matB.k}")
    m, k = len(matA.ground), matA.k
    if k > m:
        return None
    required = math.comb(m, k)
    if required > max_subsets:
        raise BudgetExceededError("brute-force common basis", required, max_subsets)
    for subset in itertools.combinations(matA.ground, k):
        if is_independent(matA, subset) and is_independent(matB, subset):
            return subset
    return None


def dual_witness(ctx: FieldCtx, spec: GroupSpec, X: Sequence[Character],
                 Psi: Sequence[Character]) -> Optional[Tuple[GroupElement, ...]]:
    """Elements a_1..a_k with both (chi_i(a_j)) and (psi_i(a_j)) nonsingular"""
    if len(X) != len(Psi):
        raise InstanceError(f"character sets differ in size: {len(X)} vs {len(Psi)}")
    matX = LinearMatroid.over_elements(ctx, spec, X)
    matPsi = LinearMatroid.over_elements(ctx, spec, Psi)
    return common_basis(matX, matPsi)


def verify_theorem2_witness(ctx: FieldCtx, spec: GroupSpec, X: Sequence[Character],
                            Psi: Sequence[Character], elems: Sequence[GroupElement]) -> bool:
    """True iff both Det(chi_i(a_j)) and Det(psi_i(a_j)) are nonzero"""
    if not len(X) == len(Psi) == len(elems):
        raise InstanceError("witness size does not match the character sets")
    det_x = determinant(ctx, char_matrix(ctx, spec, as_characters(spec, X), elems))
    det_psi = determinant(ctx, char_matrix(ctx, spec, as_characters(spec, Psi), elems))
    return not det_x.is_zero() and not det_psi.is_zero()


def theorem1_characters(ctx: FieldCtx, spec: GroupSpec, A: Sequence[GroupElement],
                        B: Sequence[GroupElement]) -> Optional[Tuple[Character, ...]]:
    """Characters chi_1..chi_k with both (chi_i(a_j)) and (chi_i(b_j)) nonsingular"""
    if len(A) != len(B):
        raise InstanceError(f"sets differ in size: {len(A)} vs {len(B)}")
    return common_basis(LinearMatroid.over_characters(ctx, spec, A),
                        LinearMatroid.over_characters(ctx, spec, B))


WITNESS_KINDS = ("theorem1", "theorem2")


def _coords_list(items) -> List[List[int]]:
    return [list(x.coords) for x in items]


def witness_to_json(ctx: FieldCtx, spec: GroupSpec, A: Sequence[GroupElement], B: Sequence[GroupElement],
                    chars: Sequence[Character]) -> Dict[str, object]:
    """Self-contained certificate for a common character basis of A and B"""
    chars = as_characters(spec, chars)
    return {
        "kind": "theorem1",
        "group": format_group_spec(spec),
        "field": format_field_spec(ctx),
        "set_a": _coords_list(A),
        "set_b": _coords_list(B),
        "characters": _coords_list(chars),
        "detA": format_elem(determinant(ctx, char_matrix(ctx, spec, chars, A))),
        "detB": format_elem(determinant(ctx, char_matrix(ctx, spec, chars, B))),
    }


def theorem2_witness_to_json(ctx: FieldCtx, spec: GroupSpec, X: Sequence[Character], Psi: Sequence[Character],
                             elems: Sequence[GroupElement]) -> Dict[str, object]:
    """Self-contained certificate for a common element basis of X and Psi"""
    X, Psi = as_characters(spec, X), as_characters(spec, Psi)
    return {
        "kind": "theorem2",
        "group": format_group_spec(spec),
        "field": format_field_spec(ctx),
        "chars_x": _coords_list(X),
        "chars_psi": _coords_list(Psi),
        "elements": _coords_list(elems),
        "detX": format_elem(determinant(ctx, char_matrix(ctx, spec, X, elems))),
        "detPsi": format_elem(determinant(ctx, char_matrix(ctx, spec, Psi, elems))),
    }


def load_witness_context(data: Mapping[str, object]) -> Tuple[FieldCtx, GroupSpec]:
    """Rebuild the group and field a witness was produced in"""
    try:
        spec = parse_group_spec(str(data["group"]))
        field_text = str(data.get("field", "cyc"))
    except KeyError as e:
        raise ParseError(f"witness is missing the {e.args[0]!r} entry") from None
    return build_field(field_text, spec.exponent), spec


def _witness_items(spec: GroupSpec, data: Mapping[str, object], key: str, wrap) -> List:
    try:
        return [wrap(coords) for coords in data[key]]
    except KeyError:
        raise ParseError(f"witness is missing the {key!r} entry") from None
    except (TypeError, GroupError) as e:
        raise ParseError(f"witness entry {key!r} is malformed: {e}") from e


def verify_witness_json(data: Mapping[str, object]) -> bool:
    """Recompute both determinants of a saved witness; True iff both are nonzero and match the stored values"""
    kind = data.get("kind", "theorem1")
    if kind not in WITNESS_KINDS:
        raise ParseError(f"unknown witness kind {kind!r}")
    ctx, spec = load_witness_context(data)

    def element(coords):
        return spec.element(coords)

    if kind == "theorem1":
        A = _witness_items(spec, data, "set_a", element)
        B = _witness_items(spec, data, "set_b", element)
        chars = _witness_items(spec, data, "characters", Character)
        recomputed = witness_to_json(ctx, spec, A, B, chars)
        stored = ("detA", "detB")
    else:
        X = _witness_items(spec, data, "chars_x", Character)
        Psi = _witness_items(spec, data, "chars_psi", Character)
        elems = _witness_items(spec, data, "elements", element)
        recomputed = theorem2_witness_to_json(ctx, spec, X, Psi, elems)
        stored = ("detX", "detPsi")

    for key in stored:
        if key in data and str(data[key]) != recomputed[key]:
            logger.warning("stored %s %s differs from recomputed %s", key, data[key], recomputed[key])
            return False
    return all(parse_elem(ctx, recomputed[key]) != ctx.zero() for key in stored)
