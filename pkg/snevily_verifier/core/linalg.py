"""
Exact dense linear algebra over a FieldCtx.

Plain Gaussian elimination with deterministic pivoting: the pivot of each column
is the topmost nonzero entry at or below the current row. The elimination loop
works on bare field values through the context's ``*_values`` methods.
"""

from dataclasses import dataclass
from typing import List, Sequence, Tuple

from .abelian_group import GroupElement, GroupSpec
from .characters import Character, character_values
from .fields import FieldCtx, FieldElem, format_elem
from ..exceptions import FieldError, InstanceError


@dataclass(frozen=True)
class Matrix:
    """A rows x cols matrix of elements of one field"""
    ctx: FieldCtx
    rows: int
    cols: int
    entries: Tuple[Tuple[FieldElem, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(row) != self.cols for row in self.entries):
            raise InstanceError(f"entries do not form a {self.rows}x{self.cols} matrix")
        for row in self.entries:
            for e in row:
                if e.ctx is not self.ctx:
                    raise FieldError(f"matrix over {self.ctx.name} holds an element of {e.ctx.name}")

    @classmethod
    def from_rows(cls, ctx: FieldCtx, rows: Sequence[Sequence[FieldElem]], cols: int = None) -> 'Matrix':
        entries = tuple(tuple(row) for row in rows)
        if cols is None:
            cols = len(entries[0]) if entries else 0
        return cls(ctx, len(entries), cols, entries)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, index: Tuple[int, int]) -> FieldElem:
        i, j = index
        return self.entries[i][j]

    def column_submatrix(self, columns: Sequence[int]) -> 'Matrix':
        return Matrix.from_rows(self.ctx, [[row[j] for j in columns] for row in self.entries], len(columns))

    def __str__(self) -> str:
        return "\n".join(" ".join(format_elem(e) for e in row) for row in self.entries)


def identity_matrix(ctx: FieldCtx, size: int) -> Matrix:
    one, zero = ctx.one(), ctx.zero()
    return Matrix.from_rows(ctx, [[one if i == j else zero for j in range(size)] for i in range(size)], size)


def transpose(A: Matrix) -> Matrix:
    return Matrix.from_rows(A.ctx, [[A.entries[i][j] for i in range(A.rows)] for j in range(A.cols)], A.rows)


def matmul(A: Matrix, B: Matrix) -> Matrix:
    if A.cols != B.rows:
        raise InstanceError(f"cannot multiply {A.rows}x{A.cols} by {B.rows}x{B.cols}")
    if A.ctx is not B.ctx:
        raise FieldError("matrices over different fields")
    ctx = A.ctx
    product = []
    for i in range(A.rows):
        row = []
        for j in range(B.cols):
            total = ctx.zero()
            for t in range(A.cols):
                a = A.entries[i][t]
                if not a.is_zero():
                    total = total + a * B.entries[t][j]
            row.append(total)
        product.append(row)
    return Matrix.from_rows(ctx, product, B.cols)


def _eliminate(A: Matrix) -> Tuple[List[List[tuple]], int, int]:
    """Row echelon form on values; returns (rows, pivot count, number of row swaps)"""
    ctx = A.ctx
    is_zero, sub, mul = ctx.value_is_zero, ctx.sub_values, ctx.mul_values
    work = [[e.value for e in row] for row in A.entries]
    pivot_row, swaps = 0, 0
    for col in range(A.cols):
        if pivot_row == A.rows:
            break
        pivot = next((r for r in range(pivot_row, A.rows) if not is_zero(work[r][col])), None)
        if pivot is None:
            continue
        if pivot != pivot_row:
            work[pivot_row], work[pivot] = work[pivot], work[pivot_row]
            swaps += 1
        top = work[pivot_row]
        inverse = ctx.inv_value(top[col])
        live = [c for c in range(col + 1, A.cols) if not is_zero(top[c])]
        for r in range(pivot_row + 1, A.rows):
            row = work[r]
            if is_zero(row[col]):
                continue
            factor = mul(row[col], inverse)
            row[col] = ctx.zero_value()
            for c in live:
                row[c] = sub(row[c], mul(factor, top[c]))
        pivot_row += 1
    return work, pivot_row, swaps


def determinant(ctx: FieldCtx, A: Matrix) -> FieldElem:
    if not A.is_square:
        raise InstanceError(f"determinant of a non-square {A.rows}x{A.cols} matrix")
    if A.ctx is not ctx:
        raise FieldError(f"matrix over {A.ctx.name} passed with {ctx.name}")
    work, pivots, swaps = _eliminate(A)
    if pivots < A.rows:
        return ctx.zero()
    result = ctx.one().value
    for i in range(A.rows):
        result = ctx.mul_values(result, work[i][i])
    if swaps % 2:
        result = ctx.neg_value(result)
    return FieldElem(ctx, result)


def rank(ctx: FieldCtx, A: Matrix) -> int:
    if A.ctx is not ctx:
        raise FieldError(f"matrix over {A.ctx.name} passed with {ctx.name}")
    return _eliminate(A)[1]


def char_matrix(ctx: FieldCtx, spec: GroupSpec, chars: Sequence[Character],
                elems: Sequence[GroupElement]) -> Matrix:
    """Entry (i, j) is chi_i(elems[j])"""
    return Matrix.from_rows(ctx, character_values(ctx, spec, chars, elems), len(elems))
