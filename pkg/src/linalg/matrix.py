"""Dense n x n matrices over a FieldCtx.

Entries are held row-major as integer encodings; ``A[i, j]`` returns a Felt.
Indices in this module are 0-based: ``matrix_unit(0, 0, n, ctx)`` is E_11.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

from src.errors import DimensionMismatch, MatrixFormatError, MixedFields, OutOfRange, Singular, VerificationError
from src.fields import Felt, FieldCtx


@dataclass(frozen=True)
class Mat:
    n: int
    ctx: FieldCtx
    entries: tuple[int, ...]

    def __post_init__(self):
        if len(self.entries) != self.n * self.n:
            raise DimensionMismatch(f"{len(self.entries)} entries do not fill a {self.n}x{self.n} matrix")

    def __getitem__(self, index) -> Felt:
        i, j = index
        return Felt(self.entries[i * self.n + j], self.ctx)

    def code(self, i: int, j: int) -> int:
        return self.entries[i * self.n + j]

    @property
    def rows(self) -> list[list[int]]:
        n = self.n
        return [list(self.entries[i * n:(i + 1) * n]) for i in range(n)]

    def is_zero(self) -> bool:
        return not any(self.entries)

    def __matmul__(self, other):
        return mat_mul(self, other)

    def __add__(self, other):
        return mat_add(self, other)

    def __sub__(self, other):
        return mat_sub(self, other)

    def __repr__(self):
        return f"Mat({format_matrix(self)!r}, q={self.ctx.q})"


class RankNormalForm(NamedTuple):
    D: Mat
    E: Mat
    r: int


# construction

def from_rows(rows: Sequence[Sequence], ctx: FieldCtx) -> Mat:
    n = len(rows)
    if any(len(row) != n for row in rows):
        raise DimensionMismatch("matrix rows must form a square array")
    entries = []
    for row in rows:
        for value in row:
            if isinstance(value, Felt):
                if value.ctx != ctx:
                    raise MixedFields(f"entry {value!r} does not belong to {ctx}")
                entries.append(value.code)
            else:
                entries.append(ctx.check(value))
    return Mat(n, ctx, tuple(entries))


def zero(n: int, ctx: FieldCtx) -> Mat:
    return Mat(n, ctx, (0,) * (n * n))


def identity(n: int, ctx: FieldCtx) -> Mat:
    return idempotent(n, n, ctx)


def idempotent(r: int, n: int, ctx: FieldCtx) -> Mat:
    """e_r = diag(1, ..., 1, 0, ..., 0) with r ones."""
    if not 0 <= r <= n:
        raise OutOfRange(f"r={r} is outside [0, {n}]")
    return Mat(n, ctx, tuple(int(i == j and i < r) for i in range(n) for j in range(n)))


def matrix_unit(i: int, j: int, n: int, ctx: FieldCtx) -> Mat:
    entries = [0] * (n * n)
    entries[i * n + j] = 1
    return Mat(n, ctx, tuple(entries))


def permutation_matrix(one_line: Sequence[int], ctx: FieldCtx) -> Mat:
    """P_w with (P_w)[w(j), j] = 1, for w given 1-based in one-line notation."""
    n = len(one_line)
    entries = [0] * (n * n)
    for j, image in enumerate(one_line):
        entries[(image - 1) * n + j] = 1
    return Mat(n, ctx, tuple(entries))


# canonical order

def mat_index(A: Mat) -> int:
    """Base-q row-major index; entry (0, 0) is the most significant digit."""
    value = 0
    for code in A.entries:
        value = value * A.ctx.q + code
    return value


def mat_from_index(value: int, n: int, ctx: FieldCtx) -> Mat:
    q = ctx.q
    if not 0 <= value < q ** (n * n):
        raise OutOfRange(f"index {value} is outside [0, {q}^{n * n})")
    entries = []
    for _ in range(n * n):
        entries.append(value % q)
        value //= q
    return Mat(n, ctx, tuple(reversed(entries)))


# ring operations

def _check_pair(A: Mat, B: Mat):
    if A.ctx != B.ctx:
        raise MixedFields(f"matrices over {A.ctx} and {B.ctx} cannot be combined")
    if A.n != B.n:
        raise DimensionMismatch(f"{A.n}x{A.n} and {B.n}x{B.n} matrices cannot be combined")


def mat_add(A: Mat, B: Mat) -> Mat:
    _check_pair(A, B)
    add = A.ctx.add
    return Mat(A.n, A.ctx, tuple(add(a, b) for a, b in zip(A.entries, B.entries)))


def mat_sub(A: Mat, B: Mat) -> Mat:
    _check_pair(A, B)
    sub = A.ctx.sub
    return Mat(A.n, A.ctx, tuple(sub(a, b) for a, b in zip(A.entries, B.entries)))


def mat_mul(A: Mat, B: Mat) -> Mat:
    _check_pair(A, B)
    ctx, n = A.ctx, A.n
    add, mul = ctx.add, ctx.mul
    a, b = A.entries, B.entries
    out = []
    for i in range(n):
        for j in range(n):
            acc = 0
            for k in range(n):
                x = a[i * n + k]
                if x:
                    acc = add(acc, mul(x, b[k * n + j]))
            out.append(acc)
    return Mat(n, ctx, tuple(out))


def mat_transpose(A: Mat) -> Mat:
    n = A.n
    return Mat(n, A.ctx, tuple(A.entries[j * n + i] for i in range(n) for j in range(n)))


def trace_form(A: Mat, B: Mat) -> Felt:
    """tr(A B^T) = sum of A_ij * B_ij."""
    _check_pair(A, B)
    add, mul = A.ctx.add, A.ctx.mul
    acc = 0
    for a, b in zip(A.entries, B.entries):
        if a and b:
            acc = add(acc, mul(a, b))
    return Felt(acc, A.ctx)


def trace(A: Mat) -> Felt:
    return trace_form(A, identity(A.n, A.ctx))


# elimination

def _eliminate(rows: list[list[int]], ctx: FieldCtx):
    """Forward elimination in place. Returns (rank, signed product of pivots, pivot columns)."""
    add, mul, neg, inv = ctx.add, ctx.mul, ctx.neg, ctx.inv
    ncols = len(rows[0]) if rows else 0
    rank = 0
    det = 1
    pivots = []
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if pivot is None:
            continue
        if pivot != rank:
            rows[rank], rows[pivot] = rows[pivot], rows[rank]
            det = neg(det)
        head = rows[rank]
        det = mul(det, head[col])
        head_inv = inv(head[col])
        for i in range(rank + 1, len(rows)):
            factor = rows[i][col]
            if factor:
                factor = neg(mul(factor, head_inv))
                row = rows[i]
                for k in range(col, ncols):
                    if head[k]:
                        row[k] = add(row[k], mul(factor, head[k]))
        pivots.append(col)
        rank += 1
        if rank == len(rows):
            break
    return rank, det, pivots


def rank_of_rows(rows: Sequence[Sequence[int]], ctx: FieldCtx) -> int:
    """Rank of a rectangular array of encodings."""
    work = [list(row) for row in rows]
    if not work or not work[0]:
        return 0
    return _eliminate(work, ctx)[0]


def det(A: Mat) -> Felt:
    rank, value, _ = _eliminate(A.rows, A.ctx)
    return Felt(value if rank == A.n else 0, A.ctx)


def rank(A: Mat) -> int:
    return _eliminate(A.rows, A.ctx)[0]


def is_invertible(A: Mat) -> bool:
    return rank(A) == A.n


def submatrix_rank(A: Mat, row_stop: int, col_stop: int, row_start: int = 0, col_start: int = 0) -> int:
    rows = [A.rows[i][col_start:col_stop] for i in range(row_start, row_stop)]
    return rank_of_rows(rows, A.ctx)


def leading_principal_minors(A: Mat) -> list[Felt]:
    minors = []
    for k in range(1, A.n + 1):
        block = [row[:k] for row in A.rows[:k]]
        r, value, _ = _eliminate(block, A.ctx)
        minors.append(Felt(value if r == k else 0, A.ctx))
    return minors


def mat_inverse(A: Mat) -> Mat:
    """Gauss-Jordan on [A | I]."""
    ctx, n = A.ctx, A.n
    add, mul, neg, inv = ctx.add, ctx.mul, ctx.neg, ctx.inv
    work = [row + [int(i == j) for j in range(n)] for i, row in enumerate(A.rows)]
    for col in range(n):
        pivot = next((i for i in range(col, n) if work[i][col]), None)
        if pivot is None:
            raise Singular("matrix is not invertible")
        work[col], work[pivot] = work[pivot], work[col]
        scale = inv(work[col][col])
        work[col] = [mul(scale, x) for x in work[col]]
        for i in range(n):
            factor = work[i][col]
            if i != col and factor:
                factor = neg(factor)
                work[i] = [add(x, mul(factor, y)) for x, y in zip(work[i], work[col])]
    return Mat(n, ctx, tuple(x for row in work for x in row[n:]))


def is_lower_triangular(A: Mat) -> bool:
    return all(A.code(i, j) == 0 for i in range(A.n) for j in range(i + 1, A.n))


def is_upper_triangular(A: Mat) -> bool:
    return all(A.code(i, j) == 0 for i in range(A.n) for j in range(i))


# rank normal form

def _row_axpy(rows, target, source, factor, add, mul):
    rows[target] = [add(x, mul(factor, y)) for x, y in zip(rows[target], rows[source])]


def _col_swap(rows, a, b):
    for row in rows:
        row[a], row[b] = row[b], row[a]


def _col_axpy(rows, target, source, factor, add, mul):
    for row in rows:
        row[target] = add(row[target], mul(factor, row[source]))


def rank_normal_form(B: Mat) -> RankNormalForm:
    """Invertible D, E with D B^T E^-1 = e_r, r = rank(B).

    Gauss-Jordan on B^T records its row operations in D; the column
    operations that then reduce the echelon form to e_r are recorded in
    C = E^-1.
    """
    ctx, n = B.ctx, B.n
    add, mul, neg, inv = ctx.add, ctx.mul, ctx.neg, ctx.inv
    work = mat_transpose(B).rows
    d_rows = identity(n, ctx).rows
    r = 0
    pivots = []
    for col in range(n):
        pivot = next((i for i in range(r, n) if work[i][col]), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        d_rows[r], d_rows[pivot] = d_rows[pivot], d_rows[r]
        scale = inv(work[r][col])
        work[r] = [mul(scale, x) for x in work[r]]
        d_rows[r] = [mul(scale, x) for x in d_rows[r]]
        for i in range(n):
            factor = work[i][col]
            if i != r and factor:
                _row_axpy(work, i, r, neg(factor), add, mul)
                _row_axpy(d_rows, i, r, neg(factor), add, mul)
        pivots.append(col)
        r += 1

    c_rows = identity(n, ctx).rows
    for i, col in enumerate(pivots):
        if col != i:
            _col_swap(work, i, col)
            _col_swap(c_rows, i, col)
        for j in range(n):
            factor = work[i][j]
            if j != i and factor:
                _col_axpy(work, j, i, neg(factor), add, mul)
                _col_axpy(c_rows, j, i, neg(factor), add, mul)

    D = from_rows(d_rows, ctx)
    C = from_rows(c_rows, ctx)
    E = mat_inverse(C)
    if mat_mul(mat_mul(D, mat_transpose(B)), mat_inverse(E)) != idempotent(r, n, ctx):
        raise VerificationError("rank normal form failed its multiplication check")
    return RankNormalForm(D, E, r)


# text format

def parse_matrix(text: str, ctx: FieldCtx) -> Mat:
    """Parse rows separated by ';' and entries by ',', e.g. "0,1;1,0"."""
    try:
        rows = [[int(token) for token in row.split(",")] for row in text.strip().split(";")]
    except ValueError as exc:
        raise MatrixFormatError(f"cannot parse matrix {text!r}: {exc}") from exc
    try:
        return from_rows(rows, ctx)
    except (DimensionMismatch, OutOfRange) as exc:
        raise MatrixFormatError(f"cannot parse matrix {text!r}: {exc}") from exc


def format_matrix(A: Mat) -> str:
    return ";".join(",".join(str(x) for x in row) for row in A.rows)
