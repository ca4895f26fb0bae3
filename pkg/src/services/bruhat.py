"""Permutations, LPU factorization and Bruhat cells of GL_n(F_q).

Permutations are 1-based in one-line notation and act on matrices through
P_w with (P_w)[w(j), j] = 1. Every invertible A factors as A = L P_w U with L
lower and U upper triangular; w is read off the northwest rank matrix

    rank(A[1..i, 1..j]) = #{l <= j : w(l) <= i}.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from itertools import permutations
from math import comb
from typing import NamedTuple

import numpy as np

from src.errors import Infeasible, OutOfRange, Singular, VerificationError
from src.fields import FieldCtx, as_field
from src.linalg import Mat, from_rows, gl_points, identity, mat_mul
from src.linalg.enumeration import point_to_mat
from src.linalg.kernels import determinants, index_chunks, run_partitioned
from src.linalg.matrix import is_invertible, leading_principal_minors, permutation_matrix, submatrix_rank

from .formulas import big_cell_size, gamma, stanley_f
from .sections import partial_trace_count

logger = logging.getLogger(__name__)

BUCKET_LIMIT = 200_000
ORACLE_MAX_N = 3
ORACLE_MAX_Q = 3
REPORT_MODES = ("oracle", "formula")


@dataclass(frozen=True, order=True)
class Perm:
    one_line: tuple[int, ...]

    def __post_init__(self):
        one_line = tuple(int(x) for x in self.one_line)
        if sorted(one_line) != list(range(1, len(one_line) + 1)):
            raise OutOfRange(f"{list(one_line)} is not a permutation of 1..{len(one_line)}")
        object.__setattr__(self, "one_line", one_line)

    @property
    def n(self) -> int:
        return len(self.one_line)

    def __call__(self, j: int) -> int:
        return self.one_line[j - 1]

    def __mul__(self, other: Perm) -> Perm:
        """(self * other)(j) = self(other(j))."""
        if other.n != self.n:
            raise OutOfRange(f"cannot compose permutations of {self.n} and {other.n} letters")
        return Perm(tuple(self(other(j)) for j in range(1, self.n + 1)))

    def inverse(self) -> Perm:
        out = [0] * self.n
        for j, image in enumerate(self.one_line, start=1):
            out[image - 1] = j
        return Perm(tuple(out))

    def length(self) -> int:
        return perm_length(self)

    def matrix(self, ctx: FieldCtx) -> Mat:
        return permutation_matrix(self.one_line, ctx)

    def __str__(self):
        return "(" + ",".join(str(x) for x in self.one_line) + ")"


class BruhatFactorization(NamedTuple):
    L: Mat
    w: Perm
    U: Mat


@dataclass(frozen=True)
class ComplementReport:
    n: int
    q: int
    mode: str
    complement_count: int
    min_section_count: int

    @property
    def equal(self) -> bool:
        return self.complement_count == self.min_section_count

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "q": self.q,
            "mode": self.mode,
            "complement_count": self.complement_count,
            "min_section_count": self.min_section_count,
            "equal": self.equal,
        }


def identity_perm(n: int) -> Perm:
    return Perm(tuple(range(1, n + 1)))


def perm_length(w: Perm) -> int:
    """Number of inversions."""
    line = w.one_line
    return sum(1 for a in range(len(line)) for b in range(a + 1, len(line)) if line[a] > line[b])


def longest_element(n: int) -> Perm:
    return Perm(tuple(range(n, 0, -1)))


def simple_transposition(i: int, n: int) -> Perm:
    if not 1 <= i < n:
        raise OutOfRange(f"s_{i} does not exist for n={n}")
    line = list(range(1, n + 1))
    line[i - 1], line[i] = line[i], line[i - 1]
    return Perm(tuple(line))


def all_perms(n: int) -> list[Perm]:
    return [Perm(p) for p in permutations(range(1, n + 1))]


def _northwest_ranks(A: Mat) -> list[list[int]]:
    n = A.n
    return [[submatrix_rank(A, i, j) if i and j else 0 for j in range(n + 1)] for i in range(n + 1)]


def permutation_from_ranks(A: Mat) -> Perm:
    """w with w(l) = i exactly where the northwest rank matrix jumps at (i, l)."""
    if not is_invertible(A):
        raise Singular("permutation of a singular matrix is undefined")
    R = _northwest_ranks(A)
    n = A.n
    line = [0] * n
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if R[i][j] - R[i - 1][j] - R[i][j - 1] + R[i - 1][j - 1] == 1:
                line[j - 1] = i
    return Perm(tuple(line))


def bruhat_decompose(A: Mat) -> BruhatFactorization:
    """A = L P_w U.

    Rows are processed top-down: the leftmost nonzero entry of row i sits in
    column j with w(j) = i, and that column is cleared in every lower row. The
    multipliers form the unit lower triangular L; row j of U is row w(j) of
    the reduced matrix.
    """
    if not is_invertible(A):
        raise Singular("bruhat_decompose needs an invertible matrix")
    ctx, n = A.ctx, A.n
    add, mul, neg, inv = ctx.add, ctx.mul, ctx.neg, ctx.inv
    work = A.rows
    lower = identity(n, ctx).rows
    line = [0] * n
    for i in range(n):
        j = next(col for col in range(n) if work[i][col])
        line[j] = i + 1
        head_inv = inv(work[i][j])
        for k in range(i + 1, n):
            if work[k][j]:
                factor = mul(work[k][j], head_inv)
                lower[k][i] = factor
                work[k] = [add(x, neg(mul(factor, y))) for x, y in zip(work[k], work[i])]
    w = Perm(tuple(line))
    upper = [work[w(j + 1) - 1] for j in range(n)]
    L, U = from_rows(lower, ctx), from_rows(upper, ctx)

    if mat_mul(mat_mul(L, w.matrix(ctx)), U) != A:
        raise VerificationError("L P_w U does not reproduce the input")
    if permutation_from_ranks(A) != w:
        raise VerificationError(f"elimination gave w={w}, rank matrix disagrees")
    return BruhatFactorization(L, w, U)


def cell_count(w: Perm, n: int, q: int) -> int:
    """|B^- P_w B| = (q-1)^n q^(2 C(n,2) - l(w))."""
    if w.n != n:
        raise OutOfRange(f"{w} is not a permutation of {n} letters")
    return (q - 1) ** n * q ** (2 * comb(n, 2) - perm_length(w))


def _bucket(n: int, ctx: FieldCtx, workers: int) -> Counter:
    """Counter of (w, a_11 == 0) over all of GL_n(F_q)."""
    points = gl_points(n, ctx)
    if len(points) > BUCKET_LIMIT:
        raise Infeasible(f"bucketing {len(points)} matrices exceeds {BUCKET_LIMIT}")

    def bucket(bounds):
        lo, hi = bounds
        tally = Counter()
        for row in points[lo:hi].tolist():
            A = point_to_mat(row, n, ctx)
            tally[(bruhat_decompose(A).w, row[0] == 0)] += 1
        return tally

    tally = run_partitioned(bucket, index_chunks(len(points), 4096), Counter(), workers=workers)
    logger.info("Bucketed %s matrices of GL_%s(F_%s) into %s cells", len(points), n, ctx.q, len({w for w, _ in tally}))
    return tally


def bruhat_cells(n: int, field, workers: int = 1) -> dict[Perm, int]:
    """Brute-force cell sizes, keyed by w in lexicographic order."""
    ctx = as_field(field)
    cells = Counter()
    for (w, _), count in _bucket(n, ctx, workers).items():
        cells[w] += count
    return dict(sorted(cells.items()))


def big_cell_membership(A: Mat) -> bool:
    """A in B^- B, by the factorization and by the leading principal minors."""
    if not is_invertible(A):
        raise Singular("big cell membership needs an invertible matrix")
    by_perm = bruhat_decompose(A).w == identity_perm(A.n)
    by_minors = all(leading_principal_minors(A))
    if by_perm != by_minors:
        raise VerificationError(f"big cell criteria disagree for {A}")
    return by_perm


def _check_oracle(n: int, q: int):
    if n > ORACLE_MAX_N or q > ORACLE_MAX_Q:
        raise Infeasible(f"brute force is limited to n<={ORACLE_MAX_N}, q<={ORACLE_MAX_Q}; got n={n}, q={q}")


def h0_cell_spectrum(n: int, field, workers: int = 1) -> frozenset[Perm]:
    """Cells contained in H_0 = {a_11 = 0}, measured by testing every member."""
    ctx = as_field(field)
    _check_oracle(n, ctx.q)
    tally = _bucket(n, ctx, workers)
    cells = {w for w, _ in tally}
    return frozenset(w for w in cells if not tally.get((w, False)))


def bruhat_leq(u: Perm, w: Perm) -> bool:
    """Bruhat order by the rank criterion on one-line notation."""
    n = u.n
    for i in range(1, n + 1):
        for k in range(1, n + 1):
            if sum(1 for a in range(i) if u.one_line[a] >= k) > sum(1 for a in range(i) if w.one_line[a] >= k):
                return False
    return True


def s1_below(w: Perm) -> bool:
    if w.n < 2:
        return False
    return bruhat_leq(simple_transposition(1, w.n), w)


def _leading_minor_complement(n: int, ctx: FieldCtx) -> int:
    points = gl_points(n, ctx)
    inside = np.ones(len(points), dtype=bool)
    for k in range(1, n):
        columns = [i * n + j for i in range(k) for j in range(k)]
        inside &= determinants(points[:, columns], k, ctx) != 0
    return int(len(points) - np.count_nonzero(inside))


def big_cell_complement_report(n: int, field, mode: str = "formula") -> ComplementReport:
    """|GL_n \\ B^- B| against the smallest hyperplane section f_1(n).

    Measures whether the two agree; equality is reported, never asserted.
    """
    ctx = as_field(field)
    q = ctx.q
    if n < 2:
        raise OutOfRange(f"n={n} must be at least 2")
    if mode == "formula":
        complement = gamma(n, q) - big_cell_size(n, q)
        minimum = stanley_f(1, n, q)
    elif mode == "oracle":
        if gamma(n, q) > BUCKET_LIMIT:
            raise Infeasible(f"GL_{n}(F_{q}) is too large for the leading-minor oracle")
        complement = _leading_minor_complement(n, ctx)
        minimum = partial_trace_count(1, n, ctx)
    else:
        raise OutOfRange(f"unknown mode {mode!r}; expected one of {REPORT_MODES}")
    report = ComplementReport(n=n, q=q, mode=mode, complement_count=complement, min_section_count=minimum)
    if not report.equal:
        logger.warning("GL_%s(F_%s): big cell complement %s differs from minimum section %s", n, q, complement, minimum)
    return report
