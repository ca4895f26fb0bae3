"""The linear code obtained by evaluating linear forms on GL_n(F_q).

Columns are the invertible matrices in MatIndex order. A message is an
n*n coefficient list read row-major as a matrix B, and its codeword is
(tr(A B^T) : A in GL_n(F_q)).

Over F_2 with n = 2 every codeword has even weight, so the code sits inside
the dual of the length-6 repetition code:

>>> code = build_code(2, 2)
>>> sorted({encode(code, m).weight % 2 for m in message_space(code)})
[0]
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from itertools import permutations
from typing import NamedTuple, Sequence

import numpy as np
import pandas as pd

from src.errors import DimensionMismatch, Infeasible, MixedFields, OutOfRange, VerificationError
from src.fields import Felt, FieldCtx, as_field
from src.linalg import gl_points
from src.linalg.enumeration import nonzero_matrices
from src.linalg.kernels import evaluate_forms, index_chunks, matrices_in_range, run_partitioned
from src.linalg.matrix import rank_of_rows

from .formulas import CodeParams, code_params, gamma
from .sections import partial_trace_hyperplane, section_count
from .settings import column_budget

logger = logging.getLogger(__name__)

MESSAGE_LIMIT = 2 * 10 ** 7
EVALUATION_LIMIT = 5 * 10 ** 9
MESSAGE_CHUNK = 1024
CODEWORD_ARRAY_LIMIT = 10 ** 7
RANK_SAMPLE = 4096
PERMUTATION_SEARCH_LIMIT = 10
MIN_DISTANCE_METHODS = ("exhaustive", "hyperplane", "formula")

# The sixteen codewords of the binary n = 2 code in the printed column order.
GL2_F2_REFERENCE_CODEWORDS = frozenset(
    {
        (1, 1, 1, 1, 0, 0), (1, 0, 0, 0, 1, 0), (0, 1, 0, 0, 0, 1), (0, 0, 1, 0, 1, 0),
        (0, 0, 0, 1, 0, 1), (0, 0, 1, 1, 1, 1), (0, 1, 1, 0, 1, 1), (1, 0, 0, 1, 1, 1),
        (1, 1, 0, 0, 1, 1), (1, 0, 1, 0, 0, 0), (0, 1, 0, 1, 0, 0), (1, 1, 1, 0, 0, 1),
        (1, 1, 0, 1, 1, 0), (1, 0, 1, 1, 0, 1), (0, 1, 1, 1, 1, 0), (0, 0, 0, 0, 0, 0),
    }
)


@dataclass(frozen=True)
class Codeword:
    symbols: tuple[int, ...]
    ctx: FieldCtx

    @property
    def weight(self) -> int:
        return sum(1 for s in self.symbols if s)

    def __len__(self):
        return len(self.symbols)

    def __add__(self, other: Codeword) -> Codeword:
        if other.ctx != self.ctx:
            raise MixedFields("codewords over different fields")
        if len(other) != len(self):
            raise DimensionMismatch(f"codeword lengths {len(self)} and {len(other)} differ")
        add = self.ctx.add
        return Codeword(tuple(add(a, b) for a, b in zip(self.symbols, other.symbols)), self.ctx)


@dataclass(frozen=True)
class WeightDistribution:
    counts: dict[int, int]
    total: int

    def __post_init__(self):
        if self.counts.get(0) != 1:
            raise VerificationError(f"weight 0 occurs {self.counts.get(0, 0)} times")
        if sum(self.counts.values()) != self.total:
            raise VerificationError(f"weights sum to {sum(self.counts.values())}, expected {self.total}")

    def min_nonzero(self) -> int:
        return min(w for w in self.counts if w)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(sorted(self.counts.items()), columns=["weight", "count"])


class ReferenceMatch(NamedTuple):
    permutation: tuple[int, ...] | None
    matches: int


class EvaluationCode:
    """Generator matrix and encoder for one (n, F_q).

    The generator matrix has n*n rows; row (i, j) is the coordinate functional
    a_ij evaluated at every point, so column t is the flattened t-th point.
    """

    def __init__(self, n: int, ctx: FieldCtx, points: np.ndarray):
        self.n = n
        self.ctx = ctx
        self.points = points
        self.genmat = points.T
        self._check_rank()

    def _check_rank(self):
        k = self.n * self.n
        sample = self.points[:RANK_SAMPLE].tolist()
        r = rank_of_rows(sample, self.ctx)
        if r < k:
            r = rank_of_rows(self.points.tolist(), self.ctx)
        if r != k:
            raise VerificationError(f"generator matrix has rank {r}, expected {k}")

    @property
    def length(self) -> int:
        return len(self.points)

    @property
    def dimension(self) -> int:
        return self.n * self.n

    @cached_property
    def params(self) -> CodeParams:
        return code_params(self.n, self.ctx.q)

    def __repr__(self):
        return f"EvaluationCode(n={self.n}, q={self.ctx.q}, length={self.length})"


def build_code(n: int, field, budget: int | None = None) -> EvaluationCode:
    ctx = as_field(field)
    if n < 2:
        raise OutOfRange(f"n={n} must be at least 2")
    budget = column_budget() if budget is None else budget
    columns = gamma(n, ctx.q)
    if columns > budget:
        raise Infeasible(f"GL_{n}(F_{ctx.q}) has {columns} points, over the column budget {budget}")
    code = EvaluationCode(n, ctx, gl_points(n, ctx))
    logger.info("Built %s", code)
    return code


def _message_codes(code: EvaluationCode, message: Sequence) -> np.ndarray:
    if len(message) != code.dimension:
        raise DimensionMismatch(f"message has {len(message)} coefficients, expected {code.dimension}")
    codes = []
    for value in message:
        if isinstance(value, Felt):
            if value.ctx != code.ctx:
                raise MixedFields(f"message symbol from {value.ctx}, code over {code.ctx}")
            codes.append(value.code)
        else:
            codes.append(code.ctx.check(value))
    return np.asarray(codes, dtype=np.int64)


def encode(code: EvaluationCode, message: Sequence) -> Codeword:
    symbols = evaluate_forms(code.points, _message_codes(code, message), code.ctx)[0]
    return Codeword(tuple(symbols.tolist()), code.ctx)


def message_space(code: EvaluationCode):
    """Every message in MatIndex order, zero first."""
    total = code.ctx.q ** code.dimension
    if total > MESSAGE_LIMIT:
        raise Infeasible(f"{total} messages exceed the limit of {MESSAGE_LIMIT}")
    for lo, hi in index_chunks(total):
        yield from matrices_in_range(code.n, code.ctx.q, lo, hi).tolist()


def codeword_array(code: EvaluationCode) -> np.ndarray:
    """All codewords as rows, in message order. Only for codes whose full table stays small."""
    total = code.ctx.q ** code.dimension
    if total * code.length > CODEWORD_ARRAY_LIMIT:
        raise Infeasible(f"{total} codewords of length {code.length} exceed the array limit of {CODEWORD_ARRAY_LIMIT}")
    messages = np.asarray(list(message_space(code)), dtype=np.int64)
    return evaluate_forms(code.points, messages, code.ctx)


def _projective(messages: np.ndarray) -> np.ndarray:
    """Rows whose first nonzero entry is 1, one per line through the origin."""
    first = messages[np.arange(len(messages)), (messages != 0).argmax(axis=1)]
    return messages[first == 1]


def weight_distribution(code: EvaluationCode, workers: int = 1) -> WeightDistribution:
    """Exact weights of all q^(n*n) codewords.

    Scaling by a nonzero constant preserves weight, so only projective
    representatives are evaluated and each weight is counted q - 1 times.
    """
    ctx = code.ctx
    total = ctx.q ** code.dimension
    if total > MESSAGE_LIMIT or total * code.length > EVALUATION_LIMIT:
        raise Infeasible(f"weight enumeration of {total} messages on {code.length} points is too large")
    messages = nonzero_matrices(code.n, ctx)

    def weigh(bounds):
        lo, hi = bounds
        block = _projective(messages[lo:hi])
        if not len(block):
            return Counter()
        weights = np.count_nonzero(evaluate_forms(code.points, block, ctx), axis=1)
        return Counter({int(w): int(c) * (ctx.q - 1) for w, c in zip(*np.unique(weights, return_counts=True))})

    tally = run_partitioned(weigh, index_chunks(len(messages), MESSAGE_CHUNK), Counter({0: 1}), workers=workers)
    logger.info("Weight distribution of %s: %s distinct weights", code, len(tally))
    return WeightDistribution(counts=dict(sorted(tally.items())), total=total)


def min_distance(code: EvaluationCode, method: str = "formula", workers: int = 1) -> int:
    """Minimum distance by scanning codewords, by the largest section, or by the closed form."""
    if method == "exhaustive":
        return weight_distribution(code, workers=workers).min_nonzero()
    if method == "hyperplane":
        # section counts depend only on rank(B), so rank r is represented by e_r
        largest = max(section_count(partial_trace_hyperplane(r, code.n, code.ctx)) for r in range(1, code.n + 1))
        return code.length - largest
    if method == "formula":
        return code.params.min_distance
    raise OutOfRange(f"unknown method {method!r}; expected one of {MIN_DISTANCE_METHODS}")


def codeword_set(code: EvaluationCode) -> frozenset[tuple[int, ...]]:
    return frozenset(tuple(row) for row in codeword_array(code).tolist())


def _permute(words, perm) -> frozenset:
    return frozenset(tuple(word[i] for i in perm) for word in words)


def match_reference_codewords(code: EvaluationCode, reference=GL2_F2_REFERENCE_CODEWORDS) -> ReferenceMatch:
    """Column permutations carrying the code's codeword set onto the reference set.

    Any match times a permutation automorphism is again a match, so the first
    permutation in lexicographic order is reported along with the count.
    """
    if code.length > PERMUTATION_SEARCH_LIMIT:
        raise Infeasible(f"column permutation search over {code.length} columns is too large")
    words = codeword_set(code)
    reference = frozenset(tuple(word) for word in reference)
    first = None
    matches = 0
    for perm in permutations(range(code.length)):
        if _permute(words, perm) == reference:
            matches += 1
            if first is None:
                first = perm
    return ReferenceMatch(first, matches)


def automorphism_count(code: EvaluationCode) -> int:
    """Number of column permutations mapping the code onto itself."""
    return match_reference_codewords(code, codeword_set(code)).matches
