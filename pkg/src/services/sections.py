"""Hyperplane sections of GL_n(F_q).

A hyperplane is the level set {A : tr(A B^T) = c} of a nonzero linear form.
Counts come from evaluating the form on the full point array of GL_n(F_q).
For a normal of rank r the count is f_r(n) when c = 0; scaling A by a nonzero
constant permutes the nonzero levels, so each of them holds
(gamma - f_r(n)) / (q - 1) points.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
import pandas as pd

from src.errors import Infeasible, MixedFields, OutOfRange, VerificationError, ZeroNormal
from src.fields import Felt, FieldCtx, as_field
from src.linalg import Mat, gl_points, idempotent, mat_mul
from src.linalg.enumeration import nonzero_matrices
from src.linalg.kernels import evaluate_forms, index_chunks, run_partitioned
from src.linalg.matrix import rank_normal_form, rank_of_rows

from .formulas import extremal_k, gamma, stanley_f

logger = logging.getLogger(__name__)

# (n, q) pairs where the all-hyperplanes oracle is run
ORACLE_CASES = frozenset({(2, 2), (2, 3), (3, 2)})
CENSUS_LIMIT = 10 ** 9
FORM_CHUNK = 256
CENSUS_COLUMNS = ["index", "rank", "c", "count", "predicted", "match"]


@dataclass(frozen=True)
class Hyperplane:
    B: Mat
    c: Felt

    def __post_init__(self):
        if self.B.is_zero():
            raise ZeroNormal("the normal matrix B must be nonzero")
        if self.c.ctx != self.B.ctx:
            raise MixedFields(f"c lives in {self.c.ctx}, B in {self.B.ctx}")

    @property
    def n(self) -> int:
        return self.B.n

    @property
    def ctx(self) -> FieldCtx:
        return self.B.ctx

    def contains(self, A: Mat) -> bool:
        total = 0
        ctx = self.ctx
        for a, b in zip(A.entries, self.B.entries):
            total = ctx.add(total, ctx.mul(a, b))
        return total == self.c.code


@dataclass(frozen=True)
class CanonicalSection:
    r: int
    c: Felt


@dataclass(frozen=True)
class ExtremalSections:
    max_count: int
    min_count: int
    argmax_r: int
    argmin_r: int
    observed: frozenset = frozenset()


def hyperplane(B: Mat, c=0) -> Hyperplane:
    return Hyperplane(B, c if isinstance(c, Felt) else B.ctx.element(c))


def partial_trace_hyperplane(r: int, n: int, ctx: FieldCtx, c=0) -> Hyperplane:
    """{A : a_11 + ... + a_rr = c}, the section normal to e_r."""
    if not 1 <= r <= n:
        raise OutOfRange(f"r={r} is outside [1, {n}]")
    return hyperplane(idempotent(r, n, ctx), c)


def section_count(H: Hyperplane) -> int:
    points = gl_points(H.n, H.ctx)
    form = np.asarray(H.B.entries, dtype=np.int64)
    values = evaluate_forms(points, form, H.ctx)[0]
    return int(np.count_nonzero(values == H.c.code))


def predicted_count(r: int, c: int, n: int, q: int) -> int:
    """Section count for a rank-r normal at level c."""
    f_r = stanley_f(r, n, q)
    if c == 0:
        return f_r
    value, remainder = divmod(gamma(n, q) - f_r, q - 1)
    if remainder:
        raise VerificationError(f"nonzero levels of a rank-{r} normal do not split evenly")
    return value


def canonicalize(H: Hyperplane) -> CanonicalSection:
    """Reduce H to the rank of its normal, which with c fixes the count.

    The rank is read off the normal form D B^T E^-1 = e_r, which moves H onto
    the e_r-hyperplane at the same level.
    """
    return CanonicalSection(r=rank_normal_form(H.B).r, c=H.c)


def transform(H: Hyperplane, D: Mat, E: Mat) -> Hyperplane:
    """The section normal to D B E with the same level."""
    return Hyperplane(mat_mul(mat_mul(D, H.B), E), H.c)


def shifted_counts(B: Mat) -> list[int]:
    """section_count(B, c) for every c in F_q, in encoding order."""
    ctx = B.ctx
    if B.is_zero():
        raise ZeroNormal("the normal matrix B must be nonzero")
    values = evaluate_forms(gl_points(B.n, ctx), np.asarray(B.entries, dtype=np.int64), ctx)[0]
    return np.bincount(values, minlength=ctx.q).tolist()


def partial_trace_count(k: int, n: int, field) -> int:
    ctx = as_field(field)
    return section_count(partial_trace_hyperplane(k, n, ctx))


def _levels(ctx: FieldCtx, full_c: bool) -> list[int]:
    if full_c or ctx.q == 2:
        return list(range(ctx.q))
    return [0, 1]


def _census_part(n: int, ctx: FieldCtx, forms: np.ndarray, offset: int, levels: list[int]):
    def census(bounds):
        lo, hi = bounds
        block = forms[lo:hi]
        values = evaluate_forms(gl_points(n, ctx), block, ctx)
        rows = []
        for t, form in enumerate(block.tolist()):
            r = rank_of_rows([form[i * n:(i + 1) * n] for i in range(n)], ctx)
            counts = np.bincount(values[t], minlength=ctx.q)
            for c in levels:
                count = int(counts[c])
                predicted = predicted_count(r, c, n, ctx.q)
                rows.append((offset + lo + t, r, c, count, predicted, count == predicted))
        return rows

    return census


def section_census(n: int, field, full_c: bool = False, workers: int = 1, levels=None) -> pd.DataFrame:
    """One row per (nonzero B, c): rank of B, brute-force count, prediction and whether they agree.

    Levels are 0 and 1 unless full_c is set or q = 2; every nonzero level
    behaves like 1.
    """
    ctx = as_field(field)
    if n < 2:
        raise OutOfRange(f"n={n} must be at least 2")
    forms = nonzero_matrices(n, ctx)
    points = gl_points(n, ctx)
    if len(forms) * len(points) > CENSUS_LIMIT:
        raise Infeasible(f"census of {len(forms)} forms on {len(points)} points exceeds {CENSUS_LIMIT}")
    levels = _levels(ctx, full_c) if levels is None else list(levels)
    parts = index_chunks(len(forms), FORM_CHUNK)
    rows = run_partitioned(_census_part(n, ctx, forms, 1, levels), parts, [], workers=workers)
    frame = pd.DataFrame(sorted(rows), columns=CENSUS_COLUMNS)
    logger.info("Section census for n=%s q=%s: %s rows, %s mismatches", n, ctx.q, len(frame), int((~frame["match"]).sum()))
    return frame


def extremal_sections(n: int, field, mode: str = "formula", workers: int = 1) -> ExtremalSections:
    """Largest and smallest linear sections (c = 0) and the normal ranks attaining them."""
    ctx = as_field(field)
    if n < 2:
        raise OutOfRange(f"n={n} must be at least 2")
    q = ctx.q
    k_max, k_min = extremal_k(n, q)
    predicted = ExtremalSections(
        max_count=stanley_f(k_max, n, q),
        min_count=stanley_f(k_min, n, q),
        argmax_r=k_max,
        argmin_r=k_min,
        observed=frozenset(stanley_f(k, n, q) for k in range(1, n + 1)),
    )
    if mode == "formula":
        return predicted
    if mode != "oracle":
        raise OutOfRange(f"unknown mode {mode!r}")
    if (n, q) not in ORACLE_CASES:
        raise Infeasible(f"the hyperplane oracle is limited to n=2, q<=3 and n=3, q=2; got n={n}, q={q}")

    census = section_census(n, ctx, workers=workers, levels=[0])
    top = census.loc[census["count"].idxmax()]
    bottom = census.loc[census["count"].idxmin()]
    measured = ExtremalSections(
        max_count=int(top["count"]),
        min_count=int(bottom["count"]),
        argmax_r=int(top["rank"]),
        argmin_r=int(bottom["rank"]),
        observed=frozenset(int(v) for v in census["count"].unique()),
    )
    if not measured.observed <= predicted.observed or measured.max_count != predicted.max_count or measured.min_count != predicted.min_count:
        raise VerificationError(f"oracle sections {measured} disagree with closed form {predicted}")
    return measured


def stanley_table(n: int, field) -> pd.DataFrame:
    """f_k(n) from the closed form against the partial-trace brute-force count."""
    ctx = as_field(field)
    rows = []
    for k in range(1, n + 1):
        formula = stanley_f(k, n, ctx.q)
        brute = partial_trace_count(k, n, ctx)
        rows.append({"k": k, "f_k_formula": formula, "f_k_bruteforce": brute, "match": formula == brute})
    return pd.DataFrame(rows, columns=["k", "f_k_formula", "f_k_bruteforce", "match"])
