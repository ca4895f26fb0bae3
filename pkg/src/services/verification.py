"""Invariant suites behind `glcode verify`.

Each suite appends PASS/FAIL/INFO rows to a VerificationReport. INFO rows are
findings that are reported but never fail a run.
"""

from __future__ import annotations

import logging
from collections import defaultdict
from math import comb

import numpy as np
import pandas as pd

from src.errors import Infeasible, VerificationError
from src.fields import FieldCtx
from src.linalg import gl_points, mat_from_index, random_gl, random_mat, rank
from src.linalg.kernels import evaluate_forms, index_chunks, matrices_in_range

from . import bruhat, evaluation_code, formulas, sections

logger = logging.getLogger(__name__)

PASS, FAIL, INFO = "PASS", "FAIL", "INFO"
REPORT_COLUMNS = ["suite", "check", "status", "detail"]
FIELD_AXIOM_LIMIT = 16
EXHAUSTIVE_MESSAGE_LIMIT = 10 ** 5
DUALITY_CHUNK = 256
TRIALS = {"fast": 20, "full": 200}
SPOT_CHECKS = {"fast": 10, "full": 100}
SEED = 20240601


class VerificationReport:
    def __init__(self):
        self.rows = []

    def add(self, suite: str, check: str, ok: bool, detail: str = ""):
        self.rows.append((suite, check, PASS if ok else FAIL, detail))

    def info(self, suite: str, check: str, detail: str):
        self.rows.append((suite, check, INFO, detail))

    def run(self, suite: str, check: str, func):
        """Record func() -> (ok, detail); internal post-condition failures count as FAIL."""
        try:
            ok, detail = func()
        except VerificationError as exc:
            ok, detail = False, str(exc)
        self.add(suite, check, ok, detail)

    @property
    def passed(self) -> bool:
        return all(status != FAIL for _, _, status, _ in self.rows)

    def frame(self) -> pd.DataFrame:
        return pd.DataFrame(self.rows, columns=REPORT_COLUMNS)


def check_field_axioms(report: VerificationReport, ctx: FieldCtx):
    if ctx.q > FIELD_AXIOM_LIMIT:
        report.info("fields", "axioms", f"exhaustive axioms skipped for q={ctx.q} > {FIELD_AXIOM_LIMIT}")
        return
    t = ctx.tables
    add, mul, neg, inv = t["add"], t["mul"], t["neg"], t["inv"]
    codes = np.arange(ctx.q)
    a, b, c = np.meshgrid(codes, codes, codes, indexing="ij")

    def axioms():
        checks = {
            "commutative": np.array_equal(add, add.T) and np.array_equal(mul, mul.T),
            "associative": np.array_equal(add[add[a, b], c], add[a, add[b, c]])
            and np.array_equal(mul[mul[a, b], c], mul[a, mul[b, c]]),
            "distributive": np.array_equal(mul[a, add[b, c]], add[mul[a, b], mul[a, c]]),
            "identities": np.array_equal(add[0], codes) and np.array_equal(mul[1], codes),
            "inverses": bool((add[codes, neg] == 0).all() and (mul[codes[1:], inv[1:]] == 1).all()),
        }
        failed = [name for name, ok in checks.items() if not ok]
        return not failed, ", ".join(failed) or f"all axioms hold on {ctx.q}^3 triples"

    report.run("fields", "axioms", axioms)


def check_formulas(report: VerificationReport, n: int, ctx: FieldCtx):
    q = ctx.q
    points = gl_points(n, ctx)
    report.add("formulas", "gamma count", formulas.gamma(n, q) == len(points), f"gamma={formulas.gamma(n, q)}")
    report.run("formulas", "gamma recurrence", lambda: (formulas.gamma_recurrence_check(n, q), ""))
    values = [formulas.stanley_f(k, n, q) for k in range(1, n + 1)]
    report.add("formulas", "extremal k", formulas.extremal_k(n, q) == (2, 1), f"f_k={values}")
    gaps = [formulas.stanley_gap(j, n, q) for j in range(1, n + 1)]
    report.add("formulas", "gap identity", all(lhs == rhs for lhs, rhs in gaps), "")
    params = formulas.code_params(n, q)
    report.run(
        "formulas",
        "defects",
        lambda: (formulas.singleton_defect(params) >= 0 and formulas.griesmer_defect(params) >= 0, ""),
    )
    if n == 2:
        report.add("formulas", "n=2 specialization", formulas.gl2_code_params(q) == params, "")
        report.add(
            "formulas",
            "n=2 defects",
            formulas.singleton_defect(params) == q ** 3 - q ** 2 - 3 and formulas.griesmer_defect(params) == q - 1,
            f"singleton={formulas.singleton_defect(params)} griesmer={formulas.griesmer_defect(params)}",
        )


def check_code(report: VerificationReport, code, level: str, workers: int):
    n, ctx = code.n, code.ctx
    report.add("code", "dimension", code.dimension == n * n, f"rank {n * n} over {code.length} columns")
    rng = np.random.default_rng(SEED)

    def linearity():
        k = code.dimension
        for _ in range(TRIALS[level]):
            m1 = rng.integers(0, ctx.q, size=k).tolist()
            m2 = rng.integers(0, ctx.q, size=k).tolist()
            m12 = [ctx.add(a, b) for a, b in zip(m1, m2)]
            if evaluation_code.encode(code, m12) != evaluation_code.encode(code, m1) + evaluation_code.encode(code, m2):
                return False, f"encode({m1} + {m2}) is not additive"
        return True, f"{TRIALS[level]} random pairs"

    report.run("code", "linearity", linearity)

    try:
        distribution = evaluation_code.weight_distribution(code, workers=workers)
    except Infeasible as exc:
        report.info("code", "weight distribution", f"skipped: {exc}")
        distribution = None
    formula = code.params.min_distance
    by_section = evaluation_code.min_distance(code, "hyperplane")
    report.add("code", "min distance (hyperplane)", by_section == formula, f"{by_section} vs formula {formula}")
    if distribution is not None:
        exhaustive = distribution.min_nonzero()
        report.add("code", "min distance (exhaustive)", exhaustive == formula, f"{exhaustive} vs formula {formula}")

    if ctx.q ** code.dimension <= EXHAUSTIVE_MESSAGE_LIMIT and level == "full":
        report.run("code", "weight/section duality", lambda: _duality(code))

    if (n, ctx.q) == (2, 2):
        match = evaluation_code.match_reference_codewords(code)
        automorphisms = evaluation_code.automorphism_count(code)
        report.add(
            "code",
            "codeword set matches the printed binary [6,4,2] list",
            match.matches > 0 and match.matches == automorphisms,
            f"first permutation {match.permutation}, {match.matches} matching permutations",
        )
        if distribution is not None:
            report.add("code", "binary n=2 weights", distribution.counts == {0: 1, 2: 6, 4: 9}, str(distribution.counts))


def _duality(code):
    """weight(m) = gamma - f_rank(B) for every nonzero message m read as B, one block at a time."""
    n, ctx = code.n, code.ctx
    total = ctx.q ** code.dimension
    expected = {r: code.length - formulas.stanley_f(r, n, ctx.q) for r in range(1, n + 1)}
    for lo, hi in index_chunks(total, DUALITY_CHUNK):
        block = matrices_in_range(n, ctx.q, lo, hi)
        weights = np.count_nonzero(evaluate_forms(code.points, block, ctx), axis=1).tolist()
        for index, weight in zip(range(lo, hi), weights):
            if not index:
                continue
            want = expected[rank(mat_from_index(index, n, ctx))]
            if weight != want:
                return False, f"message {index} has weight {weight}, expected {want}"
    return True, f"{total - 1} nonzero messages"


def check_sections(report: VerificationReport, n: int, ctx: FieldCtx, level: str, workers: int):
    table = sections.stanley_table(n, ctx)
    report.add("sections", "partial trace counts", bool(table["match"].all()), f"f_k={table['f_k_formula'].tolist()}")

    rng = np.random.default_rng(SEED)

    def left_right():
        for _ in range(SPOT_CHECKS[level]):
            B = random_mat(n, ctx, rng)
            if B.is_zero():
                continue
            H = sections.hyperplane(B, int(rng.integers(0, ctx.q)))
            moved = sections.transform(H, random_gl(n, ctx, rng), random_gl(n, ctx, rng))
            if sections.section_count(H) != sections.section_count(moved):
                return False, f"count changed under D B E for B={B}"
        return True, f"{SPOT_CHECKS[level]} random (B, D, E)"

    report.run("sections", "left-right invariance", left_right)

    def normal_form():
        for _ in range(SPOT_CHECKS[level]):
            B = random_mat(n, ctx, rng)
            if B.is_zero():
                continue
            H = sections.hyperplane(B, int(rng.integers(0, ctx.q)))
            section = sections.canonicalize(H)
            representative = sections.partial_trace_hyperplane(section.r, n, ctx, int(section.c))
            if sections.section_count(H) != sections.section_count(representative):
                return False, f"B={B} and e_{section.r} give different counts at c={section.c}"
        return True, f"{SPOT_CHECKS[level]} random normals"

    report.run("sections", "normal form representative", normal_form)

    if level == "full" and (n, ctx.q) in sections.ORACLE_CASES:
        census = sections.section_census(n, ctx, full_c=True, workers=workers)
        report.add("sections", "rank invariance", bool(census["match"].all()), f"{len(census)} (B, c) pairs")
        nonzero_levels = census[census["c"] != 0].groupby("index")["count"]
        report.add("sections", "nonzero levels agree", bool((nonzero_levels.nunique() == 1).all()), "")
        per_normal = census.groupby("index")["count"]
        report.add(
            "sections",
            "partition by level",
            bool((per_normal.sum() == formulas.gamma(n, ctx.q)).all()),
            "sum over c equals gamma",
        )
        extremes = sections.extremal_sections(n, ctx, mode="oracle", workers=workers)
        report.add(
            "sections",
            "extremal sections",
            (extremes.argmax_r, extremes.argmin_r) == (2, 1),
            f"max {extremes.max_count}, min {extremes.min_count}",
        )


def check_bruhat(report: VerificationReport, n: int, ctx: FieldCtx, level: str, workers: int):
    q = ctx.q
    w0 = bruhat.longest_element(n)
    report.add(
        "bruhat",
        "longest element",
        bruhat.perm_length(w0) == comb(n, 2)
        and all(bruhat.perm_length(w0 * bruhat.simple_transposition(i, n)) == comb(n, 2) - 1 for i in range(1, n)),
        f"l(w0)={bruhat.perm_length(w0)}",
    )
    report.add(
        "bruhat",
        "cell sizes sum to gamma",
        sum(bruhat.cell_count(w, n, q) for w in bruhat.all_perms(n)) == formulas.gamma(n, q),
        "",
    )
    oracle = n <= bruhat.ORACLE_MAX_N and q <= bruhat.ORACLE_MAX_Q
    if level == "full" and oracle:
        report.run("bruhat", "cells by brute force", lambda: _cells(n, ctx, workers))
        report.run("bruhat", "H0 cells", lambda: _h0(n, ctx, workers))
    else:
        rng = np.random.default_rng(SEED)

        def spot():
            for _ in range(SPOT_CHECKS[level]):
                bruhat.big_cell_membership(random_gl(n, ctx, rng))
            return True, f"{SPOT_CHECKS[level]} random factorizations round-tripped"

        report.run("bruhat", "LPU round trip", spot)

    mode = "oracle" if formulas.gamma(n, q) <= bruhat.BUCKET_LIMIT else "formula"
    found = bruhat.big_cell_complement_report(n, ctx, mode=mode)
    report.info(
        "bruhat",
        "big cell complement vs minimum section",
        f"{found.complement_count} vs {found.min_section_count} ({mode}): {'equal' if found.equal else 'not equal'}",
    )


def _cells(n, ctx, workers):
    cells = bruhat.bruhat_cells(n, ctx, workers=workers)
    wrong = [str(w) for w, size in cells.items() if size != bruhat.cell_count(w, n, ctx.q)]
    return not wrong and sum(cells.values()) == formulas.gamma(n, ctx.q), f"mismatched cells: {wrong}" if wrong else f"{len(cells)} cells"


def _h0(n, ctx, workers):
    spectrum = bruhat.h0_cell_spectrum(n, ctx, workers=workers)
    expected = {w for w in bruhat.all_perms(n) if w(1) != 1}
    size = sum(bruhat.cell_count(w, n, ctx.q) for w in spectrum)
    by_order = all(bruhat.s1_below(w) == (w in expected) for w in bruhat.all_perms(n))
    ok = spectrum == expected and size == formulas.stanley_f(1, n, ctx.q) and by_order
    return ok, f"{sorted(str(w) for w in spectrum)}, total size {size}"


def verify(n: int, ctx: FieldCtx, level: str = "fast", workers: int = 1, budget: int | None = None) -> VerificationReport:
    """Run every suite for (n, F_q). Infeasible propagates before any suite runs."""
    code = evaluation_code.build_code(n, ctx, budget=budget)
    report = VerificationReport()
    check_field_axioms(report, ctx)
    check_formulas(report, n, ctx)
    check_code(report, code, level, workers)
    check_sections(report, n, ctx, level, workers)
    check_bruhat(report, n, ctx, level, workers)
    counts = defaultdict(int)
    for _, _, status, _ in report.rows:
        counts[status] += 1
    logger.info("Verification of n=%s q=%s (%s): %s", n, ctx.q, level, dict(counts))
    return report
