import numpy as np
import pytest

from src.errors import Infeasible, OutOfRange, ZeroNormal
from src.fields import field_new
from src.linalg import gl_points, identity, mat_from_index, matrix_unit, parse_matrix, random_gl, random_mat, rank
from src.linalg.enumeration import point_to_mat
from src.linalg.matrix import zero
from src.services.formulas import gamma, stanley_f
from src.services.sections import (
    canonicalize,
    extremal_sections,
    hyperplane,
    partial_trace_count,
    partial_trace_hyperplane,
    predicted_count,
    section_census,
    section_count,
    shifted_counts,
    stanley_table,
    transform,
)


def test_section_counts_binary(f2):
    assert section_count(hyperplane(matrix_unit(0, 0, 2, f2), 0)) == 2
    assert section_count(hyperplane(identity(2, f2), 0)) == 4
    assert section_count(hyperplane(identity(2, f2), 1)) == 2
    with pytest.raises(ZeroNormal):
        hyperplane(zero(2, f2), 0)


def test_section_count_agrees_with_membership(f3):
    H = hyperplane(parse_matrix("1,2;0,1", f3), 2)
    members = sum(H.contains(point_to_mat(row, 2, f3)) for row in gl_points(2, f3).tolist())
    assert section_count(H) == members


def test_canonicalize(f2, f3):
    section = canonicalize(hyperplane(identity(2, f2), 1))
    assert (section.r, int(section.c)) == (2, 1)
    assert canonicalize(hyperplane(matrix_unit(0, 1, 2, f3), 0)).r == 1


@pytest.mark.parametrize("q", [2, 3])
def test_canonical_section_matches_its_representative(q):
    ctx = field_new(q)
    for index in range(1, q ** 4):
        H = hyperplane(mat_from_index(index, 2, ctx), 0)
        section = canonicalize(H)
        assert section.r == rank(H.B)
        assert section_count(H) == section_count(partial_trace_hyperplane(section.r, 2, ctx))


def test_predicted_count_by_level():
    assert predicted_count(2, 0, 2, 2) == 4
    assert predicted_count(2, 1, 2, 2) == 2
    assert predicted_count(1, 0, 2, 3) == 12
    assert predicted_count(1, 2, 2, 3) == 18
    assert predicted_count(1, 1, 3, 2) == 168 - 72


@pytest.mark.parametrize("n,q", [(2, 2), (2, 3), (3, 2), (3, 3)])
def test_partial_trace_counts_match_closed_form(n, q):
    for k in range(1, n + 1):
        assert partial_trace_count(k, n, q) == stanley_f(k, n, q)


def test_partial_trace_bounds(f2):
    with pytest.raises(OutOfRange):
        partial_trace_hyperplane(0, 2, f2)
    with pytest.raises(OutOfRange):
        partial_trace_count(3, 2, f2)


@pytest.mark.parametrize("n,q", [(2, 2), (2, 3), (3, 2)])
def test_census_every_normal_and_level(n, q):
    census = section_census(n, field_new(q), full_c=True)
    assert len(census) == (q ** (n * n) - 1) * q
    assert census["match"].all()
    assert (census.groupby("index")["count"].sum() == gamma(n, q)).all()
    nonzero = census[census["c"] != 0]
    assert (nonzero.groupby("index")["count"].nunique() == 1).all()


def test_census_is_worker_independent(f3):
    assert section_census(2, f3, workers=1).equals(section_census(2, f3, workers=3))


def test_census_default_levels(f3):
    assert sorted(section_census(2, f3)["c"].unique().tolist()) == [0, 1]


def test_shifted_counts(f3):
    B = parse_matrix("1,0;0,0", f3)
    assert shifted_counts(B) == [12, 18, 18]


def test_left_right_invariance(f3):
    rng = np.random.default_rng(11)
    checked = 0
    while checked < 30:
        B = random_mat(2, f3, rng)
        if B.is_zero():
            continue
        H = hyperplane(B, int(rng.integers(0, 3)))
        moved = transform(H, random_gl(2, f3, rng), random_gl(2, f3, rng))
        assert rank(moved.B) == rank(B)
        assert section_count(moved) == section_count(H)
        checked += 1


@pytest.mark.parametrize("n,q,expected", [(2, 2, (4, 2)), (2, 3, (18, 12)), (3, 2, (88, 72))])
def test_extremal_sections_oracle(n, q, expected):
    found = extremal_sections(n, q, mode="oracle")
    assert (found.max_count, found.min_count) == expected
    assert (found.argmax_r, found.argmin_r) == (2, 1)
    assert found.observed <= {stanley_f(k, n, q) for k in range(1, n + 1)}
    assert extremal_sections(n, q) == extremal_sections(n, q, mode="formula")


def test_extremal_sections_oracle_limits():
    with pytest.raises(Infeasible):
        extremal_sections(2, 4, mode="oracle")
    with pytest.raises(OutOfRange):
        extremal_sections(2, 2, mode="guess")


def test_stanley_table(f2):
    table = stanley_table(3, f2)
    assert table.columns.tolist() == ["k", "f_k_formula", "f_k_bruteforce", "match"]
    assert table["f_k_bruteforce"].tolist() == [72, 88, 80]
    assert table["match"].all()
