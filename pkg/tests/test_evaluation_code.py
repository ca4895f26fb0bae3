import doctest

import numpy as np
import pytest

from src.errors import DimensionMismatch, Infeasible, MixedFields, OutOfRange
from src.fields import field_new
from src.linalg import mat_from_index, rank
from src.services import evaluation_code
from src.services.evaluation_code import (
    GL2_F2_REFERENCE_CODEWORDS,
    automorphism_count,
    build_code,
    codeword_array,
    codeword_set,
    encode,
    match_reference_codewords,
    min_distance,
    weight_distribution,
)
from src.services.formulas import stanley_f
from src.services.sections import hyperplane, section_count


def test_build_shapes(code22, code23, code32):
    assert code22.genmat.shape == (4, 6)
    assert code23.genmat.shape == (4, 48)
    assert code32.genmat.shape == (9, 168)
    assert code22.params.as_tuple() == (6, 4, 2)


def test_columns_are_the_points(code23):
    assert np.array_equal(code23.genmat[:, 5], code23.points[5])


def test_build_respects_budget(f2, monkeypatch):
    with pytest.raises(Infeasible, match="column budget"):
        build_code(3, f2, budget=100)
    monkeypatch.setenv("GLCODE_BUDGET", "10")
    with pytest.raises(Infeasible):
        build_code(2, field_new(3))
    with pytest.raises(OutOfRange):
        build_code(1, f2)


def test_encode_coordinate_functional(code22):
    word = encode(code22, [1, 0, 0, 0])
    assert list(word.symbols) == code22.points[:, 0].tolist()
    assert word.weight == 6 - stanley_f(1, 2, 2)
    assert encode(code22, [0, 0, 0, 0]).weight == 0


def test_encode_errors(code22, f3):
    with pytest.raises(DimensionMismatch):
        encode(code22, [1, 0, 0])
    with pytest.raises(MixedFields):
        encode(code22, [f3.element(1), 0, 0, 0])
    with pytest.raises(OutOfRange):
        encode(code22, [2, 0, 0, 0])


def test_encode_is_linear(code23):
    ctx = code23.ctx
    rng = np.random.default_rng(2)
    for _ in range(200):
        m1 = rng.integers(0, 3, size=4).tolist()
        m2 = rng.integers(0, 3, size=4).tolist()
        m12 = [ctx.add(a, b) for a, b in zip(m1, m2)]
        assert encode(code23, m12) == encode(code23, m1) + encode(code23, m2)


def test_binary_n2_matches_printed_codewords(code22):
    assert len(codeword_set(code22)) == 16
    match = match_reference_codewords(code22)
    assert match.permutation is not None
    assert match.matches == automorphism_count(code22)
    permuted = {tuple(word[i] for i in match.permutation) for word in codeword_set(code22)}
    assert permuted == GL2_F2_REFERENCE_CODEWORDS


def test_reference_search_is_bounded(code23):
    with pytest.raises(Infeasible):
        match_reference_codewords(code23)


def test_weight_distributions(code22, code23, code32):
    assert weight_distribution(code22).counts == {0: 1, 2: 6, 4: 9}
    binary3 = weight_distribution(code32)
    assert binary3.total == 512 and binary3.min_nonzero() == 80
    ternary = weight_distribution(code23)
    assert ternary.total == 81 and ternary.min_nonzero() == 30
    assert ternary.to_frame().columns.tolist() == ["weight", "count"]


def test_weight_distribution_is_worker_independent(code32):
    assert weight_distribution(code32, workers=1) == weight_distribution(code32, workers=4)


@pytest.mark.parametrize("n,q,d", [(2, 2, 2), (2, 3, 30), (2, 4, 132), (2, 5, 380), (3, 2, 80)])
def test_min_distance_methods_agree(n, q, d):
    code = build_code(n, field_new(q))
    assert min_distance(code, "exhaustive") == min_distance(code, "hyperplane") == min_distance(code, "formula") == d


def test_min_distance_unknown_method(code22):
    with pytest.raises(OutOfRange):
        min_distance(code22, "guess")


@pytest.mark.parametrize("fixture", ["code22", "code23", "code32"])
def test_weight_section_duality(fixture, request):
    code = request.getfixturevalue(fixture)
    words = codeword_array(code)
    weights = np.count_nonzero(words, axis=1)
    for index in range(1, len(words)):
        B = mat_from_index(index, code.n, code.ctx)
        assert weights[index] == code.length - section_count(hyperplane(B, 0))
        assert weights[index] == code.length - stanley_f(rank(B), code.n, code.ctx.q)


def test_module_doctest():
    assert doctest.testmod(evaluation_code).failed == 0
