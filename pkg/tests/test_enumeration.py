import numpy as np
import pytest

from src.errors import Infeasible, OutOfRange
from src.fields import field_new
from src.linalg import enumerate_all, enumerate_gl, gl_points, mat_index, random_gl
from src.linalg.enumeration import MATRIX_ENUMERATION_LIMIT, nonzero_matrices, point_to_mat
from src.linalg.kernels import determinants, evaluate_forms, index_chunks, matrices_in_range, run_partitioned
from src.linalg.matrix import det, is_invertible
from src.services.formulas import gamma


def test_enumerate_all_order(f2, f3):
    assert [m.entries for m in enumerate_all(1, f2)] == [(0,), (1,)]
    binary = list(enumerate_all(2, f2))
    assert len(binary) == 16
    assert binary[0].is_zero()
    assert [mat_index(m) for m in binary] == list(range(16))
    assert sum(1 for _ in enumerate_all(2, f3)) == 81


@pytest.mark.parametrize("n,q,count", [(2, 2, 6), (3, 2, 168), (1, 3, 2), (2, 3, 48), (2, 4, 180)])
def test_enumerate_gl_counts(n, q, count):
    ctx = field_new(q)
    matrices = list(enumerate_gl(n, ctx))
    assert len(matrices) == count
    assert all(is_invertible(m) for m in matrices)
    indices = [mat_index(m) for m in matrices]
    assert indices == sorted(indices)


def test_sub_ranges_partition_the_stream(f3):
    whole = [m.entries for m in enumerate_gl(2, f3)]
    parts = [m.entries for lo, hi in index_chunks(81, 20) for m in enumerate_gl(2, f3, lo, hi)]
    assert parts == whole


def test_gl_points_match_stream(f3):
    points = gl_points(2, f3)
    assert points.shape == (48, 4)
    assert [tuple(row) for row in points.tolist()] == [m.entries for m in enumerate_gl(2, f3)]
    assert not points.flags.writeable


def test_vectorized_determinants_match_elimination(f4):
    block = nonzero_matrices(2, f4)[:200]
    expected = [int(det(point_to_mat(row, 2, f4))) for row in block]
    assert determinants(block, 2, f4).tolist() == expected


def test_evaluate_forms_extension_field(f4):
    points = gl_points(2, f4)
    forms = np.array([[1, 0, 0, 0], [0, 0, 0, 2]])
    values = evaluate_forms(points, forms, f4)
    assert values[0].tolist() == points[:, 0].tolist()
    assert values[1].tolist() == [f4.mul(2, x) for x in points[:, 3].tolist()]


def test_range_errors(f2):
    with pytest.raises(OutOfRange):
        list(enumerate_all(0, f2))
    with pytest.raises(OutOfRange):
        list(enumerate_all(2, f2, 5, 3))
    with pytest.raises(Infeasible):
        list(enumerate_all(5, f2, 0, MATRIX_ENUMERATION_LIMIT + 1))


def test_random_gl_is_invertible(f3):
    rng = np.random.default_rng(0)
    assert all(is_invertible(random_gl(3, f3, rng)) for _ in range(20))


def test_run_partitioned_is_worker_independent():
    parts = index_chunks(1000, 37)
    total = sum(range(1000))
    for workers in (1, 4):
        assert run_partitioned(lambda b: sum(range(*b)), parts, 0, workers=workers) == total


@pytest.mark.parametrize(
    "n,q",
    [(1, 2), (1, 3), (1, 4), (2, 2), (2, 3), (2, 4), (3, 2), pytest.param(3, 3, marks=pytest.mark.slow), pytest.param(3, 4, marks=pytest.mark.slow)],
)
def test_nonzero_determinants_count_the_group(n, q):
    ctx = field_new(q)
    invertible = 0
    for lo, hi in index_chunks(q ** (n * n)):
        invertible += int(np.count_nonzero(determinants(matrices_in_range(n, q, lo, hi), n, ctx)))
    assert invertible == gamma(n, q)
