from .enumeration import enumerate_all, enumerate_gl, gl_points, random_gl, random_mat
from .matrix import (
    Mat,
    RankNormalForm,
    det,
    format_matrix,
    from_rows,
    idempotent,
    identity,
    mat_add,
    mat_from_index,
    mat_index,
    mat_inverse,
    mat_mul,
    mat_transpose,
    matrix_unit,
    parse_matrix,
    rank,
    rank_normal_form,
    trace_form,
)

__all__ = [
    'Mat',
    'RankNormalForm',
    'det',
    'enumerate_all',
    'enumerate_gl',
    'format_matrix',
    'from_rows',
    'gl_points',
    'idempotent',
    'identity',
    'mat_add',
    'mat_from_index',
    'mat_index',
    'mat_inverse',
    'mat_mul',
    'mat_transpose',
    'matrix_unit',
    'parse_matrix',
    'random_gl',
    'random_mat',
    'rank',
    'rank_normal_form',
    'trace_form',
]
