"""Enumeration of M_n(F_q) and GL_n(F_q) in MatIndex order."""

from __future__ import annotations

import logging
from functools import lru_cache
from typing import Iterator

import numpy as np

from src.errors import Infeasible, OutOfRange
from src.fields import FieldCtx

from .kernels import DEFAULT_CHUNK_ROWS, determinants, index_chunks, matrices_in_range
from .matrix import Mat, is_invertible

logger = logging.getLogger(__name__)

MATRIX_ENUMERATION_LIMIT = 2 * 10 ** 7


def matrix_count(n: int, ctx: FieldCtx) -> int:
    return ctx.q ** (n * n)


def _check_range(n: int, ctx: FieldCtx, start: int, stop: int | None) -> tuple[int, int]:
    if n < 1:
        raise OutOfRange(f"n={n} must be at least 1")
    total = matrix_count(n, ctx)
    stop = total if stop is None else stop
    if not 0 <= start <= stop <= total:
        raise OutOfRange(f"index range [{start}, {stop}) is outside [0, {total})")
    if stop - start > MATRIX_ENUMERATION_LIMIT:
        raise Infeasible(f"enumerating {stop - start} matrices exceeds the limit of {MATRIX_ENUMERATION_LIMIT}")
    return start, stop


def enumerate_all(n: int, ctx: FieldCtx, start: int = 0, stop: int | None = None) -> Iterator[Mat]:
    """Every n x n matrix with MatIndex in [start, stop), in index order."""
    start, stop = _check_range(n, ctx, start, stop)
    for lo, hi in index_chunks(stop - start):
        block = matrices_in_range(n, ctx.q, start + lo, start + hi)
        for row in block.tolist():
            yield Mat(n, ctx, tuple(row))


def gl_block(n: int, ctx: FieldCtx, start: int, stop: int) -> np.ndarray:
    block = matrices_in_range(n, ctx.q, start, stop)
    return block[determinants(block, n, ctx) != 0]


def enumerate_gl(n: int, ctx: FieldCtx, start: int = 0, stop: int | None = None) -> Iterator[Mat]:
    """Invertible matrices with MatIndex in [start, stop); the canonical column order of the code."""
    start, stop = _check_range(n, ctx, start, stop)
    for lo, hi in index_chunks(stop - start):
        for row in gl_block(n, ctx, start + lo, start + hi).tolist():
            yield Mat(n, ctx, tuple(row))


@lru_cache(maxsize=16)
def gl_points(n: int, ctx: FieldCtx) -> np.ndarray:
    """All of GL_n(F_q) as a read-only (gamma, n*n) array in canonical order."""
    start, stop = _check_range(n, ctx, 0, None)
    blocks = [gl_block(n, ctx, lo, hi) for lo, hi in index_chunks(stop - start, DEFAULT_CHUNK_ROWS)]
    points = np.concatenate(blocks) if blocks else np.empty((0, n * n), dtype=np.int64)
    points.setflags(write=False)
    logger.info("Enumerated %s invertible %sx%s matrices over F_%s", len(points), n, n, ctx.q)
    return points


def nonzero_matrices(n: int, ctx: FieldCtx) -> np.ndarray:
    start, stop = _check_range(n, ctx, 1, None)
    return matrices_in_range(n, ctx.q, start, stop)


def point_to_mat(row, n: int, ctx: FieldCtx) -> Mat:
    return Mat(n, ctx, tuple(int(x) for x in row))


def random_mat(n: int, ctx: FieldCtx, rng: np.random.Generator) -> Mat:
    return Mat(n, ctx, tuple(int(x) for x in rng.integers(0, ctx.q, size=n * n)))


def random_gl(n: int, ctx: FieldCtx, rng: np.random.Generator) -> Mat:
    while True:
        candidate = random_mat(n, ctx, rng)
        if is_invertible(candidate):
            return candidate
