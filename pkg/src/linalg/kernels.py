"""Vectorized enumeration kernels and partitioned execution.

Matrices travel through the kernels as int64 arrays of shape (count, n*n)
holding row-major element encodings.
"""

from __future__ import annotations

import logging
import operator
from concurrent.futures import ThreadPoolExecutor, as_completed
from itertools import permutations

import numpy as np

from src.fields import FieldCtx

logger = logging.getLogger(__name__)

DEFAULT_CHUNK_ROWS = 1 << 16


def index_chunks(total: int, chunk: int = DEFAULT_CHUNK_ROWS) -> list[tuple[int, int]]:
    return [(start, min(start + chunk, total)) for start in range(0, total, chunk)]


def matrices_in_range(n: int, q: int, start: int, stop: int) -> np.ndarray:
    """Matrices with MatIndex in [start, stop), in index order."""
    index = np.arange(start, stop, dtype=np.int64)
    k = n * n
    out = np.empty((len(index), k), dtype=np.int64)
    for t in range(k):
        out[:, t] = (index // q ** (k - 1 - t)) % q
    return out


def _permutation_sign(perm) -> int:
    sign = 1
    seen = list(perm)
    for i in range(len(seen)):
        while seen[i] != i:
            j = seen[i]
            seen[i], seen[j] = seen[j], seen[i]
            sign = -sign
    return sign


def determinants(matrices: np.ndarray, n: int, ctx: FieldCtx) -> np.ndarray:
    """Leibniz expansion over the lookup tables, one determinant per row."""
    tables = ctx.tables
    add, mul, neg = tables["add"], tables["mul"], tables["neg"]
    total = np.zeros(len(matrices), dtype=np.int64)
    for perm in permutations(range(n)):
        term = matrices[:, perm[0]]
        for i in range(1, n):
            term = mul[term, matrices[:, i * n + perm[i]]]
        if _permutation_sign(perm) < 0:
            term = neg[term]
        total = add[total, term]
    return total


def evaluate_forms(points: np.ndarray, forms: np.ndarray, ctx: FieldCtx) -> np.ndarray:
    """values[f, t] = sum_i forms[f, i] * points[t, i] over F_q."""
    forms = np.atleast_2d(forms)
    if ctx.m == 1:
        return (forms @ points.T) % ctx.p
    tables = ctx.tables
    add, mul = tables["add"], tables["mul"]
    values = np.zeros((len(forms), len(points)), dtype=np.int64)
    for i in range(points.shape[1]):
        values = add[values, mul[forms[:, i][:, None], points[:, i][None, :]]]
    return values


def run_partitioned(func, parts, initial, combine=operator.add, workers: int = 1):
    """Apply func to every part and fold the results into initial with an order-independent combine."""
    result = initial
    if workers > 1 and len(parts) > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            futures = [executor.submit(func, part) for part in parts]
            for future in as_completed(futures):
                result = combine(result, future.result())
    else:
        for part in parts:
            result = combine(result, func(part))
    logger.debug("Processed %s partitions with %s worker(s)", len(parts), workers)
    return result
