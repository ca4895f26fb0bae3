"""Closed-form q-analog combinatorics for GL_n(F_q) and its evaluation code.

Everything here is exact integer arithmetic; nothing touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, prod
from typing import NamedTuple

import pandas as pd

from src.errors import NegativeArgument, OutOfRange, VerificationError
from src.fields import prime_power

GRIESMER_CONVENTIONS = ("standard", "printed")
PARAMS_COLUMNS = ["n", "q", "length", "dimension", "min_distance", "singleton_defect", "griesmer_defect"]


@dataclass(frozen=True)
class CodeParams:
    n: int
    q: int
    length: int
    dimension: int
    min_distance: int

    def __post_init__(self):
        if self.dimension != self.n * self.n:
            raise OutOfRange(f"dimension {self.dimension} differs from n^2 = {self.n * self.n}")
        if not 1 <= self.min_distance <= self.length - self.dimension + 1:
            raise OutOfRange(
                f"min_distance {self.min_distance} violates 1 <= d <= {self.length - self.dimension + 1}"
            )

    def as_tuple(self) -> tuple[int, int, int]:
        return self.length, self.dimension, self.min_distance


class ExtremalK(NamedTuple):
    k_max: int
    k_min: int


def q_int(r: int, q: int) -> int:
    """[r]_q = 1 + q + ... + q^(r-1), with [0]_q = 1."""
    if r < 0:
        raise NegativeArgument(f"r={r} must be nonnegative")
    if r == 0:
        return 1
    return sum(q ** i for i in range(r))


def q_factorial(r: int, q: int) -> int:
    if r < 0:
        raise NegativeArgument(f"r={r} must be nonnegative")
    return prod(q_int(i, q) for i in range(1, r + 1))


def gamma(n: int, q: int) -> int:
    """|GL_n(F_q)|, evaluated as a product and in factored form, which must agree."""
    if n < 0:
        raise NegativeArgument(f"n={n} must be nonnegative")
    product = prod(q ** n - q ** i for i in range(n))
    factored = q ** comb(n, 2) * (q - 1) ** n * q_factorial(n, q)
    if product != factored:
        raise VerificationError(f"gamma({n}, {q}): product {product} != factored form {factored}")
    return product


def gamma_recurrence_check(n: int, q: int) -> bool:
    if n < 2:
        raise OutOfRange(f"n={n} must be at least 2")
    return gamma(n, q) == q ** (n - 1) * (q ** n - 1) * gamma(n - 1, q)


def stanley_f(k: int, n: int, q: int) -> int:
    """Number of invertible n x n matrices with a_11 + ... + a_kk = 0."""
    if not 0 <= k <= n:
        raise OutOfRange(f"k={k} is outside [0, {n}]")
    numerator = gamma(n, q) + (-1) ** k * (q - 1) * q ** (k * (2 * n - k - 1) // 2) * gamma(n - k, q)
    value, remainder = divmod(numerator, q)
    if remainder:
        raise VerificationError(f"f_{k}({n}) over F_{q}: {numerator} is not divisible by {q}")
    return value


def stanley_gap(j: int, n: int, q: int) -> tuple[int, int]:
    """Both sides of q/(q-1) * (f_2 - f_j) = q^(2n-3) gamma(n-2) - (-1)^j q^(j(2n-j-1)/2) gamma(n-j)."""
    if n < 2 or not 1 <= j <= n:
        raise OutOfRange(f"j={j} is outside [1, {n}] or n={n} < 2")
    lhs, remainder = divmod(q * (stanley_f(2, n, q) - stanley_f(j, n, q)), q - 1)
    if remainder:
        raise VerificationError(f"q/(q-1) (f_2 - f_{j}) is not an integer for n={n}, q={q}")
    rhs = q ** (2 * n - 3) * gamma(n - 2, q) - (-1) ** j * q ** (j * (2 * n - j - 1) // 2) * gamma(n - j, q)
    return lhs, rhs


def extremal_k(n: int, q: int) -> ExtremalK:
    """argmax and argmin of f_k(n) over k in [1, n]; ties go to the smallest k."""
    if n < 2:
        raise OutOfRange(f"n={n} must be at least 2")
    values = {k: stanley_f(k, n, q) for k in range(1, n + 1)}
    top = max(values.values())
    bottom = min(values.values())
    return ExtremalK(
        k_max=min(k for k, v in values.items() if v == top),
        k_min=min(k for k, v in values.items() if v == bottom),
    )


def code_params(n: int, q: int) -> CodeParams:
    """Length, dimension and minimum distance of the GL_n(F_q) evaluation code."""
    if n < 2:
        raise OutOfRange(f"n={n} must be at least 2")
    prime_power(q)
    c = comb(n, 2)
    length = q ** c * (q - 1) ** n * q_factorial(n, q)
    min_distance = q ** (c - 1) * (q - 1) ** (n - 1) * ((q - 1) ** 2 * q_factorial(n, q) - q_factorial(n - 2, q))
    if min_distance != length - stanley_f(2, n, q):
        raise VerificationError(f"d={min_distance} differs from n - f_2 for n={n}, q={q}")
    return CodeParams(n=n, q=q, length=length, dimension=n * n, min_distance=min_distance)


def gl2_code_params(q: int) -> CodeParams:
    """The n = 2 specialization as polynomials in q."""
    prime_power(q)
    params = CodeParams(
        n=2,
        q=q,
        length=q ** 4 - q ** 3 - q ** 2 + q,
        dimension=4,
        min_distance=q ** 4 - 2 * q ** 3 + q,
    )
    if params != code_params(2, q):
        raise VerificationError(f"n=2 polynomials disagree with the general formula at q={q}")
    return params


def singleton_defect(params: CodeParams) -> int:
    return params.length - params.dimension + 1 - params.min_distance


def is_mds(params: CodeParams) -> bool:
    return singleton_defect(params) == 0


def griesmer_sum(params: CodeParams, convention: str = "standard") -> int:
    if convention not in GRIESMER_CONVENTIONS:
        raise OutOfRange(f"unknown Griesmer convention {convention!r}")
    upper = params.dimension - 1 if convention == "standard" else params.dimension
    d, q = params.min_distance, params.q
    return sum(-(-d // q ** i) for i in range(upper + 1))


def griesmer_defect(params: CodeParams, convention: str = "standard") -> int:
    """n - sum ceil(d / q^i); the standard bound sums i = 0 .. k-1."""
    defect = params.length - griesmer_sum(params, convention)
    if convention == "standard" and defect < 0:
        raise VerificationError(f"Griesmer bound violated by {params}")
    return defect


def big_cell_size(n: int, q: int) -> int:
    """|B^- B| = (q-1)^n q^(n(n-1))."""
    return (q - 1) ** n * q ** (n * (n - 1))


def params_table(n_max: int, qs) -> pd.DataFrame:
    """One row of parameters and defects per (n, q) with 2 <= n <= n_max."""
    if n_max < 2:
        raise OutOfRange(f"n_max={n_max} must be at least 2")
    qs = list(qs)
    if not qs:
        raise OutOfRange("at least one field order is required")
    rows = []
    for n in range(2, n_max + 1):
        for q in qs:
            params = code_params(n, q)
            rows.append(
                {
                    "n": n,
                    "q": q,
                    "length": params.length,
                    "dimension": params.dimension,
                    "min_distance": params.min_distance,
                    "singleton_defect": singleton_defect(params),
                    "griesmer_defect": griesmer_defect(params),
                }
            )
    return pd.DataFrame(rows, columns=PARAMS_COLUMNS)
