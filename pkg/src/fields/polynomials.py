"""Prime-power splitting and dense polynomial arithmetic over F_p.

Polynomials are tuples of coefficients, lowest degree first, each in [0, p).
"""

from __future__ import annotations

import operator
from itertools import product

from src.errors import NotAPrimePower


def prime_power(q: int) -> tuple[int, int]:
    """Return (p, m) with q = p**m, p prime, m >= 1."""
    if isinstance(q, bool):
        raise NotAPrimePower(f"q={q!r} is not a prime power")
    try:
        q = operator.index(q)
    except TypeError:
        raise NotAPrimePower(f"q={q!r} is not a prime power") from None
    if q < 2:
        raise NotAPrimePower(f"q={q} is not a prime power")
    p = None
    d = 2
    while d * d <= q:
        if q % d == 0:
            p = d
            break
        d += 1
    if p is None:
        return q, 1
    m = 0
    rest = q
    while rest % p == 0:
        rest //= p
        m += 1
    if rest != 1:
        raise NotAPrimePower(f"q={q} is not a prime power")
    return p, m


def trim(poly, p: int) -> tuple[int, ...]:
    coeffs = [c % p for c in poly]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def degree(poly) -> int:
    return len(poly) - 1


def poly_mod(a, b, p: int) -> tuple[int, ...]:
    """Remainder of a divided by b over F_p (b nonzero)."""
    a = list(trim(a, p))
    b = trim(b, p)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    lead_inv = pow(b[-1], -1, p)
    db = degree(b)
    while len(a) - 1 >= db and a:
        shift = len(a) - 1 - db
        factor = (a[-1] * lead_inv) % p
        for i, coeff in enumerate(b):
            a[shift + i] = (a[shift + i] - factor * coeff) % p
        while a and a[-1] == 0:
            a.pop()
    return tuple(a)


def poly_mulmod(a, b, modulus, p: int) -> tuple[int, ...]:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    return poly_mod(out, modulus, p)


def monic_polynomials(p: int, deg: int):
    """Yield every monic polynomial of the given degree."""
    for low in product(range(p), repeat=deg):
        yield tuple(low) + (1,)


def is_irreducible(poly, p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    poly = trim(poly, p)
    deg = degree(poly)
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for divisor in monic_polynomials(p, d):
            if not poly_mod(poly, divisor, p):
                return False
    return True


def first_irreducible(p: int, m: int) -> tuple[int, ...]:
    """Smallest monic irreducible of degree m, ordered by the base-p encoding of its low coefficients."""
    for low_code in range(p ** m):
        low = []
        rest = low_code
        for _ in range(m):
            low.append(rest % p)
            rest //= p
        candidate = tuple(low) + (1,)
        if is_irreducible(candidate, p):
            return candidate
    raise RuntimeError(f"no irreducible polynomial of degree {m} over F_{p}")
