"""Field registry: default polynomials and cached field construction."""

from __future__ import annotations

import logging
from functools import lru_cache

from src.errors import ReduciblePolynomial

from .base import FieldCtx
from .polynomials import first_irreducible, prime_power

logger = logging.getLogger(__name__)

# Conway polynomials, coefficients lowest degree first.
_DEFAULT_MODULI = {
    4: (1, 1, 1),
    8: (1, 1, 0, 1),
    9: (2, 2, 1),
    16: (1, 1, 0, 0, 1),
    25: (2, 4, 1),
    27: (1, 2, 0, 1),
    32: (1, 0, 1, 0, 0, 1),
    49: (3, 6, 1),
    64: (1, 1, 0, 1, 1, 0, 1),
    81: (2, 0, 0, 2, 1),
    121: (2, 7, 1),
    125: (3, 3, 0, 1),
    128: (1, 1, 0, 0, 0, 0, 0, 1),
}


def default_modulus(q):
    p, m = prime_power(q)
    if m == 1:
        return (0, 1)
    try:
        return _DEFAULT_MODULI[q]
    except KeyError:
        modulus = first_irreducible(p, m)
        logger.warning("No default polynomial for q=%s; using smallest irreducible %s", q, list(modulus))
        return modulus


def get_supported_default_orders():
    return sorted(_DEFAULT_MODULI)


def field_new(q, modulus=None):
    """Build F_q, with the default polynomial unless a modulus is supplied."""
    p, m = prime_power(q)
    if modulus is None:
        modulus = default_modulus(q)
    else:
        try:
            modulus = tuple(int(c) for c in modulus)
        except (TypeError, ValueError) as exc:
            raise ReduciblePolynomial(f"modulus {modulus!r} is not a coefficient list") from exc
    return get_field(p, m, modulus)


@lru_cache(maxsize=None)
def get_field(p, m, modulus):
    ctx = FieldCtx(p, m, tuple(modulus))
    logger.debug("Built %r", ctx)
    return ctx


def as_field(field):
    """Accept a FieldCtx or a field order."""
    if isinstance(field, FieldCtx):
        return field
    return field_new(field)
