from .base import TABLE_LIMIT, Felt, FieldCtx, elements, fadd, finv, fmul, fneg
from .polynomials import is_irreducible, prime_power
from .registry import as_field, default_modulus, field_new, get_field

__all__ = [
    'TABLE_LIMIT',
    'Felt',
    'FieldCtx',
    'as_field',
    'default_modulus',
    'elements',
    'fadd',
    'field_new',
    'finv',
    'fmul',
    'fneg',
    'get_field',
    'is_irreducible',
    'prime_power',
]
