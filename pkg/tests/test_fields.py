import logging

import numpy as np
import pytest

from src.errors import DivisionByZero, MixedFields, NotAPrimePower, OutOfRange, ReduciblePolynomial
from src.fields import FieldCtx, as_field, default_modulus, elements, fadd, field_new, finv, fmul, fneg, is_irreducible, prime_power
from src.fields.polynomials import first_irreducible, poly_mulmod
from src.fields.registry import get_supported_default_orders


def codes(ctx):
    return [int(x) for x in elements(ctx)]


def test_prime_power_split():
    assert prime_power(2) == (2, 1)
    assert prime_power(8) == (2, 3)
    assert prime_power(81) == (3, 4)
    for bad in (0, 1, 6, 12, True):
        with pytest.raises(NotAPrimePower):
            prime_power(bad)


def test_field_new_prime_and_extension(f2, f4):
    assert codes(f2) == [0, 1]
    assert codes(field_new(3)) == [0, 1, 2]
    assert codes(f4) == [0, 1, 2, 3]
    assert f4.modulus == (1, 1, 1)
    custom = field_new(4, [1, 1, 1])
    assert fmul(custom.element(2), custom.element(3)) == custom.element(1)


def test_field_new_rejects_bad_input():
    with pytest.raises(NotAPrimePower, match="q=6"):
        field_new(6)
    with pytest.raises(ReduciblePolynomial):
        field_new(4, [1, 0, 1])  # x^2 + 1 = (x + 1)^2 over F_2
    with pytest.raises(ReduciblePolynomial):
        field_new(4, [1, 1])


def test_basic_arithmetic(f2, f3, f4):
    assert fadd(f2.element(1), f2.element(1)) == f2.element(0)
    assert finv(f3.element(2)) == f3.element(2)
    assert fmul(f4.element(2), f4.element(2)) == f4.element(3)
    assert fneg(f3.element(1)) == f3.element(2)
    with pytest.raises(DivisionByZero):
        finv(f3.element(0))


def test_felt_operators(f4):
    x = f4.element(2)
    assert x * x * x == f4.element(1)
    assert x ** -1 == x.inverse() == f4.element(3)
    assert x / x == f4.element(1)
    assert x - x == f4.element(0)
    assert -x == x
    assert x + 1 == f4.element(3)
    assert int(x) == 2
    assert not f4.element(0)


def test_elements_from_different_fields_do_not_mix(f2, f3):
    with pytest.raises(MixedFields):
        f2.element(1) + f3.element(1)


def test_element_encoding_is_checked(f3):
    with pytest.raises(OutOfRange):
        f3.element(3)


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9, 16])
def test_field_axioms_exhaustive(q):
    ctx = field_new(q)
    add, mul, inv = ctx.tables["add"], ctx.tables["mul"], ctx.tables["inv"]
    a, b, c = np.meshgrid(np.arange(q), np.arange(q), np.arange(q), indexing="ij")
    assert np.array_equal(add[add[a, b], c], add[a, add[b, c]])
    assert np.array_equal(mul[mul[a, b], c], mul[a, mul[b, c]])
    assert np.array_equal(mul[a, add[b, c]], add[mul[a, b], mul[a, c]])
    assert np.array_equal(mul, mul.T)
    assert (mul[np.arange(1, q), inv[1:]] == 1).all()


def test_tables_are_read_only(f4):
    with pytest.raises(ValueError):
        f4.tables["add"][0, 0] = 1


def test_default_moduli_are_irreducible():
    for q in get_supported_default_orders():
        p, m = prime_power(q)
        assert is_irreducible(default_modulus(q), p)


def test_missing_default_falls_back_with_warning(caplog):
    with caplog.at_level(logging.WARNING):
        modulus = default_modulus(2 ** 9)
    assert modulus == first_irreducible(2, 9)
    assert "No default polynomial" in caplog.text


def test_poly_mulmod_reduces():
    # x * x = x + 1 modulo x^2 + x + 1 over F_2
    assert poly_mulmod((0, 1), (0, 1), (1, 1, 1), 2) == (1, 1)


def test_field_ctx_round_trips_through_dict(f4):
    assert FieldCtx.from_dict(f4.to_dict()) == f4
    assert as_field(4) == f4
    assert as_field(f4) is f4


@pytest.mark.parametrize("q", [4, 8, 9, 16, 25, 27])
def test_multiplication_matches_galois(q):
    galois = pytest.importorskip("galois")
    ctx = field_new(q)
    GF = galois.GF(q, irreducible_poly=galois.Poly(list(reversed(ctx.modulus)), field=galois.GF(ctx.p)))
    values = GF(np.arange(q))
    expected = np.asarray(values[:, None] * values[None, :], dtype=np.int64)
    assert np.array_equal(ctx.tables["mul"], expected)


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9, 11, 13, 16])
def test_nonzero_elements_satisfy_lagrange(q):
    ctx = field_new(q)
    for a in range(1, q):
        assert ctx.power(a, q - 1) == 1
        assert ctx.element(a) ** q == ctx.element(a)


@pytest.mark.parametrize("q", [2, 3, 4, 8, 9, 16, 25, 27])
def test_digit_encoding_round_trip(q):
    ctx = field_new(q)
    for code in range(q):
        digits = ctx.digits(code)
        assert len(digits) == ctx.m
        assert all(0 <= d < ctx.p for d in digits)
        assert ctx.from_digits(digits) == code
