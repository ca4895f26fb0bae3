"""Finite field contract: FieldCtx and its elements.

An element of F_q = F_p[x]/(modulus) is stored as the integer
e = sum(d_i * p**i) of its coset representative sum(d_i * x**i), 0 <= d_i < p.
Encodings are exactly 0 .. q-1; 0 and 1 are the additive and multiplicative
identities.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterator

import numpy as np

from src.errors import DivisionByZero, MixedFields, NotAPrimePower, OutOfRange, ReduciblePolynomial

from .polynomials import is_irreducible, poly_mulmod, prime_power, trim

TABLE_LIMIT = 256


@dataclass(frozen=True)
class FieldCtx:
    p: int
    m: int
    modulus: tuple[int, ...]

    def __post_init__(self):
        p, m = prime_power(self.p ** self.m)
        if (p, m) != (self.p, self.m):
            raise NotAPrimePower(f"p={self.p} is not prime")
        modulus = tuple(int(c) for c in self.modulus)
        if len(modulus) != self.m + 1 or modulus[-1] != 1 or any(not 0 <= c < self.p for c in modulus):
            raise ReduciblePolynomial(
                f"modulus {list(modulus)} is not a monic degree-{self.m} polynomial over F_{self.p}"
            )
        if self.m > 1 and not is_irreducible(modulus, self.p):
            raise ReduciblePolynomial(f"modulus {list(modulus)} is reducible over F_{self.p}")
        object.__setattr__(self, "modulus", modulus)
        if self.q <= TABLE_LIMIT:
            self.tables  # noqa: B018 - eager build

    @property
    def q(self) -> int:
        return self.p ** self.m

    def __repr__(self):
        return f"FieldCtx(q={self.q}, modulus={list(self.modulus)})"

    # encoding

    def digits(self, code: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.m):
            out.append(code % self.p)
            code //= self.p
        return tuple(out)

    def from_digits(self, digits) -> int:
        code = 0
        for d in reversed(digits):
            code = code * self.p + d % self.p
        return code

    def check(self, code) -> int:
        code = int(code)
        if not 0 <= code < self.q:
            raise OutOfRange(f"{code} is not an element encoding of F_{self.q}")
        return code

    def element(self, code) -> Felt:
        return Felt(self.check(code), self)

    def elements(self) -> Iterator[Felt]:
        for code in range(self.q):
            yield Felt(code, self)

    # lookup tables

    @cached_property
    def tables(self) -> dict[str, np.ndarray]:
        """add/mul tables (q x q) plus neg/inv vectors, all indexed by encoding."""
        q, p = self.q, self.p
        codes = np.arange(q, dtype=np.int64)
        digits = np.stack([(codes // p ** i) % p for i in range(self.m)], axis=1)
        weights = p ** np.arange(self.m, dtype=np.int64)
        add = (((digits[:, None, :] + digits[None, :, :]) % p) * weights).sum(axis=2)
        neg = (((-digits) % p) * weights).sum(axis=1)

        _, exp = self._primitive_powers()
        log = np.zeros(q, dtype=np.int64)
        log[exp] = np.arange(q - 1, dtype=np.int64)
        exp_arr = np.asarray(exp, dtype=np.int64)
        mul = np.zeros((q, q), dtype=np.int64)
        nz = codes[1:]
        mul[1:, 1:] = exp_arr[(log[nz][:, None] + log[nz][None, :]) % (q - 1)]
        inv = np.zeros(q, dtype=np.int64)
        inv[1:] = exp_arr[(-log[nz]) % (q - 1)]
        tables = {"add": add, "mul": mul, "neg": neg, "inv": inv}
        for array in tables.values():
            array.setflags(write=False)
        return tables

    @cached_property
    def _rows(self):
        tables = self.tables
        return {name: array.tolist() for name, array in tables.items()}

    def _primitive_powers(self):
        q = self.q
        for g in range(1, q):
            powers = [1]
            value = g
            while value != 1:
                powers.append(value)
                value = self._poly_mul(value, g)
            if len(powers) == q - 1:
                return g, powers
        raise RuntimeError(f"no primitive element found in F_{q}")

    def _poly_mul(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a * b) % self.p
        product = poly_mulmod(trim(self.digits(a), self.p), trim(self.digits(b), self.p), self.modulus, self.p)
        return self.from_digits(product)

    # integer-level arithmetic on encodings

    def add(self, a: int, b: int) -> int:
        return self._rows["add"][a][b]

    def sub(self, a: int, b: int) -> int:
        return self._rows["add"][a][self._rows["neg"][b]]

    def neg(self, a: int) -> int:
        return self._rows["neg"][a]

    def mul(self, a: int, b: int) -> int:
        return self._rows["mul"][a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero(f"0 has no inverse in F_{self.q}")
        return self._rows["inv"][a]

    def power(self, a: int, exponent: int) -> int:
        if exponent < 0:
            a, exponent = self.inv(a), -exponent
        result = 1
        while exponent:
            if exponent & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            exponent >>= 1
        return result

    def to_dict(self) -> dict:
        return {"p": self.p, "m": self.m, "modulus": list(self.modulus)}

    @classmethod
    def from_dict(cls, data) -> FieldCtx:
        return cls(int(data["p"]), int(data["m"]), tuple(data["modulus"]))


@dataclass(frozen=True)
class Felt:
    code: int
    ctx: FieldCtx

    def _same(self, other) -> Felt:
        if isinstance(other, Felt):
            if other.ctx != self.ctx:
                raise MixedFields(f"cannot combine elements of {self.ctx} and {other.ctx}")
            return other
        if isinstance(other, int):
            return self.ctx.element(other)
        return NotImplemented

    def __add__(self, other):
        other = self._same(other)
        if other is NotImplemented:
            return other
        return Felt(self.ctx.add(self.code, other.code), self.ctx)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._same(other)
        if other is NotImplemented:
            return other
        return Felt(self.ctx.sub(self.code, other.code), self.ctx)

    def __rsub__(self, other):
        other = self._same(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._same(other)
        if other is NotImplemented:
            return other
        return Felt(self.ctx.mul(self.code, other.code), self.ctx)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._same(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __neg__(self):
        return Felt(self.ctx.neg(self.code), self.ctx)

    def __pow__(self, exponent: int):
        return Felt(self.ctx.power(self.code, exponent), self.ctx)

    def inverse(self) -> Felt:
        return Felt(self.ctx.inv(self.code), self.ctx)

    def __int__(self):
        return self.code

    def __index__(self):
        return self.code

    def __bool__(self):
        return self.code != 0

    def __repr__(self):
        return f"Felt({self.code}, q={self.ctx.q})"


def fadd(a: Felt, b: Felt) -> Felt:
    return a + b


def fmul(a: Felt, b: Felt) -> Felt:
    return a * b


def fneg(a: Felt) -> Felt:
    return -a


def finv(a: Felt) -> Felt:
    return a.inverse()


def elements(ctx: FieldCtx) -> Iterator[Felt]:
    """All q elements in increasing encoding order, starting at 0."""
    return ctx.elements()
