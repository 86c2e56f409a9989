"""Arithmetic in F_p for an FFT prime, roots of unity and balanced lifting."""
from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Union

from bigint import Natural, SignedInt
from errors import ContextMismatch, DivisionByZero, OrderMismatch
from primes import FftPrime, lg

LOGGER = logging.getLogger(__name__)

Operand = Union["FieldElement", int]


@dataclass(frozen=True)
class FieldElement:
    """Canonical residue in [0, p) tied to its prime.

    Values are plain Python ints; ``Natural`` only appears where integers
    cross the field boundary (``reduce`` and ``balanced_lift``).
    """

    value: int
    field: FftPrime

    def __post_init__(self) -> None:
        if not 0 <= self.value < self.field.p:
            raise ValueError(f"{self.value} is not a canonical residue mod {self.field.p}")

    @classmethod
    def of(cls, field: FftPrime, value: int) -> "FieldElement":
        return cls(value % field.p, field)

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"FieldElement({self.value} mod {self.field.p})"

    def _other(self, other: Operand) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ContextMismatch(
                    f"cannot combine elements of F_{self.field.p} and F_{other.field.p}"
                )
            return other.value
        if isinstance(other, int):
            return other % self.field.p
        return NotImplemented

    def _make(self, value: int) -> "FieldElement":
        return FieldElement(value % self.field.p, self.field)

    def __add__(self, other: Operand) -> "FieldElement":
        return self._make(self.value + self._other(other))

    __radd__ = __add__

    def __sub__(self, other: Operand) -> "FieldElement":
        return self._make(self.value - self._other(other))

    def __rsub__(self, other: int) -> "FieldElement":
        return self._make(self._other(other) - self.value)

    def __mul__(self, other: Operand) -> "FieldElement":
        return self._make(self.value * self._other(other))

    __rmul__ = __mul__

    def __neg__(self) -> "FieldElement":
        return self._make(-self.value)

    def __pow__(self, exponent: int) -> "FieldElement":
        if exponent < 0:
            return self.inv() ** (-exponent)
        return FieldElement(pow(self.value, exponent, self.field.p), self.field)

    def __truediv__(self, other: Operand) -> "FieldElement":
        divisor = other if isinstance(other, FieldElement) else self._make(self._other(other))
        return self * divisor.inv()

    def inv(self) -> "FieldElement":
        if self.value == 0:
            raise DivisionByZero(f"zero has no inverse in F_{self.field.p}")
        return FieldElement(pow(self.value, -1, self.field.p), self.field)

    def is_one(self) -> bool:
        return self.value == 1


# Free-function forms of the operators.
def add(x: FieldElement, y: FieldElement) -> FieldElement:
    return x + y


def sub(x: FieldElement, y: FieldElement) -> FieldElement:
    return x - y


def mul(x: FieldElement, y: FieldElement) -> FieldElement:
    return x * y


def neg(x: FieldElement) -> FieldElement:
    return -x


def inv(x: FieldElement) -> FieldElement:
    return x.inv()


def power(x: FieldElement, exponent: int) -> FieldElement:
    return x ** exponent


def reduce(field: FftPrime, value: Union[int, Natural, SignedInt]) -> FieldElement:
    """Residue of an integer of any representation."""
    return FieldElement.of(field, int(value))


def _sylow_candidate(field: FftPrime, x: int) -> Optional[int]:
    p, m = field.p, field.m
    c = pow(x, (p - 1) >> m, p)
    if pow(c, 1 << (m - 1), p) == p - 1:
        return c
    return None


@lru_cache(maxsize=128)
def _sylow_generator(field: FftPrime) -> int:
    """Generator of the 2-Sylow subgroup, reproducible per prime."""
    rng = random.Random(field.p)
    tries = 0
    while True:
        tries += 1
        c = _sylow_candidate(field, rng.randrange(2, field.p))
        if c is not None:
            LOGGER.debug("Found 2-power generator of F_%d after %d tries", field.p, tries)
            return c


def root_of_unity(
    field: FftPrime, order: int, rng: Optional[random.Random] = None
) -> FieldElement:
    """Element zeta with zeta**order == 1 and zeta**(order/2) == -1.

    Roots drawn without ``rng`` are powers of one cached generator, so
    root_of_unity(F, 2L) ** 2 == root_of_unity(F, L).
    """
    if order < 1 or order & (order - 1):
        raise OrderMismatch(f"root order must be a power of two, got {order}")
    if lg(order) > field.m:
        raise OrderMismatch(f"F_{field.p} has no root of order {order} (2^{field.m} max)")
    if order == 1:
        return FieldElement(1, field)
    if rng is None:
        c = _sylow_generator(field)
    else:
        c = None
        while c is None:
            c = _sylow_candidate(field, rng.randrange(2, field.p))
    return FieldElement(pow(c, 1 << (field.m - lg(order)), field.p), field)


def has_order(zeta: FieldElement, order: int) -> bool:
    """Literal order test for a power-of-two order."""
    if order == 1:
        return zeta.value == 1
    return (zeta ** order).is_one() and not (zeta ** (order // 2)).is_one()


def balanced_int(value: int, p: int) -> int:
    return value - p if value > p // 2 else value


def balanced_lift(x: FieldElement) -> SignedInt:
    """The unique y = x (mod p) with -p/2 < y < p/2."""
    return SignedInt.from_int(balanced_int(x.value, x.field.p))
