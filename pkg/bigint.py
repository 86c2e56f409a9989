"""Arbitrary-precision natural and signed integers on 32-bit limbs.

``Natural`` stores little-endian limbs in canonical form (no trailing zero
limb, zero is the empty tuple). Every operation returns a new value; nothing
is mutated after construction.

``mul_oracle`` is a plain schoolbook product kept deliberately separate from
every other multiplication routine in the package: tests compare the fast
paths against it.
"""
from __future__ import annotations

import functools
import logging
import re
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from config import settings
from errors import DivisionByZero, HexFormatError, NaturalUnderflow

LOGGER = logging.getLogger(__name__)

LIMB_BITS = 32
LIMB_BASE = 1 << LIMB_BITS
LIMB_MASK = LIMB_BASE - 1

_HEX_PATTERN = re.compile(r"^[0-9a-fA-F]+$")

Limbs = List[int]


def _trim(limbs: Limbs) -> Limbs:
    while limbs and limbs[-1] == 0:
        limbs.pop()
    return limbs


def _cmp_limbs(a: Sequence[int], b: Sequence[int]) -> int:
    if len(a) != len(b):
        return -1 if len(a) < len(b) else 1
    for x, y in zip(reversed(a), reversed(b)):
        if x != y:
            return -1 if x < y else 1
    return 0


def _add_limbs(a: Sequence[int], b: Sequence[int]) -> Limbs:
    if len(a) < len(b):
        a, b = b, a
    out: Limbs = []
    carry = 0
    for i, x in enumerate(a):
        t = x + (b[i] if i < len(b) else 0) + carry
        out.append(t & LIMB_MASK)
        carry = t >> LIMB_BITS
    if carry:
        out.append(carry)
    return out


def _sub_limbs(a: Sequence[int], b: Sequence[int]) -> Limbs:
    """a - b for a >= b; result untrimmed."""
    out: Limbs = []
    borrow = 0
    for i, x in enumerate(a):
        t = x - (b[i] if i < len(b) else 0) - borrow
        out.append(t & LIMB_MASK)
        borrow = 1 if t < 0 else 0
    if borrow:
        raise NaturalUnderflow("natural subtraction underflow")
    return out


def _add_into(acc: Limbs, x: Sequence[int], offset: int) -> None:
    """acc += x * BASE**offset, growing acc as needed."""
    if len(acc) < offset + len(x):
        acc.extend([0] * (offset + len(x) - len(acc)))
    carry = 0
    for i, limb in enumerate(x):
        pos = offset + i
        t = acc[pos] + limb + carry
        acc[pos] = t & LIMB_MASK
        carry = t >> LIMB_BITS
    pos = offset + len(x)
    while carry:
        if pos >= len(acc):
            acc.append(0)
        t = acc[pos] + carry
        acc[pos] = t & LIMB_MASK
        carry = t >> LIMB_BITS
        pos += 1


def _shift_left_limbs(a: Sequence[int], bits: int) -> Limbs:
    whole, part = divmod(bits, LIMB_BITS)
    out: Limbs = [0] * whole
    if part == 0:
        out.extend(a)
        return out
    carry = 0
    for x in a:
        t = (x << part) | carry
        out.append(t & LIMB_MASK)
        carry = t >> LIMB_BITS
    if carry:
        out.append(carry)
    return out


def _shift_right_limbs(a: Sequence[int], bits: int) -> Limbs:
    whole, part = divmod(bits, LIMB_BITS)
    src = a[whole:]
    if part == 0:
        return list(src)
    out: Limbs = []
    for i, x in enumerate(src):
        hi = src[i + 1] if i + 1 < len(src) else 0
        out.append(((x >> part) | (hi << (LIMB_BITS - part))) & LIMB_MASK)
    return out


@functools.total_ordering
@dataclass(frozen=True)
class Natural:
    """Non-negative integer as canonical little-endian 32-bit limbs."""

    limbs: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if not isinstance(self.limbs, tuple):
            object.__setattr__(self, "limbs", tuple(self.limbs))
        if self.limbs and self.limbs[-1] == 0:
            raise ValueError("Natural limbs must not end in a zero limb")

    # --- construction / conversion ---------------------------------------
    @classmethod
    def _wrap(cls, limbs: Limbs) -> "Natural":
        return cls(tuple(_trim(limbs)))

    @classmethod
    def from_int(cls, value: int) -> "Natural":
        if value < 0:
            raise NaturalUnderflow(f"negative value for Natural: {value}")
        if value == 0:
            return ZERO
        count = (value.bit_length() + LIMB_BITS - 1) // LIMB_BITS
        raw = value.to_bytes(count * 4, "little")
        return cls(tuple(np.frombuffer(raw, dtype="<u4").tolist()))

    def __int__(self) -> int:
        if not self.limbs:
            return 0
        return int.from_bytes(np.asarray(self.limbs, dtype="<u4").tobytes(), "little")

    def __repr__(self) -> str:
        return f"Natural(0x{format_hex(self)})"

    def __bool__(self) -> bool:
        return bool(self.limbs)

    def bit_length(self) -> int:
        if not self.limbs:
            return 0
        return (len(self.limbs) - 1) * LIMB_BITS + self.limbs[-1].bit_length()

    # --- comparison -------------------------------------------------------
    def __eq__(self, other: object) -> bool:
        if isinstance(other, Natural):
            return self.limbs == other.limbs
        return NotImplemented

    def __lt__(self, other: "Natural") -> bool:
        return _cmp_limbs(self.limbs, other.limbs) < 0

    def __hash__(self) -> int:
        return hash(self.limbs)

    # --- arithmetic -------------------------------------------------------
    def __add__(self, other: "Natural") -> "Natural":
        return Natural._wrap(_add_limbs(self.limbs, other.limbs))

    def __sub__(self, other: "Natural") -> "Natural":
        if _cmp_limbs(self.limbs, other.limbs) < 0:
            raise NaturalUnderflow("natural subtraction underflow")
        return Natural._wrap(_sub_limbs(self.limbs, other.limbs))

    def __mul__(self, other: "Natural") -> "Natural":
        return mul_karatsuba(self, other)

    def __divmod__(self, other: "Natural") -> Tuple["Natural", "Natural"]:
        return divmod_natural(self, other)

    def __floordiv__(self, other: "Natural") -> "Natural":
        return divmod_natural(self, other)[0]

    def __mod__(self, other: "Natural") -> "Natural":
        return divmod_natural(self, other)[1]

    def __lshift__(self, bits: int) -> "Natural":
        if not self.limbs:
            return ZERO
        return Natural._wrap(_shift_left_limbs(self.limbs, bits))

    def __rshift__(self, bits: int) -> "Natural":
        return Natural._wrap(_shift_right_limbs(self.limbs, bits))

    def bitslice(self, lo: int, width: int) -> "Natural":
        return bitslice(self, lo, width)

    @classmethod
    def overlap_add(cls, chunks: Sequence["Natural"], stride_bits: int) -> "Natural":
        """Sum of chunks[i] * 2**(i*stride_bits), accumulated with carries."""
        acc: Limbs = []
        for i, chunk in enumerate(chunks):
            if not chunk.limbs:
                continue
            whole, part = divmod(i * stride_bits, LIMB_BITS)
            _add_into(acc, _shift_left_limbs(chunk.limbs, part), whole)
        return cls._wrap(acc)


ZERO = Natural()
ONE = Natural((1,))


@functools.total_ordering
@dataclass(frozen=True)
class SignedInt:
    """Sign-magnitude integer; sign is 0 exactly when magnitude is zero."""

    sign: int
    magnitude: Natural

    def __post_init__(self) -> None:
        if self.sign not in (-1, 0, 1):
            raise ValueError(f"invalid sign: {self.sign}")
        if (self.sign == 0) != (not self.magnitude):
            raise ValueError("sign must be 0 exactly when magnitude is zero")

    @classmethod
    def from_natural(cls, value: Natural, negative: bool = False) -> "SignedInt":
        if not value:
            return SIGNED_ZERO
        return cls(-1 if negative else 1, value)

    @classmethod
    def from_int(cls, value: int) -> "SignedInt":
        return cls.from_natural(Natural.from_int(abs(value)), negative=value < 0)

    def __int__(self) -> int:
        return self.sign * int(self.magnitude)

    def __repr__(self) -> str:
        return f"SignedInt({int(self)})"

    def __neg__(self) -> "SignedInt":
        return SignedInt(-self.sign, self.magnitude)

    def __add__(self, other: "SignedInt") -> "SignedInt":
        if self.sign == 0:
            return other
        if other.sign == 0:
            return self
        if self.sign == other.sign:
            return SignedInt(self.sign, self.magnitude + other.magnitude)
        order = _cmp_limbs(self.magnitude.limbs, other.magnitude.limbs)
        if order == 0:
            return SIGNED_ZERO
        if order > 0:
            return SignedInt(self.sign, self.magnitude - other.magnitude)
        return SignedInt(other.sign, other.magnitude - self.magnitude)

    def __sub__(self, other: "SignedInt") -> "SignedInt":
        return self + (-other)

    def __mul__(self, other: "SignedInt") -> "SignedInt":
        return SignedInt.from_natural(
            mul_karatsuba(self.magnitude, other.magnitude),
            negative=self.sign * other.sign < 0,
        )

    def __lshift__(self, bits: int) -> "SignedInt":
        return SignedInt.from_natural(self.magnitude << bits, negative=self.sign < 0)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, SignedInt):
            return self.sign == other.sign and self.magnitude == other.magnitude
        return NotImplemented

    def __lt__(self, other: "SignedInt") -> bool:
        return cmp(self, other) < 0

    def __hash__(self) -> int:
        return hash((self.sign, self.magnitude))

    def mod(self, modulus: Natural) -> Natural:
        """Least non-negative residue modulo a positive natural."""
        remainder = divmod_natural(self.magnitude, modulus)[1]
        if self.sign >= 0 or not remainder:
            return remainder
        return modulus - remainder


SIGNED_ZERO = SignedInt(0, ZERO)

Number = Union[Natural, SignedInt]


# --- add / sub / cmp -------------------------------------------------------
def add(x: Number, y: Number) -> Number:
    return x + y


def sub(x: Number, y: Number) -> Number:
    return x - y


def cmp(x: Number, y: Number) -> int:
    """Three-way comparison: -1, 0 or 1."""
    if isinstance(x, Natural) and isinstance(y, Natural):
        return _cmp_limbs(x.limbs, y.limbs)
    if isinstance(x, SignedInt) and isinstance(y, SignedInt):
        if x.sign != y.sign:
            return -1 if x.sign < y.sign else 1
        order = _cmp_limbs(x.magnitude.limbs, y.magnitude.limbs)
        return order * x.sign if x.sign else 0
    raise TypeError("cmp needs two Natural or two SignedInt values")


# --- multiplication --------------------------------------------------------
def mul_oracle(x: Natural, y: Natural) -> Natural:
    """Schoolbook product; independent reference for every other multiplier."""
    a, b = x.limbs, y.limbs
    if not a or not b:
        return ZERO
    result = [0] * (len(a) + len(b))
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        carry = 0
        for j, bj in enumerate(b):
            t = result[i + j] + ai * bj + carry
            result[i + j] = t & LIMB_MASK
            carry = t >> LIMB_BITS
        result[i + len(b)] = carry
    return Natural._wrap(result)


def _mul_basecase(a: Sequence[int], b: Sequence[int]) -> Limbs:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b))
    for j, bj in enumerate(b):
        if bj == 0:
            continue
        carry = 0
        for i, ai in enumerate(a):
            t = out[i + j] + ai * bj + carry
            out[i + j] = t & LIMB_MASK
            carry = t >> LIMB_BITS
        out[j + len(a)] += carry
    return out


def _karatsuba(a: Sequence[int], b: Sequence[int], cutoff: int) -> Limbs:
    if min(len(a), len(b)) < cutoff:
        return _mul_basecase(a, b)
    half = max(len(a), len(b)) // 2
    a0, a1 = _trim(list(a[:half])), a[half:]
    b0, b1 = _trim(list(b[:half])), b[half:]

    z0 = _trim(_karatsuba(a0, b0, cutoff))
    z2 = _trim(_karatsuba(a1, b1, cutoff))
    mid = _trim(_karatsuba(_add_limbs(a0, a1), _add_limbs(b0, b1), cutoff))
    z1 = _trim(_sub_limbs(_trim(_sub_limbs(mid, z0)), z2))

    out: Limbs = list(z0)
    _add_into(out, z1, half)
    _add_into(out, z2, 2 * half)
    return out


def mul_karatsuba(x: Natural, y: Natural, cutoff: Optional[int] = None) -> Natural:
    """Karatsuba product, switching to schoolbook below ``cutoff`` limbs."""
    limit = max(2, cutoff if cutoff is not None else settings.karatsuba_cutoff)
    if not x.limbs or not y.limbs:
        return ZERO
    return Natural._wrap(_karatsuba(x.limbs, y.limbs, limit))


# --- division --------------------------------------------------------------
def _divmod_small(a: Sequence[int], d: int) -> Tuple[Limbs, int]:
    quotient = [0] * len(a)
    rem = 0
    for i in range(len(a) - 1, -1, -1):
        cur = (rem << LIMB_BITS) | a[i]
        quotient[i], rem = divmod(cur, d)
    return quotient, rem


def _divmod_knuth(a: Sequence[int], b: Sequence[int]) -> Tuple[Limbs, Limbs]:
    """Long division of limb vectors (len(b) >= 2, a >= b)."""
    n = len(b)
    shift = LIMB_BITS - b[-1].bit_length()
    vn = _shift_left_limbs(b, shift)[:n]
    un = _shift_left_limbs(a, shift)
    un.extend([0] * (len(a) + 1 - len(un)))
    m = len(un) - n
    quotient = [0] * m
    top, second = vn[n - 1], vn[n - 2]

    for j in range(m - 1, -1, -1):
        numerator = (un[j + n] << LIMB_BITS) | un[j + n - 1]
        qhat, rhat = divmod(numerator, top)
        while qhat >= LIMB_BASE or qhat * second > ((rhat << LIMB_BITS) | un[j + n - 2]):
            qhat -= 1
            rhat += top
            if rhat >= LIMB_BASE:
                break

        borrow = 0
        carry = 0
        for i in range(n):
            product = qhat * vn[i] + carry
            carry = product >> LIMB_BITS
            t = un[i + j] - (product & LIMB_MASK) - borrow
            un[i + j] = t & LIMB_MASK
            borrow = 1 if t < 0 else 0
        t = un[j + n] - carry - borrow
        un[j + n] = t & LIMB_MASK

        if t < 0:
            qhat -= 1
            carry = 0
            for i in range(n):
                s = un[i + j] + vn[i] + carry
                un[i + j] = s & LIMB_MASK
                carry = s >> LIMB_BITS
            un[j + n] = (un[j + n] + carry) & LIMB_MASK
        quotient[j] = qhat

    remainder = _shift_right_limbs(un[:n], shift)
    return quotient, remainder


def divmod_natural(x: Natural, y: Natural) -> Tuple[Natural, Natural]:
    """Return (q, r) with x = q*y + r and 0 <= r < y."""
    if not y.limbs:
        raise DivisionByZero("division by zero")
    if _cmp_limbs(x.limbs, y.limbs) < 0:
        return ZERO, x
    if len(y.limbs) == 1:
        quotient, rem = _divmod_small(x.limbs, y.limbs[0])
        return Natural._wrap(quotient), Natural.from_int(rem)
    quotient, remainder = _divmod_knuth(x.limbs, y.limbs)
    return Natural._wrap(quotient), Natural._wrap(remainder)


# --- bit slicing -----------------------------------------------------------
def bitslice(x: Natural, lo: int, width: int) -> Natural:
    """floor(x / 2**lo) mod 2**width, touching only the limbs involved."""
    if lo < 0 or width < 0:
        raise ValueError("bitslice needs non-negative lo and width")
    if width == 0 or lo >= x.bit_length():
        return ZERO
    first = lo // LIMB_BITS
    last = min(len(x.limbs), (lo + width) // LIMB_BITS + 1)
    window = _shift_right_limbs(x.limbs[first:last], lo - first * LIMB_BITS)
    whole, part = divmod(width, LIMB_BITS)
    window = window[: whole + (1 if part else 0)]
    if part and len(window) > whole:
        window[whole] &= (1 << part) - 1
    return Natural._wrap(window)


# --- hex I/O ---------------------------------------------------------------
def parse_hex(text: str) -> Natural:
    """Parse big-endian hex without prefix; upper case digits are accepted."""
    digits = text.strip()
    if not _HEX_PATTERN.match(digits):
        raise HexFormatError(f"Invalid hex operand: {text!r}")
    if len(digits) % 2:
        digits = "0" + digits
    raw = bytes.fromhex(digits)[::-1]
    raw += b"\x00" * (-len(raw) % 4)
    return Natural._wrap(np.frombuffer(raw, dtype="<u4").tolist())


def format_hex(x: Natural) -> str:
    """Lowercase big-endian hex, no prefix; zero formats as "0"."""
    if not x.limbs:
        return "0"
    raw = np.asarray(x.limbs, dtype="<u4").tobytes()[::-1]
    return raw.hex().lstrip("0")
