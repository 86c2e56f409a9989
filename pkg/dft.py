"""DFT engines over F_p: naive oracle, radix-2, and long-to-short Cooley-Tukey.

All public outputs are in natural index order. Internally every engine
works on rows of plain int residues; ``PolyModXL`` wraps a row together
with its prime at the API boundary.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache, partial
from typing import Callable, List, Optional, Sequence, Tuple, TypeVar

from counters import op_counters
from errors import ContextMismatch, OrderMismatch, PlanInconsistent
from fp import FieldElement, has_order
from primes import FftPrime, lg

LOGGER = logging.getLogger(__name__)

T = TypeVar("T")
Row = List[int]


def is_power_of_two(n: int) -> bool:
    return n >= 1 and n & (n - 1) == 0


@dataclass(frozen=True)
class PolyModXL:
    """Element of F_p[X]/(X^L - 1) as L canonical residues."""

    coeffs: Tuple[int, ...]
    field: FftPrime

    def __post_init__(self) -> None:
        if not isinstance(self.coeffs, tuple):
            object.__setattr__(self, "coeffs", tuple(self.coeffs))
        if not is_power_of_two(len(self.coeffs)):
            raise ValueError(f"length {len(self.coeffs)} is not a power of two")

    @classmethod
    def of(cls, field: FftPrime, values: Sequence[int]) -> "PolyModXL":
        p = field.p
        return cls(tuple(v % p for v in values), field)

    @classmethod
    def zero(cls, field: FftPrime, length: int) -> "PolyModXL":
        return cls((0,) * length, field)

    @property
    def length(self) -> int:
        return len(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, index: int) -> FieldElement:
        return FieldElement(self.coeffs[index], self.field)

    def elements(self) -> List[FieldElement]:
        return [FieldElement(c, self.field) for c in self.coeffs]

    def pointwise(self, other: "PolyModXL") -> "PolyModXL":
        _same_ring(self, other)
        p = self.field.p
        op_counters.add(fp_mults=self.length)
        return PolyModXL(tuple(x * y % p for x, y in zip(self.coeffs, other.coeffs)), self.field)

    def __add__(self, other: "PolyModXL") -> "PolyModXL":
        _same_ring(self, other)
        p = self.field.p
        return PolyModXL(tuple((x + y) % p for x, y in zip(self.coeffs, other.coeffs)), self.field)

    def scale(self, factor: FieldElement) -> "PolyModXL":
        p = self.field.p
        return PolyModXL(tuple(c * factor.value % p for c in self.coeffs), self.field)


def _same_ring(f: PolyModXL, g: PolyModXL) -> None:
    if f.field != g.field:
        raise ContextMismatch(f"F_{f.field.p} and F_{g.field.p} polynomials combined")
    if f.length != g.length:
        raise ValueError(f"length mismatch: {f.length} vs {g.length}")


def _check_root(f_field: FftPrime, zeta: FieldElement, length: int) -> None:
    if zeta.field != f_field:
        raise ContextMismatch(f"root of F_{zeta.field.p} used on F_{f_field.p} data")
    if not has_order(zeta, length):
        raise OrderMismatch(f"{zeta} does not have order {length}")


# --- naive oracle ------------------------------------------------------------
def dft_naive(f: PolyModXL, zeta: FieldElement) -> PolyModXL:
    """Position i holds F(zeta**i), by direct Horner evaluation."""
    _check_root(f.field, zeta, f.length)
    p, length = f.field.p, f.length
    out = []
    point = 1
    for _ in range(length):
        acc = 0
        for c in reversed(f.coeffs):
            acc = (acc * point + c) % p
        out.append(acc)
        point = point * zeta.value % p
    op_counters.add(fp_mults=length * length)
    return PolyModXL(tuple(out), f.field)


def cyclic_convolution_naive(f: PolyModXL, g: PolyModXL) -> PolyModXL:
    """(f * g) mod (X^L - 1) by the O(L^2) double sum."""
    _same_ring(f, g)
    p, length = f.field.p, f.length
    out = [0] * length
    for i, x in enumerate(f.coeffs):
        if x == 0:
            continue
        for j, y in enumerate(g.coeffs):
            k = (i + j) % length
            out[k] = (out[k] + x * y) % p
    op_counters.add(fp_mults=length * length)
    return PolyModXL(tuple(out), f.field)


# --- radix 2 -----------------------------------------------------------------
@lru_cache(maxsize=32)
def _bit_reversal(n: int) -> Tuple[int, ...]:
    bits = n.bit_length() - 1
    return tuple(int(format(i, f"0{bits}b")[::-1], 2) for i in range(n))


def radix2_rows(rows: Sequence[Sequence[int]], root: int, p: int) -> List[Row]:
    """Iterative radix-2 DFT of every row with respect to ``root``."""
    if not rows:
        return []
    n = len(rows[0])
    if n == 1:
        return [list(r) for r in rows]
    half_powers: List[List[int]] = []
    size = 2
    while size <= n:
        w = pow(root, n // size, p)
        table = [1] * (size // 2)
        for i in range(1, size // 2):
            table[i] = table[i - 1] * w % p
        half_powers.append(table)
        size *= 2

    perm = _bit_reversal(n)
    out = []
    for row in rows:
        a = [row[i] for i in perm]
        size = 2
        for table in half_powers:
            half = size // 2
            for start in range(0, n, size):
                for j in range(half):
                    u = a[start + j]
                    v = a[start + j + half] * table[j] % p
                    a[start + j] = (u + v) % p
                    a[start + j + half] = (u - v) % p
            size *= 2
        out.append(a)
    op_counters.add(fp_mults=len(rows) * (n // 2) * lg(n))
    return out


def dft_radix2(f: PolyModXL, zeta: FieldElement) -> PolyModXL:
    _check_root(f.field, zeta, f.length)
    return PolyModXL(tuple(radix2_rows([f.coeffs], zeta.value, f.field.p)[0]), f.field)


def dft_radix2_batch(polys: Sequence[PolyModXL], zeta: FieldElement) -> List[PolyModXL]:
    """Radix-2 transform of a batch; usable as a short-transform engine."""
    if not polys:
        return []
    _check_root(polys[0].field, zeta, polys[0].length)
    rows = radix2_rows([f.coeffs for f in polys], zeta.value, zeta.field.p)
    return [PolyModXL(tuple(r), zeta.field) for r in rows]


def idft(spectrum: PolyModXL, zeta: FieldElement) -> PolyModXL:
    """Inverse transform: DFT at zeta**-1, then division by L."""
    _check_root(spectrum.field, zeta, spectrum.length)
    p, length = spectrum.field.p, spectrum.length
    values = radix2_rows([spectrum.coeffs], zeta.inv().value, p)[0]
    scale = pow(length, -1, p)
    op_counters.add(fp_mults=length)
    return PolyModXL(tuple(v * scale % p for v in values), spectrum.field)


# --- transposes --------------------------------------------------------------
def transpose(matrix: Sequence[Sequence[T]]) -> List[List[T]]:
    """Element (i, j) moves to (j, i)."""
    return [list(column) for column in zip(*matrix)]


def transpose_flat(buffer: Sequence[T], rows: int, cols: int) -> List[T]:
    """Row-major rows x cols buffer to row-major cols x rows."""
    out: List[T] = [None] * (rows * cols)  # type: ignore[list-item]
    for j in range(cols):
        out[j * rows : (j + 1) * rows] = buffer[j::cols]
    return out


# --- Cooley-Tukey ------------------------------------------------------------
@dataclass(frozen=True)
class CtPlan:
    """Factorisation L = S**d * 2**d_prime with omega = zeta**(L/S)."""

    length: int
    short_length: int
    d: int
    d_prime: int
    zeta: FieldElement
    omega: FieldElement

    @property
    def factors(self) -> List[Tuple[int, bool]]:
        """(radix, is_short_layer) per layer, short layers first."""
        return [(self.short_length, True)] * self.d + [(2, False)] * self.d_prime


def make_ct_plan(length: int, short_length: int, zeta: FieldElement) -> CtPlan:
    if not is_power_of_two(length) or not is_power_of_two(short_length):
        raise PlanInconsistent(f"L={length} and S={short_length} must be powers of two")
    if short_length > length:
        raise PlanInconsistent(f"S={short_length} exceeds L={length}")
    if short_length == 1 and length > 1:
        raise PlanInconsistent("S=1 cannot decompose L > 1")
    if not has_order(zeta, length):
        raise OrderMismatch(f"{zeta} does not have order {length}")
    lg_s = lg(short_length)
    d, d_prime = divmod(lg(length), lg_s) if lg_s else (0, 0)
    omega = zeta ** (length // short_length)
    return CtPlan(length, short_length, d, d_prime, zeta, omega)


def validate_plan(plan: CtPlan) -> None:
    lg_s = lg(plan.short_length)
    if plan.short_length ** plan.d * 2 ** plan.d_prime != plan.length:
        raise PlanInconsistent(f"L={plan.length} != S^d * 2^d' for d={plan.d}, d'={plan.d_prime}")
    if lg_s and not 0 <= plan.d_prime < lg_s:
        raise PlanInconsistent(f"d'={plan.d_prime} outside [0, lg S)")
    if plan.omega != plan.zeta ** (plan.length // plan.short_length):
        raise PlanInconsistent("omega is not zeta^(L/S)")
    if not has_order(plan.omega, plan.short_length):
        raise PlanInconsistent(f"omega does not have order {plan.short_length}")


ShortEngine = Callable[[Sequence[PolyModXL], FieldElement], List[PolyModXL]]
RowEngine = Callable[[List[Row], int], List[Row]]


def _butterflies(rows: List[Row], root: int, *, p: int) -> List[Row]:
    return [[(a + b) % p, (a - b) % p] for a, b in rows]


def _ct_rows(
    rows: List[Row],
    root: int,
    factors: List[Tuple[int, bool]],
    p: int,
    short_engine: RowEngine,
) -> List[Row]:
    """Batched four-step decomposition of every row over ``factors``."""
    n = len(rows[0])
    n1, short = factors[0]
    engine = short_engine if short else partial(_butterflies, p=p)
    kind = {"short_layers": 1} if short else {"radix2_layers": 1}
    if len(factors) == 1:
        op_counters.add(layers=1, **kind)
        return engine(rows, root)
    n2 = n // n1

    # columns of the n1 x n2 view become rows
    columns: List[Row] = []
    for row in rows:
        flat = transpose_flat(row, n1, n2)
        columns.extend(flat[j * n1 : (j + 1) * n1] for j in range(n2))

    spectra = engine(columns, pow(root, n2, p))
    op_counters.add(layers=1, **kind)

    powers = [1] * n
    for e in range(1, n):
        powers[e] = powers[e - 1] * root % p

    inner: List[Row] = []
    for b in range(len(rows)):
        block = spectra[b * n2 : (b + 1) * n2]
        flat: Row = []
        for j2, spectrum in enumerate(block):
            flat.extend(v * powers[j2 * k1] % p for k1, v in enumerate(spectrum))
        regrouped = transpose_flat(flat, n2, n1)
        inner.extend(regrouped[k1 * n2 : (k1 + 1) * n2] for k1 in range(n1))
    op_counters.add(fp_mults=len(rows) * n)

    transformed = _ct_rows(inner, pow(root, n1, p), factors[1:], p, short_engine)

    out: List[Row] = []
    for b in range(len(rows)):
        flat = [v for k1 in range(n1) for v in transformed[b * n1 + k1]]
        out.append(transpose_flat(flat, n1, n2))
    return out


def _wrap_engine(short_engine: ShortEngine, field: FftPrime) -> RowEngine:
    def run(rows: List[Row], root: int) -> List[Row]:
        polys = [PolyModXL(tuple(r), field) for r in rows]
        return [list(f.coeffs) for f in short_engine(polys, FieldElement(root, field))]

    return run


def dft_cooley_tukey_batch(
    polys: Sequence[PolyModXL],
    plan: CtPlan,
    short_engine: Optional[ShortEngine] = None,
) -> List[PolyModXL]:
    """Length-L transforms of a batch; each layer makes one engine call."""
    validate_plan(plan)
    if not polys:
        return []
    field = plan.zeta.field
    for f in polys:
        if f.field != field:
            raise ContextMismatch(f"F_{f.field.p} data with an F_{field.p} plan")
        if f.length != plan.length:
            raise PlanInconsistent(f"input length {f.length} != plan length {plan.length}")
    if plan.length == 1:
        return list(polys)
    engine = _wrap_engine(short_engine or dft_radix2_batch, field)
    rows = _ct_rows([list(f.coeffs) for f in polys], plan.zeta.value, plan.factors, field.p, engine)
    return [PolyModXL(tuple(r), field) for r in rows]


def dft_cooley_tukey(
    f: PolyModXL, plan: CtPlan, short_engine: Optional[ShortEngine] = None
) -> PolyModXL:
    return dft_cooley_tukey_batch([f], plan, short_engine)[0]
