"""Length-S DFTs as cyclic convolutions through the chirp substitution."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, List, Sequence, Tuple

from counters import op_counters
from dft import PolyModXL, ShortEngine, cyclic_convolution_naive, is_power_of_two
from errors import ChirpMismatch
from fp import FieldElement, has_order

LOGGER = logging.getLogger(__name__)

Convolver = Callable[[PolyModXL, PolyModXL], PolyModXL]
BatchConvolver = Callable[[Sequence[PolyModXL], PolyModXL], List[PolyModXL]]


@dataclass(frozen=True)
class ChirpPair:
    """eta with eta**2 == omega, weights eta**(i*i) and chirp eta**-(i*i)."""

    eta: FieldElement
    omega: FieldElement
    f_weights: Tuple[int, ...]
    g_chirp: PolyModXL

    @property
    def short_length(self) -> int:
        return len(self.f_weights)


def chirp_exponent(i: int, short_length: int) -> int:
    return i * i % (2 * short_length)


def make_chirp(omega: FieldElement, short_length: int, eta: FieldElement) -> ChirpPair:
    if not is_power_of_two(short_length):
        raise ChirpMismatch(f"chirp length {short_length} is not a power of two")
    if eta * eta != omega:
        raise ChirpMismatch(f"eta^2 = {(eta * eta).value} differs from omega = {omega.value}")
    if not has_order(omega, short_length):
        raise ChirpMismatch(f"omega = {omega.value} does not have order {short_length}")
    p = eta.field.p
    eta_inv = eta.inv().value
    exponents = [chirp_exponent(i, short_length) for i in range(short_length)]
    weights = tuple(pow(eta.value, e, p) for e in exponents)
    chirp = tuple(pow(eta_inv, e, p) for e in exponents)
    return ChirpPair(eta, omega, weights, PolyModXL(chirp, eta.field))


def _weight(values: Sequence[int], weights: Sequence[int], p: int) -> Tuple[int, ...]:
    return tuple(v * w % p for v, w in zip(values, weights))


def short_dft_via_convolution_batch(
    polys: Sequence[PolyModXL], chirp: ChirpPair, convolver: BatchConvolver
) -> List[PolyModXL]:
    """Weight, convolve with the chirp, weight again; one convolver call for the batch."""
    if not polys:
        return []
    field = chirp.eta.field
    for a_t in polys:
        if a_t.field != field or a_t.length != chirp.short_length:
            raise ChirpMismatch(
                f"input of length {a_t.length} over F_{a_t.field.p} does not match "
                f"chirp of length {chirp.short_length} over F_{field.p}"
            )
    p = field.p
    weighted = [PolyModXL(_weight(a_t.coeffs, chirp.f_weights, p), field) for a_t in polys]
    convolved = convolver(weighted, chirp.g_chirp)
    op_counters.add(
        fp_mults=2 * chirp.short_length * len(polys), short_transforms=len(polys)
    )
    return [PolyModXL(_weight(h.coeffs, chirp.f_weights, p), field) for h in convolved]


def short_dft_via_convolution(
    a_t: PolyModXL, chirp: ChirpPair, convolver: Convolver = cyclic_convolution_naive
) -> PolyModXL:
    return short_dft_via_convolution_batch(
        [a_t], chirp, lambda us, g: [convolver(u, g) for u in us]
    )[0]


def naive_batch_convolver(us: Sequence[PolyModXL], g: PolyModXL) -> List[PolyModXL]:
    return [cyclic_convolution_naive(u, g) for u in us]


def bluestein_engine(chirp: ChirpPair, convolver: BatchConvolver) -> ShortEngine:
    """Short-transform engine for Cooley-Tukey layers backed by ``convolver``."""

    def engine(polys: Sequence[PolyModXL], omega: FieldElement) -> List[PolyModXL]:
        if omega != chirp.omega:
            raise ChirpMismatch(f"layer root {omega.value} is not the chirp's omega {chirp.omega.value}")
        return short_dft_via_convolution_batch(polys, chirp, convolver)

    return engine
