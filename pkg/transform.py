"""Recursive transform: long DFT -> short DFTs -> convolutions -> bivariate
products -> transforms over a much smaller FFT prime.

Two profiles drive parameter selection. ``paper_faithful`` applies the
asymptotic formulas and their inequalities literally (and is therefore
infeasible at any size a machine can hold). ``test_scale`` keeps only the
conditions correctness depends on: S | L, roots of the needed orders, and a
prime p' large enough to lift product coefficients unambiguously.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Literal, Optional, Sequence, Tuple

from pydantic import BaseModel, field_validator

from bivariate import (
    ChunkParams,
    coefficient_bound,
    embed,
    lift,
    mul_bivariate_modp_batch,
    recombine,
    split,
)
from bluestein import bluestein_engine, make_chirp
from config import settings
from counters import CounterSnapshot
from counters import op_counters as _counters
from dft import (
    PolyModXL,
    dft_cooley_tukey_batch,
    dft_radix2_batch,
    is_power_of_two,
    make_ct_plan,
)
from errors import OrderMismatch, ParameterInfeasible
from fp import FieldElement, has_order, root_of_unity
from primes import FftPrime, find_p0, lg

LOGGER = logging.getLogger(__name__)

FAITHFUL_MIN_M = 1 << 17


@dataclass(frozen=True)
class AdmissibleSize:
    """m = k * r; the standard form has r = (lg k)**3."""

    k: int
    r: int
    m: int

    def __post_init__(self) -> None:
        if self.k < 1 or self.r < 1 or self.m != self.k * self.r:
            raise ValueError(f"inconsistent size k={self.k}, r={self.r}, m={self.m}")

    @classmethod
    def from_k(cls, k: int) -> "AdmissibleSize":
        if k < 2:
            raise ValueError(f"admissible sizes need k >= 2, got {k}")
        r = lg(k) ** 3
        return cls(k=k, r=r, m=k * r)

    @classmethod
    def from_chunks(cls, m: int, k: int) -> "AdmissibleSize":
        """Test-scale size: any m split into k equal chunks."""
        if k < 1 or m % k:
            raise ValueError(f"k={k} does not divide m={m}")
        return cls(k=k, r=m // k, m=m)

    @property
    def is_standard_form(self) -> bool:
        return self.k >= 2 and self.r == lg(self.k) ** 3


def admissible_from_k(k: int) -> AdmissibleSize:
    return AdmissibleSize.from_k(k)


class Profile(BaseModel):
    mode: Literal["paper_faithful", "test_scale"] = "test_scale"
    base_case_threshold: int = 0
    max_depth: int = 1
    chunk_count: int = 2
    short_length: Optional[int] = None
    inner_m: Optional[int] = None
    inner_a: Optional[int] = None

    model_config = {"frozen": True}

    @field_validator("base_case_threshold", "max_depth")
    @classmethod
    def non_negative(cls, value: int) -> int:
        if value < 0:
            raise ValueError("must be non-negative")
        return value

    @field_validator("chunk_count", "inner_m", "inner_a")
    @classmethod
    def positive(cls, value: Optional[int]) -> Optional[int]:
        if value is not None and value < 1:
            raise ValueError("must be positive")
        return value

    @field_validator("short_length")
    @classmethod
    def power_of_two(cls, value: Optional[int]) -> Optional[int]:
        if value is not None and (value < 2 or not is_power_of_two(value)):
            raise ValueError("short_length must be a power of two >= 2")
        return value

    @property
    def paper_faithful(self) -> bool:
        return self.mode == "paper_faithful"


BASE_CASE_PROFILE = Profile(max_depth=0)


@dataclass(frozen=True)
class RecursionParams:
    beta: int
    k_prime: int
    m_prime: int
    prime: FftPrime
    zeta: FieldElement
    inner_size: AdmissibleSize
    bound: int


# --- size formulas -----------------------------------------------------------
def recursion_sizes(m: int) -> Tuple[int, int, int]:
    """(beta, k', m') from beta = 2(lg m)^3, k' = ceil(beta/(lg beta - 3 lg lg beta)^3)."""
    beta = 2 * lg(m) ** 3
    denominator = lg(beta) - 3 * lg(lg(beta)) if beta > 1 else 0
    if denominator < 1:
        raise ParameterInfeasible("lg beta - 3 lg lg beta >= 1", f"m={m}, beta={beta}")
    k_prime = max(2, -(-beta // denominator ** 3))
    return beta, k_prime, k_prime * lg(k_prime) ** 3


def size_chain(m: int, max_steps: int = 8) -> List[int]:
    """m, m', m'', ... while the formulas apply and sizes keep shrinking."""
    chain = [m]
    for _ in range(max_steps):
        try:
            _, _, m_next = recursion_sizes(chain[-1])
        except ParameterInfeasible:
            break
        if m_next >= chain[-1]:
            break
        chain.append(m_next)
    return chain


def log_star(x: float) -> int:
    """Iterated base-2 logarithm: applications until the value is <= 1."""
    count = 0
    while x > 1:
        x = math.log2(x)
        count += 1
    return count


def choose_short_length(size: AdmissibleSize, length: int, profile: Profile) -> int:
    """Short length S for a level of length L.

    Test-scale values are capped at L/2 so the chirp root zeta**(L/2S)
    exists; a transform level therefore always has d >= 1 short layers and
    at least one further layer. Single-layer plans (S = L) are only built
    directly through ``dft.make_ct_plan``.
    """
    if profile.paper_faithful:
        return 1 << (lg(size.m) ** 2)
    if profile.short_length is not None:
        return max(2, min(profile.short_length, length // 2))
    short = 1 << math.ceil(2 * lg(lg(length)))
    return max(2, min(short, length // 2))


def check_faithful_preconditions(size: AdmissibleSize, prime: FftPrime, length: int) -> None:
    if not size.is_standard_form:
        raise ParameterInfeasible("m = k (lg k)^3", f"k={size.k}, r={size.r}")
    if size.m <= FAITHFUL_MIN_M:
        raise ParameterInfeasible("m > 2^17", f"m={size.m}")
    if not lg(size.m) ** 4 < lg(length) < size.m:
        raise ParameterInfeasible("(lg m)^4 < lg L < m", f"m={size.m}, L=2^{lg(length)}")
    if not prime.a < settings.hypothesis_c * size.m ** 2:
        raise ParameterInfeasible("a < C m^2", f"a={prime.a}, m={size.m}")


@lru_cache(maxsize=64)
def _least_fft_prime(m: int) -> FftPrime:
    return find_p0(m)


def derive_recursion_params(
    size: AdmissibleSize,
    profile: Profile,
    short_length: int,
    a: int,
    coefficient_limit: Optional[int] = None,
) -> RecursionParams:
    """Select p' = p0(m') and an S-th root of unity over it.

    ``coefficient_limit`` replaces the worst-case product bound when the
    caller knows a tighter one (test-scale only).
    """
    if profile.paper_faithful:
        beta, k_prime, m_prime = recursion_sizes(size.m)
        if beta > m_prime:
            raise ParameterInfeasible("beta <= m'", f"beta={beta}, m'={m_prime}")
        bound = 1 << (beta - 1)
        inner_size = AdmissibleSize.from_k(k_prime)
        prime = _least_fft_prime(m_prime)
    else:
        params = ChunkParams(k=size.k, r=size.r, a=a, m=size.m, short_length=short_length)
        bound = coefficient_limit if coefficient_limit is not None else coefficient_bound(params)
        beta = (2 * bound).bit_length()
        step = profile.chunk_count
        if profile.inner_m is not None:
            if profile.inner_m < beta:
                raise ParameterInfeasible("p' >= 2^beta + 1", f"m'={profile.inner_m} < beta={beta}")
            m_prime = profile.inner_m
        else:
            m_prime = max(beta, lg(short_length))
            m_prime = -(-m_prime // step) * step
        if m_prime % step:
            raise ParameterInfeasible("chunk_count | m'", f"m'={m_prime}, chunk_count={step}")
        k_prime = step
        inner_size = AdmissibleSize.from_chunks(m_prime, step)
        if profile.inner_a is not None:
            try:
                prime = FftPrime(m_prime, profile.inner_a)
            except ValueError as exc:
                raise ParameterInfeasible("p' = a' 2^m' + 1 prime", str(exc)) from exc
        else:
            prime = _least_fft_prime(m_prime)
    if 2 * bound >= prime.p:
        raise ParameterInfeasible("p' > 2 max|h|", f"p'={prime.p}, bound={bound}")
    zeta = root_of_unity(prime, short_length)
    return RecursionParams(beta, k_prime, m_prime, prime, zeta, inner_size, bound)


# --- transform ---------------------------------------------------------------
def _is_base_case(size: AdmissibleSize, length: int, profile: Profile, depth: int) -> bool:
    return depth >= profile.max_depth or size.m <= profile.base_case_threshold or length < 4


def transform_batch(
    size: AdmissibleSize,
    prime: FftPrime,
    length: int,
    zeta: FieldElement,
    polys: Sequence[PolyModXL],
    profile: Profile,
    depth: int = 0,
) -> List[PolyModXL]:
    """Length-L DFTs of a batch; every layer handles all short transforms at once."""
    if size.m != prime.m:
        raise ParameterInfeasible("size m matches the prime", f"m={size.m}, prime m={prime.m}")
    if zeta.field != prime or not has_order(zeta, length):
        raise OrderMismatch(f"{zeta} is not a root of order {length} in F_{prime.p}")
    if not polys:
        return []

    if _is_base_case(size, length, profile, depth):
        return dft_radix2_batch(polys, zeta)

    if profile.paper_faithful:
        check_faithful_preconditions(size, prime, length)
    short_length = choose_short_length(size, length, profile)
    if short_length > length // 2:
        raise ParameterInfeasible("S <= L/2", f"S={short_length}, L={length}")

    _counters.add(recursions=1)
    plan = make_ct_plan(length, short_length, zeta)
    eta = zeta ** (length // (2 * short_length))
    chirp = make_chirp(plan.omega, short_length, eta)
    params = ChunkParams(k=size.k, r=size.r, a=prime.a, m=size.m, short_length=short_length)
    rec = derive_recursion_params(size, profile, short_length, prime.a)
    LOGGER.debug(
        "[TRANSFORM] depth=%d L=%d S=%d d=%d d'=%d p'=%d*2^%d+1 bound=%d",
        depth, length, short_length, plan.d, plan.d_prime, rec.prime.a, rec.prime.m, rec.bound,
    )

    # explicit p' overrides describe the first level only
    inner_profile = profile.model_copy(update={"inner_m": None, "inner_a": None})

    def inner_transform(columns: Sequence[PolyModXL], root: FieldElement) -> List[PolyModXL]:
        return transform_batch(rec.inner_size, rec.prime, short_length, root, columns, inner_profile, depth + 1)

    def convolver(us: Sequence[PolyModXL], g: PolyModXL) -> List[PolyModXL]:
        inner_g = embed(split(g, params), rec.prime)
        inner_us = [embed(split(u, params), rec.prime) for u in us]
        products = mul_bivariate_modp_batch(inner_us, inner_g, params, rec.zeta, inner_transform)
        return [recombine(lift(h, rec.bound), params, prime) for h in products]

    return dft_cooley_tukey_batch(polys, plan, bluestein_engine(chirp, convolver))


def transform(
    size: AdmissibleSize,
    prime: FftPrime,
    length: int,
    zeta: FieldElement,
    f: PolyModXL,
    profile: Profile,
) -> PolyModXL:
    return transform_batch(size, prime, length, zeta, [f], profile)[0]


def inverse_transform_batch(
    size: AdmissibleSize,
    prime: FftPrime,
    length: int,
    zeta: FieldElement,
    spectra: Sequence[PolyModXL],
    profile: Profile,
) -> List[PolyModXL]:
    """Transform at zeta**-1 followed by division by L."""
    values = transform_batch(size, prime, length, zeta.inv(), spectra, profile)
    scale = FieldElement.of(prime, pow(length, -1, prime.p))
    _counters.add(fp_mults=length * len(values))
    return [f.scale(scale) for f in values]


def op_counters(reset: bool = False) -> CounterSnapshot:
    """Current operation counts; ``reset`` zeroes them before returning."""
    if reset:
        _counters.reset()
    return _counters.snapshot()
