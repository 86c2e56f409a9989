"""Integer multiplication through a polynomial product over an FFT prime.

u and v are cut into d chunks of b bits, read as polynomials U, V with
U(2**b) = u, and multiplied in F_p[X]/(X^L - 1). With L >= 2d nothing wraps,
and 2b + lg d < m keeps every coefficient of W = U*V below p, so W(2**b) is
the exact product.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Optional, Sequence

from bigint import ZERO, Natural, bitslice, mul_karatsuba, mul_oracle
from config import settings
from dft import PolyModXL, dft_radix2_batch, idft
from errors import ParameterInfeasible
from fp import FieldElement, root_of_unity
from primes import FftPrime, find_p0, lg
from transform import (
    FAITHFUL_MIN_M,
    AdmissibleSize,
    Profile,
    inverse_transform_batch,
    transform_batch,
)

LOGGER = logging.getLogger(__name__)

ENGINES = ("oracle", "karatsuba", "fft", "fft-recursive")

# practical sizing keeps m clear of 2 lg n by this many bits
PRACTICAL_MARGIN = 64


@dataclass(frozen=True)
class MulPlan:
    """Sizes for one product of two integers below 2**n.

    ``d_chunks`` is the number of b-bit pieces per operand, ``ell`` = lg L.
    """

    n: int
    k: int
    m: int
    b: int
    d_chunks: int
    ell: int
    length: int
    prime: FftPrime
    zeta: FieldElement
    size: AdmissibleSize

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "m": self.m,
            "b": self.b,
            "d_chunks": self.d_chunks,
            "L": self.length,
            "p": self.prime.to_dict(),
        }


def _check_plan(plan: MulPlan) -> None:
    if plan.d_chunks > plan.length // 2:
        raise ParameterInfeasible("d <= L/2", f"d={plan.d_chunks}, L={plan.length}")
    if not 2 * plan.b + lg(plan.d_chunks) < plan.m:
        raise ParameterInfeasible(
            "2b + lg d < m", f"b={plan.b}, d={plan.d_chunks}, m={plan.m}"
        )
    if plan.ell > plan.prime.m:
        raise ParameterInfeasible("L | 2^m", f"L=2^{plan.ell}, m={plan.prime.m}")


def _faithful_k(n: int) -> int:
    lg_n = lg(n)
    lg_lg_n = lg(lg_n) if lg_n > 1 else 0
    if lg_lg_n == 0:
        raise ParameterInfeasible("lg lg n >= 1", f"n={n}")
    return -(-5 * lg_n // (2 * lg_lg_n ** 3))


def _practical_k(n: int) -> int:
    """Smallest k >= 2 with k (lg k)^3 > 2 lg n + margin."""
    target = 2 * lg(n) + PRACTICAL_MARGIN
    k = 2
    while k * lg(k) ** 3 <= target:
        k += 1
    return k


def _assemble(n: int, k: int, size: AdmissibleSize, prime: FftPrime, b: int) -> MulPlan:
    if b < 1:
        raise ParameterInfeasible("b >= 1", f"m={size.m}")
    d_chunks = -(-n // b)
    ell = max(lg(-(-10 * n // size.m)), lg(2 * d_chunks))
    length = 1 << ell
    if ell > prime.m:
        raise ParameterInfeasible("L | 2^m", f"L=2^{ell}, m={prime.m}")
    plan = MulPlan(
        n=n,
        k=k,
        m=size.m,
        b=b,
        d_chunks=d_chunks,
        ell=ell,
        length=length,
        prime=prime,
        zeta=root_of_unity(prime, length),
        size=size,
    )
    _check_plan(plan)
    return plan


@lru_cache(maxsize=128)
def make_plan(n: int, profile: Optional[Profile] = None) -> MulPlan:
    """Parameters for operands below 2**n.

    The ``paper_faithful`` profile uses k = ceil((5/2) lg n / (lg lg n)^3) and
    its interval conditions on m; otherwise m is the least admissible size
    above 2 lg n + 64.
    """
    if n < 2:
        raise ValueError(f"bit bound must be at least 2, got {n}")
    profile = profile or Profile()
    if profile.paper_faithful:
        k = _faithful_k(n)
        if k < 2:
            raise ParameterInfeasible("m = k (lg k)^3 > 0", f"n={n} gives k={k}")
        size = AdmissibleSize.from_k(k)
        if size.m <= FAITHFUL_MIN_M:
            raise ParameterInfeasible("m > 2^17", f"n={n}, m={size.m}")
        if not 2 * lg(n) < size.m < 3 * lg(n):
            raise ParameterInfeasible("2 lg n < m < 3 lg n", f"n={n}, m={size.m}")
    else:
        k = _practical_k(n)
        size = AdmissibleSize.from_k(k)
    prime = find_p0(size.m)
    plan = _assemble(n, k, size, prime, size.m // 4)
    LOGGER.debug("[MUL] plan %s", plan.to_dict())
    return plan


def plan_for_prime(n: int, prime: FftPrime, k: int, b: Optional[int] = None) -> MulPlan:
    """Plan over a caller-chosen prime with m split into k chunks.

    Small primes push products of small operands through a transform of
    several chunks, which the default sizing would not do.
    """
    if n < 1:
        raise ValueError(f"bit bound must be positive, got {n}")
    size = AdmissibleSize.from_chunks(prime.m, k)
    return _assemble(n, k, size, prime, prime.m // 4 if b is None else b)


def recover_product(coeffs: Sequence[Natural], b: int) -> Natural:
    """W(2**b) from the coefficients of W, carries included."""
    return Natural.overlap_add(coeffs, b)


def _chunks(x: Natural, plan: MulPlan) -> PolyModXL:
    values = [int(bitslice(x, i * plan.b, plan.b)) for i in range(plan.d_chunks)]
    values.extend([0] * (plan.length - plan.d_chunks))
    return PolyModXL(tuple(values), plan.prime)


def _product_coeffs(
    u: Natural, v: Natural, plan: MulPlan, recursive: bool, profile: Profile
) -> List[int]:
    polys = [_chunks(u, plan), _chunks(v, plan)]
    if recursive:
        u_hat, v_hat = transform_batch(plan.size, plan.prime, plan.length, plan.zeta, polys, profile)
        w_hat = u_hat.pointwise(v_hat)
        (w,) = inverse_transform_batch(plan.size, plan.prime, plan.length, plan.zeta, [w_hat], profile)
    else:
        u_hat, v_hat = dft_radix2_batch(polys, plan.zeta)
        w = idft(u_hat.pointwise(v_hat), plan.zeta)
    # every coefficient is a true non-negative value below p
    return list(w.coeffs[: 2 * plan.d_chunks - 1])


def multiply(
    u: Natural,
    v: Natural,
    engine: str = "fft",
    profile: Optional[Profile] = None,
    plan: Optional[MulPlan] = None,
    force: bool = False,
) -> Natural:
    """u * v with the chosen engine.

    The transform engines hand operands below ``settings.mul_bypass_bits``
    to Karatsuba unless ``force`` is set or an explicit plan is supplied.
    """
    if engine not in ENGINES:
        raise ValueError(f"unknown engine {engine!r}; expected one of {', '.join(ENGINES)}")
    if engine == "oracle":
        return mul_oracle(u, v)
    if engine == "karatsuba":
        return mul_karatsuba(u, v)
    if not u or not v:
        return ZERO

    n = max(u.bit_length(), v.bit_length(), 2)
    if plan is None:
        if not force and n < settings.mul_bypass_bits:
            return mul_karatsuba(u, v)
        plan = make_plan(n, profile)
    elif plan.n < n:
        raise ParameterInfeasible("u, v < 2^n", f"operands have {n} bits, plan covers {plan.n}")

    coeffs = _product_coeffs(u, v, plan, engine == "fft-recursive", profile or Profile())
    return recover_product([Natural.from_int(c) for c in coeffs], plan.b)
