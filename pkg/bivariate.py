"""Products in F_p[X]/(X^S - 1) through Z[X,Y]/(X^S - 1, Y^k + a).

A coefficient c of F_p is cut into k chunks of r bits, most significant
first, so that c = sum_j c_j * 2**((k-1-j)*r). Sending Y to 2**-r maps the
bivariate ring onto F_p up to a factor 2**((k-1)*r), because 2**-m = -a
(mod p). Products are taken modulo a much smaller FFT prime p' whose size
covers the coefficient bound, lifted back to signed integers and folded
into F_p by an overlap-add.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple

from bigint import Natural, SignedInt, bitslice
from counters import op_counters
from dft import PolyModXL, dft_radix2_batch
from errors import ContextMismatch, LiftAmbiguity
from fp import FieldElement, balanced_int
from primes import FftPrime

LOGGER = logging.getLogger(__name__)

Matrix = Tuple[Tuple[int, ...], ...]
ColumnTransform = Callable[[Sequence[PolyModXL], FieldElement], List[PolyModXL]]

KARATSUBA_POLY_CUTOFF = 8


@dataclass(frozen=True)
class ChunkParams:
    k: int
    r: int
    a: int
    m: int
    short_length: int

    def __post_init__(self) -> None:
        if self.k < 1 or self.r < 1:
            raise ValueError(f"chunk count and size must be positive (k={self.k}, r={self.r})")
        if self.m != self.k * self.r:
            raise ValueError(f"m={self.m} is not k*r={self.k * self.r}")

    @classmethod
    def for_prime(cls, prime: FftPrime, k: int, short_length: int) -> "ChunkParams":
        if prime.m % k:
            raise ValueError(f"k={k} does not divide m={prime.m}")
        return cls(k=k, r=prime.m // k, a=prime.a, m=prime.m, short_length=short_length)

    def matches(self, prime: FftPrime) -> bool:
        return prime.m == self.m and prime.a == self.a


def coefficient_bound(params: ChunkParams) -> int:
    """Bound on |h| for entries of a product of two split polynomials."""
    return (1 << (2 * params.r)) * params.short_length * params.k * params.a ** 3


@dataclass(frozen=True)
class BivariatePoly:
    """S x k coefficient matrix; row i, column j is the coefficient of X^i Y^j.

    ``modulus`` is None for integer entries and the prime p' once embedded.
    """

    coeffs: Matrix
    modulus: Optional[FftPrime] = None

    @property
    def short_length(self) -> int:
        return len(self.coeffs)

    @property
    def k(self) -> int:
        return len(self.coeffs[0]) if self.coeffs else 0

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], modulus: Optional[FftPrime] = None) -> "BivariatePoly":
        return cls(tuple(tuple(row) for row in rows), modulus)

    @classmethod
    def zero(cls, params: ChunkParams, modulus: Optional[FftPrime] = None) -> "BivariatePoly":
        return cls(((0,) * params.k,) * params.short_length, modulus)

    @classmethod
    def unit(cls, params: ChunkParams, modulus: Optional[FftPrime] = None) -> "BivariatePoly":
        rows = [[0] * params.k for _ in range(params.short_length)]
        rows[0][0] = 1
        return cls.from_rows(rows, modulus)

    def column(self, j: int) -> Tuple[int, ...]:
        return tuple(row[j] for row in self.coeffs)

    def max_abs(self) -> int:
        return max((abs(v) for row in self.coeffs for v in row), default=0)


# --- splitting ---------------------------------------------------------------
def split_coefficient(value: int, params: ChunkParams) -> Tuple[int, ...]:
    """Chunks of one residue, most significant first; chunk 0 keeps the excess."""
    k, r = params.k, params.r
    x = Natural.from_int(value)
    top = x >> ((k - 1) * r)
    return (int(top),) + tuple(int(bitslice(x, (k - 1 - j) * r, r)) for j in range(1, k))


def split(f: PolyModXL, params: ChunkParams) -> BivariatePoly:
    if not params.matches(f.field):
        raise ContextMismatch(f"chunk parameters do not describe F_{f.field.p}")
    if f.length != params.short_length:
        raise ValueError(f"polynomial length {f.length} != S={params.short_length}")
    return BivariatePoly(tuple(split_coefficient(c, params) for c in f.coeffs))


# --- integer oracle ----------------------------------------------------------
def mul_bivariate_integer(
    f: BivariatePoly, g: BivariatePoly, params: ChunkParams
) -> BivariatePoly:
    """Exact product in Z[X,Y]/(X^S - 1, Y^k + a) by double convolution."""
    s, k, a = params.short_length, params.k, params.a
    out = [[0] * k for _ in range(s)]
    for i1, f_row in enumerate(f.coeffs):
        for i2, g_row in enumerate(g.coeffs):
            target = out[(i1 + i2) % s]
            for j1, x in enumerate(f_row):
                if x == 0:
                    continue
                for j2, y in enumerate(g_row):
                    j = j1 + j2
                    if j < k:
                        target[j] += x * y
                    else:
                        target[j - k] -= a * x * y
    return BivariatePoly.from_rows(out)


# --- Y-ring products ---------------------------------------------------------
def _poly_schoolbook(x: Sequence[int], y: Sequence[int]) -> List[int]:
    out = [0] * (len(x) + len(y) - 1)
    for i, xi in enumerate(x):
        if xi == 0:
            continue
        for j, yj in enumerate(y):
            out[i + j] += xi * yj
    return out


def poly_karatsuba(x: Sequence[int], y: Sequence[int]) -> List[int]:
    """Integer polynomial product of two equal-length coefficient lists."""
    n = len(x)
    if n <= KARATSUBA_POLY_CUTOFF:
        return _poly_schoolbook(x, y)
    half = n // 2
    x0, x1 = x[:half], x[half:]
    y0, y1 = y[:half], y[half:]
    z0 = poly_karatsuba(x0, y0)
    z2 = poly_karatsuba(list(x1), list(y1))
    # pad low halves so the sums line up with the (possibly longer) high halves
    xs = [u + v for u, v in zip(list(x0) + [0] * (len(x1) - half), x1)]
    ys = [u + v for u, v in zip(list(y0) + [0] * (len(y1) - half), y1)]
    z1 = poly_karatsuba(xs, ys)

    out = [0] * (2 * n - 1)
    for i, v in enumerate(z0):
        out[i] += v
        z1[i] -= v
    for i, v in enumerate(z2):
        out[i + 2 * half] += v
        z1[i] -= v
    for i, v in enumerate(z1):
        out[i + half] += v
    return out


def pointwise_y_product(x: Sequence[int], y: Sequence[int], a: int, p: int) -> List[int]:
    """x*y in F_p'[Y]/(Y^k + a): Karatsuba, then Y^k -> -a."""
    k = len(x)
    full = poly_karatsuba(x, y)
    out = [v % p for v in full[:k]]
    for j in range(k, len(full)):
        out[j - k] = (out[j - k] - a * full[j]) % p
    return out


# --- embedding / lifting -----------------------------------------------------
def embed(poly: BivariatePoly, prime: FftPrime) -> BivariatePoly:
    p = prime.p
    return BivariatePoly(tuple(tuple(v % p for v in row) for row in poly.coeffs), prime)


def lift(poly: BivariatePoly, bound: int) -> BivariatePoly:
    """Balanced representatives; needs p' > 2 * bound to be unambiguous."""
    if poly.modulus is None:
        raise ValueError("lift needs an embedded polynomial")
    p = poly.modulus.p
    if 2 * bound >= p:
        raise LiftAmbiguity(f"p'={p} cannot hold coefficients bounded by {bound}")
    return BivariatePoly(tuple(tuple(balanced_int(v, p) for v in row) for row in poly.coeffs))


# --- modular product ---------------------------------------------------------
def _forward_columns(
    polys: Sequence[BivariatePoly], zeta: FieldElement, column_transform: ColumnTransform
) -> List[List[List[int]]]:
    """Per polynomial: the X-spectrum as S rows of k residues."""
    prime = zeta.field
    columns = [PolyModXL(poly.column(j), prime) for poly in polys for j in range(poly.k)]
    spectra = column_transform(columns, zeta)
    out = []
    for n, poly in enumerate(polys):
        block = spectra[n * poly.k : (n + 1) * poly.k]
        out.append([[block[j].coeffs[i] for j in range(poly.k)] for i in range(poly.short_length)])
    return out


def mul_bivariate_modp_batch(
    us: Sequence[BivariatePoly],
    v: BivariatePoly,
    params: ChunkParams,
    zeta: FieldElement,
    column_transform: ColumnTransform = dft_radix2_batch,
) -> List[BivariatePoly]:
    """u_t * v over p' for every t: X-transforms of all inputs in one batch."""
    if not us:
        return []
    prime = zeta.field
    for poly in list(us) + [v]:
        if poly.modulus != prime:
            raise ContextMismatch("bivariate operands must be embedded in the root's field")
    p, s, k = prime.p, params.short_length, params.k

    spectra = _forward_columns(list(us) + [v], zeta, column_transform)
    v_hat = spectra[-1]
    products: List[PolyModXL] = []
    for u_hat in spectra[:-1]:
        rows = [pointwise_y_product(u_hat[i], v_hat[i], params.a, p) for i in range(s)]
        products.extend(PolyModXL(tuple(rows[i][j] for i in range(s)), prime) for j in range(k))
    op_counters.add(fp_mults=len(us) * s * k * k)

    inverse = column_transform(products, zeta.inv())
    scale = pow(s, -1, p)
    out = []
    for n in range(len(us)):
        block = inverse[n * k : (n + 1) * k]
        out.append(
            BivariatePoly(
                tuple(tuple(block[j].coeffs[i] * scale % p for j in range(k)) for i in range(s)),
                prime,
            )
        )
    op_counters.add(fp_mults=len(us) * s * k)
    return out


def mul_bivariate_modp(
    u: BivariatePoly,
    v: BivariatePoly,
    params: ChunkParams,
    zeta: FieldElement,
    column_transform: ColumnTransform = dft_radix2_batch,
) -> BivariatePoly:
    return mul_bivariate_modp_batch([u], v, params, zeta, column_transform)[0]


# --- recombination -----------------------------------------------------------
def recombine_row(row: Sequence[int], params: ChunkParams, modulus: Natural) -> int:
    """sum_j h_j * 2**((2k-2-j)*r) mod p by signed overlap-add."""
    k, r = params.k, params.r
    # chunk index i carries weight 2**((k-1+i)*r), i.e. h_{k-1-i}
    ordered = [row[k - 1 - i] for i in range(k)]
    positive = Natural.overlap_add([Natural.from_int(max(h, 0)) for h in ordered], r)
    negative = Natural.overlap_add([Natural.from_int(max(-h, 0)) for h in ordered], r)
    total = SignedInt.from_natural(positive) - SignedInt.from_natural(negative)
    return int((total << ((k - 1) * r)).mod(modulus))


def recombine(h: BivariatePoly, params: ChunkParams, target: FftPrime) -> PolyModXL:
    if not params.matches(target):
        raise ContextMismatch(f"chunk parameters do not describe F_{target.p}")
    modulus = Natural.from_int(target.p)
    return PolyModXL(tuple(recombine_row(row, params, modulus) for row in h.coeffs), target)
