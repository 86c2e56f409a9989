"""Primality testing, FFT-prime search and least primes in arithmetic progressions."""
from __future__ import annotations

import logging
import math
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, Iterable, List, Optional, Tuple

import numpy as np

from config import settings
from errors import InvalidResidue, NotFound

LOGGER = logging.getLogger(__name__)

# Bases 2..41 decide every n below this bound.
DETERMINISTIC_LIMIT = 3317044064679887385961981
DETERMINISTIC_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def lg(x: int) -> int:
    """Ceiling base-2 logarithm; lg 1 = 0."""
    if x < 1:
        raise ValueError(f"lg needs a positive argument, got {x}")
    return (x - 1).bit_length()


# --- sieve -----------------------------------------------------------------
def sieve_primes(limit: int) -> np.ndarray:
    """All primes p <= limit as an int64 array."""
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    flags[4::2] = False
    for i in range(3, math.isqrt(limit) + 1, 2):
        if flags[i]:
            flags[i * i :: 2 * i] = False
    return np.nonzero(flags)[0].astype(np.int64)


@lru_cache(maxsize=8)
def _small_primes(bound: int) -> Tuple[Tuple[int, ...], int]:
    primes = tuple(int(p) for p in sieve_primes(bound - 1))
    return primes, math.prod(primes)


class PrimeTable:
    """Growable sieve backing the least-prime tables of ``p_of_q``."""

    def __init__(self, limit: int = 1 << 16) -> None:
        self.limit = 0
        self.primes = np.zeros(0, dtype=np.int64)
        self.ensure(limit)

    def ensure(self, limit: int) -> None:
        if limit <= self.limit:
            return
        new_limit = max(limit, 2 * self.limit)
        self.primes = sieve_primes(new_limit)
        self.limit = new_limit
        LOGGER.debug("[SCAN] Sieve extended to %d (%d primes)", new_limit, len(self.primes))

    def upto(self, limit: int) -> np.ndarray:
        self.ensure(limit)
        return self.primes[: np.searchsorted(self.primes, limit, side="right")]

    def least_primes_mod(self, q: int) -> Dict[int, int]:
        """Least prime in every residue class coprime to q, keyed by residue."""
        phi = totient(q)
        limit = max(64, 2 * q * max(1, lg(q)) ** 2)
        while True:
            candidates = self.upto(limit)
            residues, first = np.unique(candidates % q, return_index=True)
            found = {
                int(r): int(candidates[i])
                for r, i in zip(residues, first)
                if math.gcd(int(r), q) == 1
            }
            if len(found) == phi:
                return found
            limit *= 2


# --- Miller-Rabin ----------------------------------------------------------
def _decompose(n: int) -> Tuple[int, int]:
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    return d, s


def _is_witness(n: int, base: int, d: int, s: int) -> bool:
    """True when ``base`` proves n composite."""
    x = pow(base, d, n)
    if x == 1 or x == n - 1:
        return False
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return False
    return True


def _bases(n: int, rounds: int, seed: int) -> Iterable[int]:
    if n < DETERMINISTIC_LIMIT:
        return [b for b in DETERMINISTIC_BASES if b < n - 1]
    rng = random.Random(seed * 1_000_003 + n)
    return [rng.randrange(2, n - 1) for _ in range(rounds)]


def find_composite_witness(n: int, seed: Optional[int] = None) -> Optional[int]:
    """Small factor or Miller-Rabin witness proving n composite; None if n is prime."""
    if n < 2:
        raise ValueError(f"witness search needs n >= 2, got {n}")
    primes, primorial = _small_primes(settings.trial_division_bound)
    if math.gcd(n, primorial) != 1:
        for p in primes:
            if n % p == 0:
                return None if p == n else p
    if n < settings.trial_division_bound ** 2:
        return None
    d, s = _decompose(n)
    rounds = settings.primality_rounds
    for base in _bases(n, rounds, settings.seed if seed is None else seed):
        if _is_witness(n, base, d, s):
            return base
    return None


def is_prime(n: int, seed: Optional[int] = None) -> bool:
    """Trial-division prefilter, then Miller-Rabin.

    Deterministic below 3.3e24; beyond that ``settings.primality_rounds``
    random bases drawn from a generator seeded by (seed, n).
    """
    if n < 2:
        return False
    return find_composite_witness(n, seed) is None


# --- FFT primes ------------------------------------------------------------
@dataclass(frozen=True)
class FftPrime:
    """Prime p = a*2**m + 1; primality is re-tested with an independent seed."""

    m: int
    a: int
    p: int = field(init=False)

    def __post_init__(self) -> None:
        if self.m < 1 or self.a < 1:
            raise ValueError(f"FftPrime needs m, a >= 1 (m={self.m}, a={self.a})")
        p = self.a * (1 << self.m) + 1
        if not is_prime(p, seed=settings.seed + 1):
            raise ValueError(f"{self.a}*2^{self.m}+1 is not prime")
        object.__setattr__(self, "p", p)

    def supports_order(self, length: int) -> bool:
        return length >= 1 and length & (length - 1) == 0 and lg(length) <= self.m

    def to_dict(self) -> dict:
        return {"m": self.m, "a": self.a, "p": self.p}


def default_a_max(m: int, c: Optional[Fraction] = None) -> int:
    """Largest a with a < C*m**2 (at least 1)."""
    bound = (c if c is not None else settings.hypothesis_c) * m * m
    return max(1, math.ceil(bound) - 1)


def _scan_block(m: int, lo: int, hi: int) -> List[int]:
    shift = 1 << m
    return [a for a in range(lo, hi) if is_prime(a * shift + 1)]


def _scan(m: int, a_max: int, stop_at_first: bool, workers: int) -> List[int]:
    block = settings.search_block
    starts = list(range(1, a_max + 1, block))
    if workers <= 1 or len(starts) == 1:
        hits: List[int] = []
        for lo in starts:
            hits.extend(_scan_block(m, lo, min(lo + block, a_max + 1)))
            if stop_at_first and hits:
                return hits[:1]
        return hits

    hits = []
    window = 2 * workers
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for offset in range(0, len(starts), window):
            batch = starts[offset : offset + window]
            futures = [
                pool.submit(_scan_block, m, lo, min(lo + block, a_max + 1)) for lo in batch
            ]
            # blocks are joined in ascending order so the least a always wins
            for future in futures:
                hits.extend(future.result())
                if stop_at_first and hits:
                    for pending in futures:
                        pending.cancel()
                    return hits[:1]
    return hits


def find_p0(m: int, a_max: Optional[int] = None, workers: Optional[int] = None) -> FftPrime:
    """Least a in [1, a_max] with a*2**m + 1 prime."""
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    limit = a_max if a_max is not None else default_a_max(m)
    if limit < 1:
        raise ValueError(f"a_max must be >= 1, got {limit}")
    hits = _scan(m, limit, True, workers or settings.search_workers)
    if not hits:
        LOGGER.warning("[SEARCH] No FFT prime a*2^%d+1 with a <= %d", m, limit)
        raise NotFound(f"no prime a*2^{m}+1 with a <= {limit}")
    LOGGER.debug("[SEARCH] p0(%d) has a=%d", m, hits[0])
    return FftPrime(m, hits[0])


def find_p0_unbounded(m: int, timeout: Optional[float] = None) -> FftPrime:
    """Least a with a*2**m + 1 prime and no bound on a.

    Exploratory search: blocks of a are scanned in order until a prime turns
    up or ``timeout`` seconds (``settings.search_timeout``) have passed.
    """
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    budget = settings.search_timeout if timeout is None else timeout
    if budget <= 0:
        raise ValueError(f"timeout must be positive, got {budget}")
    block = settings.search_block
    deadline = time.monotonic() + budget
    lo = 1
    while True:
        hits = _scan_block(m, lo, lo + block)
        if hits:
            LOGGER.debug("[SEARCH] p0(%d) has a=%d (unbounded)", m, hits[0])
            return FftPrime(m, hits[0])
        lo += block
        if time.monotonic() >= deadline:
            break
    LOGGER.warning("[SEARCH] Gave up on a*2^%d+1 after %.1fs with a < %d", m, budget, lo)
    raise NotFound(f"no prime a*2^{m}+1 with a < {lo} found within {budget:g}s")


def find_all_a(m: int, a_max: int, workers: Optional[int] = None) -> List[int]:
    """Every a <= a_max with a*2**m + 1 prime, ascending."""
    if m < 1 or a_max < 1:
        raise ValueError("find_all_a needs m >= 1 and a_max >= 1")
    hits = _scan(m, a_max, False, workers or settings.search_workers)
    LOGGER.info("[SEARCH] %d primes a*2^%d+1 with a <= %d", len(hits), m, a_max)
    return hits


def minimality_evidence(prime: FftPrime, seed: Optional[int] = None) -> Dict[int, int]:
    """Composite witness for every a' < prime.a; proves find_p0 minimality."""
    evidence = {}
    for a in range(1, prime.a):
        witness = find_composite_witness(a * (1 << prime.m) + 1, seed)
        if witness is None:
            raise ValueError(f"a={a} yields a prime below a={prime.a}")
        evidence[a] = witness
    return evidence


# --- Hypothesis P ------------------------------------------------------------
def totient(q: int) -> int:
    """Euler phi by counting residues coprime to q."""
    if q < 1:
        raise ValueError(f"totient needs q >= 1, got {q}")
    return int(np.count_nonzero(np.gcd(np.arange(1, q + 1), q) == 1))


def least_prime_in_ap(r: int, q: int) -> int:
    """Least prime n with n = r (mod q), by ascending scan."""
    if q < 1 or not 0 < r <= q:
        raise ValueError(f"residue must satisfy 0 < r <= q (r={r}, q={q})")
    if math.gcd(r, q) != 1:
        raise InvalidResidue(f"gcd({r}, {q}) != 1")
    n = r
    while not is_prime(n):
        n += q
    return n


@dataclass(frozen=True)
class ApRecord:
    q: int
    r: int
    least_prime: int
    phi_q: int
    ratio: Fraction

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "r": self.r,
            "P_q": self.least_prime,
            "phi_q": self.phi_q,
            "ratio_num": self.ratio.numerator,
            "ratio_den": self.ratio.denominator,
        }


def ratio_for(q: int, least_prime: int) -> Fraction:
    return Fraction(least_prime, q * lg(q) ** 2)


def p_of_q(q: int, table: Optional[PrimeTable] = None) -> ApRecord:
    """P(q) = max over coprime residues of the least prime in the class."""
    if q < 2:
        raise ValueError(f"q must be >= 2, got {q}")
    least = (table or PrimeTable()).least_primes_mod(q)
    residue, prime = max(least.items(), key=lambda item: item[1])
    return ApRecord(q=q, r=residue, least_prime=prime, phi_q=len(least), ratio=ratio_for(q, prime))


@dataclass
class ScanSummary:
    records: List[ApRecord]
    c: Fraction
    argmax_q: int = 0
    max_ratio: Fraction = Fraction(0)
    violations: List[int] = field(default_factory=list)

    @property
    def argmax_is_q2(self) -> bool:
        return self.argmax_q == 2

    def summary_line(self) -> str:
        return (
            f"max ratio {self.max_ratio} at q={self.argmax_q} "
            f"(q=2: {'yes' if self.argmax_is_q2 else 'no'}; "
            f"violations of C={self.c}: {len(self.violations)})"
        )


def ap_scan(
    q_values: Iterable[int],
    c: Optional[Fraction] = None,
    table: Optional[PrimeTable] = None,
    on_record: Optional[Callable[[ApRecord], None]] = None,
) -> ScanSummary:
    """Compute P(q) for every q; ratios above C are logged and recorded, never raised."""
    bound = c if c is not None else settings.hypothesis_c
    table = table or PrimeTable()
    summary = ScanSummary(records=[], c=bound)
    for q in q_values:
        record = p_of_q(q, table)
        summary.records.append(record)
        if on_record is not None:
            on_record(record)
        if record.ratio > summary.max_ratio:
            summary.max_ratio = record.ratio
            summary.argmax_q = q
        if record.ratio > bound:
            summary.violations.append(q)
            LOGGER.warning("[SCAN] P(%d)=%d gives ratio %s above C=%s", q, record.least_prime, record.ratio, bound)
    LOGGER.info("[SCAN] %d moduli scanned; %s", len(summary.records), summary.summary_line())
    return summary
