"""Invariant suites runnable outside pytest (``cli.py selftest``).

Reports are deterministic for a given level and seed: no timings, fixed
suite order, seeded inputs.
"""
from __future__ import annotations

import itertools
import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional

from bigint import Natural, divmod_natural, format_hex, mul_karatsuba, mul_oracle, parse_hex
from bivariate import ChunkParams, coefficient_bound, mul_bivariate_integer, recombine, split
from bluestein import make_chirp, short_dft_via_convolution
from dft import PolyModXL, cyclic_convolution_naive, dft_naive, dft_radix2, idft
from errors import FftMulError, InvariantFailure
from fp import FieldElement, has_order, root_of_unity
from intmul import multiply, plan_for_prime, recover_product
from primes import FftPrime, ap_scan, find_all_a, find_p0, is_prime
from transform import BASE_CASE_PROFILE, AdmissibleSize, Profile, transform

LOGGER = logging.getLogger(__name__)

LEVELS = ("quick", "full")

F17 = FftPrime(4, 1)
F97 = FftPrime(5, 3)
F7681 = FftPrime(9, 15)
F12289 = FftPrime(12, 3)
BIVARIATE_FIELDS = (F17, F97, F7681, F12289)

PUBLISHED_A_1000 = [13, 306, 726, 2647, 3432, 5682, 5800, 5916, 6532, 7737, 8418, 8913, 9072]

# random pairs per operand size, checked with both transform engines
QUICK_RANDOM_PAIRS = {1 << 10: 2, 1 << 12: 1}
FULL_RANDOM_PAIRS = {1 << 10: 100, 1 << 12: 25, 1 << 14: 5, 1 << 16: 1}


class Checker:
    """Counts checks; an injected fault fails the first one."""

    def __init__(self, fault: bool = False) -> None:
        self.fault = fault
        self.checks = 0

    def expect(self, actual: object, expected: object, what: str) -> None:
        self.checks += 1
        if self.fault and self.checks == 1:
            raise InvariantFailure(f"{what}: injected fault")
        if actual != expected:
            raise InvariantFailure(f"{what}: got {actual!r}, expected {expected!r}")


Suite = Callable[[Checker, random.Random, bool], None]


def _rand_poly(field: FftPrime, length: int, rng: random.Random) -> PolyModXL:
    return PolyModXL(tuple(rng.randrange(field.p) for _ in range(length)), field)


# --- suites ------------------------------------------------------------------
def suite_bigint(check: Checker, rng: random.Random, full: bool) -> None:
    for _ in range(400 if full else 100):
        x, y = rng.getrandbits(rng.randrange(1, 3000)), rng.getrandbits(rng.randrange(1, 3000))
        a, b = Natural.from_int(x), Natural.from_int(y)
        check.expect(int(mul_oracle(a, b)), x * y, "mul_oracle")
        check.expect(mul_karatsuba(a, b, cutoff=4), mul_oracle(a, b), "mul_karatsuba")
        if y:
            q, r = divmod_natural(a, b)
            check.expect((int(q), int(r)), divmod(x, y), "divmod")
        check.expect(parse_hex(format_hex(a)), a, "hex")


def suite_primes(check: Checker, rng: random.Random, full: bool) -> None:
    for m, a in [(1, 1), (2, 1), (4, 1), (8, 1), (10, 12), (12, 3)]:
        check.expect(find_p0(m).a, a, f"p0({m})")
    check.expect(find_p0(1000).a, 13, "p0(1000)")
    for n in (561, 1105, 3215031751, 2**61 - 1, 2**89 - 1):
        expected = n in (2**61 - 1, 2**89 - 1)
        check.expect(is_prime(n), expected, f"is_prime({n})")
    if full:
        check.expect(find_all_a(1000, 9100), PUBLISHED_A_1000, "find_all_a(1000, 9100)")


def suite_fp(check: Checker, rng: random.Random, full: bool) -> None:
    for field in (F17, F7681, F12289):
        for j in range(field.m + 1):
            check.expect(has_order(root_of_unity(field, 1 << j), 1 << j), True, f"root order 2^{j} in F_{field.p}")
        x = FieldElement(rng.randrange(1, field.p), field)
        check.expect((x * x.inv()).value, 1, "inverse")
        check.expect((x ** (field.p - 1)).value, 1, "Fermat")


def suite_dft(check: Checker, rng: random.Random, full: bool) -> None:
    for j in range(11 if full else 7):
        length = 1 << j
        zeta = root_of_unity(F12289, length)
        f = _rand_poly(F12289, length, rng)
        check.expect(dft_radix2(f, zeta), dft_naive(f, zeta), f"radix-2 L={length}")
        check.expect(idft(dft_radix2(f, zeta), zeta), f, f"inverse L={length}")


def suite_bluestein(check: Checker, rng: random.Random, full: bool) -> None:
    for field in (F7681, F12289):
        for j in range(7 if full else 5):
            short_length = 1 << j
            eta = root_of_unity(field, 2 * short_length)
            chirp = make_chirp(eta * eta, short_length, eta)
            for _ in range(25 if full else 5):
                a_t = _rand_poly(field, short_length, rng)
                check.expect(short_dft_via_convolution(a_t, chirp), dft_naive(a_t, chirp.omega), f"chirp S={short_length}")


def suite_bivariate(check: Checker, rng: random.Random, full: bool) -> None:
    params = ChunkParams.for_prime(F17, 2, 1)
    product = mul_bivariate_integer(split(PolyModXL.of(F17, [13]), params), split(PolyModXL.of(F17, [5]), params), params)
    check.expect(product.coeffs, ((2, 4),), "13*5 chunk product")
    check.expect(recombine(product, params, F17).coeffs, (14,), "13*5 recombined")
    for short_length in (1, 2, 4) if full else (1, 2):
        params = ChunkParams.for_prime(F17, 2, short_length)
        g = _rand_poly(F17, short_length, rng)
        for values in itertools.product(range(17), repeat=short_length):
            f = PolyModXL(values, F17)
            h = mul_bivariate_integer(split(f, params), split(g, params), params)
            check.expect(recombine(h, params, F17), cyclic_convolution_naive(f, g), f"homomorphism S={short_length}")
            check.expect(h.max_abs() <= coefficient_bound(params), True, "coefficient bound")
    for _ in range(10_000 if full else 200):
        field = rng.choice(BIVARIATE_FIELDS)
        k = rng.choice([d for d in range(1, field.m + 1) if field.m % d == 0])
        params = ChunkParams.for_prime(field, k, rng.choice((1, 2, 4, 8)))
        f, g = _rand_poly(field, params.short_length, rng), _rand_poly(field, params.short_length, rng)
        h = mul_bivariate_integer(split(f, params), split(g, params), params)
        check.expect(h.max_abs() <= coefficient_bound(params), True, f"coefficient bound k={k} over F_{field.p}")
        check.expect(recombine(h, params, field), cyclic_convolution_naive(f, g), f"homomorphism k={k} over F_{field.p}")


def suite_transform(check: Checker, rng: random.Random, full: bool) -> None:
    size = AdmissibleSize.from_chunks(12, 3)
    profiles = {"base": BASE_CASE_PROFILE, "single": Profile(max_depth=1), "double": Profile(max_depth=2)}
    for name, profile in profiles.items():
        for j in range(11 if full else 7):
            length = 1 << j
            zeta = root_of_unity(F12289, length)
            f = _rand_poly(F12289, length, rng)
            check.expect(transform(size, F12289, length, zeta, f, profile), dft_naive(f, zeta), f"{name} L={length}")


def suite_intmul(check: Checker, rng: random.Random, full: bool) -> None:
    check.expect(int(recover_product([Natural.from_int(1), Natural.from_int(1)], 4)), 17, "recover_product")
    plan = plan_for_prime(10, F12289, k=3)
    limit = 1 << (10 if full else 5)
    for x in range(limit):
        for y in range(limit):
            check.expect(int(multiply(Natural.from_int(x), Natural.from_int(y), plan=plan)), x * y, f"{x}*{y}")
    pairs = FULL_RANDOM_PAIRS if full else QUICK_RANDOM_PAIRS
    for bits, count in pairs.items():
        for _ in range(count):
            x, y = rng.getrandbits(bits), rng.getrandbits(bits)
            for engine in ("fft", "fft-recursive"):
                product = multiply(Natural.from_int(x), Natural.from_int(y), engine, force=True)
                check.expect(int(product), x * y, f"{engine} {bits} bits")


def suite_hypothesis(check: Checker, rng: random.Random, full: bool) -> None:
    summary = ap_scan(range(2, 5001 if full else 301))
    check.expect(summary.argmax_q, 2, "argmax of P(q)/(q lg^2 q)")
    check.expect(summary.max_ratio, Fraction(3, 2), "maximum ratio")
    check.expect(summary.violations, [], "violations of C")


SUITES: Dict[str, Suite] = {
    "bigint": suite_bigint,
    "primes": suite_primes,
    "fp": suite_fp,
    "dft": suite_dft,
    "bluestein": suite_bluestein,
    "bivariate": suite_bivariate,
    "transform": suite_transform,
    "intmul": suite_intmul,
    "hypothesis": suite_hypothesis,
}


# --- runner ------------------------------------------------------------------
@dataclass
class SuiteResult:
    name: str
    passed: bool
    checks: int
    detail: str = ""

    def line(self) -> str:
        status = "ok" if self.passed else f"FAIL ({self.detail})"
        return f"{self.name:<11} {status} [{self.checks} checks]"


@dataclass
class SelftestReport:
    level: str
    seed: int
    results: List[SuiteResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(result.passed for result in self.results)

    @property
    def failed(self) -> List[str]:
        return [result.name for result in self.results if not result.passed]

    def render(self) -> str:
        lines = [f"selftest level={self.level} seed={self.seed}"]
        lines.extend(result.line() for result in self.results)
        passed = sum(result.passed for result in self.results)
        lines.append(f"{passed}/{len(self.results)} suites passed")
        return "\n".join(lines) + "\n"


def run_selftest(level: str = "quick", seed: int = 0, inject_fault: Optional[str] = None) -> SelftestReport:
    if level not in LEVELS:
        raise ValueError(f"unknown level {level!r}; expected one of {', '.join(LEVELS)}")
    if inject_fault is not None and inject_fault not in SUITES:
        raise ValueError(f"unknown suite {inject_fault!r}")
    report = SelftestReport(level=level, seed=seed)
    for index, (name, suite) in enumerate(SUITES.items()):
        check = Checker(fault=name == inject_fault)
        rng = random.Random(seed * 7919 + index)
        try:
            suite(check, rng, level == "full")
        except (AssertionError, FftMulError) as exc:
            LOGGER.error("[SELFTEST] %s failed after %d checks: %s", name, check.checks, exc)
            report.results.append(SuiteResult(name, False, check.checks, str(exc)))
            continue
        except Exception as exc:  # pylint: disable=broad-except
            LOGGER.exception("[SELFTEST] %s crashed after %d checks", name, check.checks)
            report.results.append(SuiteResult(name, False, check.checks, f"{type(exc).__name__}: {exc}"))
            continue
        LOGGER.info("[SELFTEST] %s passed %d checks", name, check.checks)
        report.results.append(SuiteResult(name, True, check.checks))
    return report
