"""Timing and operation counts per engine and operand size."""
from __future__ import annotations

import logging
import random
import time
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

from bigint import Natural
from config import settings
from errors import InvariantFailure
from intmul import ENGINES, multiply
from transform import Profile, op_counters

LOGGER = logging.getLogger(__name__)

DEFAULT_ENGINES = ("karatsuba", "fft")
TREND_MIN_BITS = 1 << 18
TREND_LIMIT = 3.0


@dataclass(frozen=True)
class BenchMeasurement:
    bits: int
    engine: str
    seconds: float
    fp_mults: int
    recursions: int
    layers: int

    def to_dict(self) -> dict:
        return {
            "bits": self.bits,
            "engine": self.engine,
            "seconds": self.seconds,
            "fp_mults": self.fp_mults,
            "recursions": self.recursions,
            "layers": self.layers,
        }


@dataclass(frozen=True)
class TrendPoint:
    engine: str
    bits: int
    ratio: float

    @property
    def ok(self) -> bool:
        return self.ratio < TREND_LIMIT


@dataclass
class BenchResult:
    rows: List[BenchMeasurement] = field(default_factory=list)
    trend: List[TrendPoint] = field(default_factory=list)

    @property
    def trend_ok(self) -> bool:
        return all(point.ok for point in self.trend)


def random_operand(bits: int, rng: random.Random) -> Natural:
    """Uniform operand with exactly ``bits`` bits."""
    if bits < 1:
        raise ValueError(f"operand size must be positive, got {bits}")
    return Natural.from_int(rng.getrandbits(bits) | (1 << (bits - 1)))


def trend_check(rows: Sequence[BenchMeasurement], engine: str = "fft", min_bits: int = TREND_MIN_BITS) -> List[TrendPoint]:
    """time(2n)/time(n) for every doubling pair at or above ``min_bits``."""
    timings = {row.bits: row.seconds for row in rows if row.engine == engine}
    points = []
    for bits in sorted(timings):
        doubled = timings.get(2 * bits)
        if bits < min_bits or doubled is None or timings[bits] <= 0:
            continue
        point = TrendPoint(engine, bits, doubled / timings[bits])
        if not point.ok:
            LOGGER.warning(
                "[BENCH] %s: time(%d)/time(%d) = %.2f, above %.1f", engine, 2 * bits, bits, point.ratio, TREND_LIMIT
            )
        points.append(point)
    return points


def run_bench(
    bits: Sequence[int],
    engines: Sequence[str] = DEFAULT_ENGINES,
    seed: Optional[int] = None,
    profile: Optional[Profile] = None,
) -> BenchResult:
    """Multiply one random pair per size with every engine.

    Engines must agree on each product; transform engines skip the
    small-operand bypass so their counts describe the transform path.
    """
    unknown = [engine for engine in engines if engine not in ENGINES]
    if unknown:
        raise ValueError(f"unknown engines: {', '.join(unknown)}")
    seed = settings.seed if seed is None else seed
    result = BenchResult()

    for size in sorted(set(bits)):
        rng = random.Random(seed * 1_000_003 + size)
        u, v = random_operand(size, rng), random_operand(size, rng)
        products = {}
        for engine in engines:
            op_counters(reset=True)
            start = time.perf_counter()
            products[engine] = multiply(u, v, engine, profile, force=True)
            elapsed = time.perf_counter() - start
            counts = op_counters()
            row = BenchMeasurement(size, engine, elapsed, counts.fp_mults, counts.recursions, counts.layers)
            LOGGER.info("[BENCH] %d bits %-13s %.4fs fp_mults=%d", size, engine, elapsed, counts.fp_mults)
            result.rows.append(row)
        if len(set(products.values())) > 1:
            raise InvariantFailure(f"engines disagree at {size} bits: {', '.join(products)}")

    for engine in engines:
        previous = None
        for row in (r for r in result.rows if r.engine == engine):
            if previous is not None and row.seconds < previous.seconds:
                LOGGER.info("[BENCH] %s faster at %d bits than at %d bits", engine, row.bits, previous.bits)
            previous = row
        result.trend.extend(trend_check(result.rows, engine))
    return result
