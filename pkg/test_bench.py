"""Benchmark harness tests; timings are only checked for shape."""
from __future__ import annotations

import random

import pytest

from bench import BenchMeasurement, random_operand, run_bench, trend_check


def test_random_operand_has_exact_size():
    rng = random.Random(1)
    for bits in (1, 31, 32, 33, 1000):
        assert random_operand(bits, rng).bit_length() == bits


def test_run_bench_rows_and_counts():
    result = run_bench([256, 512], ("oracle", "karatsuba", "fft"), seed=3)
    assert [(row.bits, row.engine) for row in result.rows] == [
        (256, "oracle"), (256, "karatsuba"), (256, "fft"),
        (512, "oracle"), (512, "karatsuba"), (512, "fft"),
    ]
    for row in result.rows:
        assert row.seconds >= 0
        assert (row.fp_mults > 0) == (row.engine == "fft")
    assert result.trend == []


def test_recursive_engine_counts_recursions():
    result = run_bench([2048], ("fft-recursive",), seed=4)
    assert result.rows[0].recursions >= 1
    assert result.rows[0].layers >= 1


def test_unknown_engine():
    with pytest.raises(ValueError):
        run_bench([64], ("toom",))


def test_trend_check():
    rows = [
        BenchMeasurement(1 << 18, "fft", 1.0, 0, 0, 0),
        BenchMeasurement(1 << 19, "fft", 2.5, 0, 0, 0),
        BenchMeasurement(1 << 20, "fft", 8.0, 0, 0, 0),
        BenchMeasurement(1 << 17, "fft", 0.1, 0, 0, 0),
        BenchMeasurement(1 << 19, "karatsuba", 9.0, 0, 0, 0),
    ]
    points = trend_check(rows, "fft")
    assert [(p.bits, p.ok) for p in points] == [(1 << 18, True), (1 << 19, False)]
    assert points[0].ratio == pytest.approx(2.5)
