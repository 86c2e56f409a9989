"""Transform engine tests against the naive evaluation oracle."""
from __future__ import annotations

import random

import pytest

from counters import op_counters
from dft import (
    PolyModXL,
    cyclic_convolution_naive,
    dft_cooley_tukey,
    dft_cooley_tukey_batch,
    dft_naive,
    dft_radix2,
    idft,
    make_ct_plan,
    transpose,
    transpose_flat,
)
from errors import OrderMismatch, PlanInconsistent
from fp import FieldElement, root_of_unity
from primes import FftPrime

F17 = FftPrime(4, 1)
F97 = FftPrime(5, 3)
F7681 = FftPrime(9, 15)
F12289 = FftPrime(12, 3)

LENGTHS = [1 << j for j in range(11)]


def rand_poly(field: FftPrime, length: int, rng: random.Random) -> PolyModXL:
    return PolyModXL(tuple(rng.randrange(field.p) for _ in range(length)), field)


def test_dft_naive_examples():
    zeta = FieldElement(4, F17)
    assert dft_naive(PolyModXL.zero(F17, 4), zeta).coeffs == (0, 0, 0, 0)
    assert dft_naive(PolyModXL.of(F17, [5, 0, 0, 0]), zeta).coeffs == (5, 5, 5, 5)
    assert dft_naive(PolyModXL.of(F17, [1, 1, 0, 0]), zeta).coeffs == (2, 5, 0, 14)


def test_dft_naive_rejects_wrong_order():
    with pytest.raises(OrderMismatch):
        dft_naive(PolyModXL.of(F17, [1, 1, 0, 0]), FieldElement(2, F17))  # order 8


def test_radix2_small():
    f = PolyModXL.of(F17, [3])
    assert dft_radix2(f, FieldElement(1, F17)) == f
    pair = PolyModXL.of(F17, [7, 3])
    assert dft_radix2(pair, FieldElement(16, F17)).coeffs == (10, 4)


@pytest.mark.parametrize("field", [F7681, F12289])
def test_radix2_matches_naive(field):
    rng = random.Random(field.p)
    for length in LENGTHS[: field.m + 1]:
        zeta = root_of_unity(field, length)
        for _ in range(5 if length >= 256 else 50):
            f = rand_poly(field, length, rng)
            assert dft_radix2(f, zeta) == dft_naive(f, zeta)


def test_idft_examples():
    zeta = FieldElement(4, F17)
    assert idft(PolyModXL.of(F17, [2, 5, 0, 14]), zeta).coeffs == (1, 1, 0, 0)
    assert idft(PolyModXL.of(F17, [6] * 4), zeta).coeffs == (6, 0, 0, 0)


@pytest.mark.parametrize("length", [1, 2, 8, 64, 512])
def test_idft_round_trip(length):
    rng = random.Random(length)
    zeta = root_of_unity(F7681, length)
    f = rand_poly(F7681, length, rng)
    assert idft(dft_radix2(f, zeta), zeta) == f


@pytest.mark.parametrize("length", [1, 4, 16, 64, 256])
def test_convolution_theorem(length):
    rng = random.Random(length + 1)
    zeta = root_of_unity(F12289, length)
    f, g = rand_poly(F12289, length, rng), rand_poly(F12289, length, rng)
    product = idft(dft_radix2(f, zeta).pointwise(dft_radix2(g, zeta)), zeta)
    assert product == cyclic_convolution_naive(f, g)


def test_linearity():
    rng = random.Random(5)
    zeta = root_of_unity(F7681, 32)
    f, g = rand_poly(F7681, 32, rng), rand_poly(F7681, 32, rng)
    alpha = FieldElement(1234, F7681)
    assert dft_radix2(f.scale(alpha) + g, zeta) == dft_radix2(f, zeta).scale(alpha) + dft_radix2(g, zeta)


def test_double_transform_reverses():
    rng = random.Random(6)
    length = 64
    zeta = root_of_unity(F7681, length)
    f = rand_poly(F7681, length, rng)
    twice = dft_radix2(dft_radix2(f, zeta), zeta)
    for i in range(length):
        assert twice.coeffs[i] == length * f.coeffs[-i % length] % F7681.p


def test_transpose():
    assert transpose([[1, 2, 3]]) == [[1], [2], [3]]
    assert transpose([["a", "b"], ["c", "d"]]) == [["a", "c"], ["b", "d"]]
    rng = random.Random(7)
    matrix = [[rng.randrange(100) for _ in range(16)] for _ in range(8)]
    assert transpose(transpose(matrix)) == matrix
    flat = [v for row in matrix for v in row]
    assert transpose_flat(flat, 8, 16) == [v for row in transpose(matrix) for v in row]


def test_plan_parameters():
    zeta = root_of_unity(F7681, 32)
    plan = make_ct_plan(32, 4, zeta)
    assert (plan.d, plan.d_prime) == (2, 1)
    assert plan.omega == zeta ** 8
    assert plan.short_length ** plan.d * 2 ** plan.d_prime == plan.length
    assert make_ct_plan(64, 4, root_of_unity(F7681, 64)).d_prime == 0


def test_plan_rejects_inconsistent():
    zeta = root_of_unity(F7681, 16)
    with pytest.raises(PlanInconsistent):
        make_ct_plan(16, 32, zeta)
    with pytest.raises(PlanInconsistent):
        make_ct_plan(16, 6, zeta)
    with pytest.raises(OrderMismatch):
        make_ct_plan(32, 4, zeta)


def test_cooley_tukey_single_layer_delegates():
    zeta = root_of_unity(F97, 16)
    plan = make_ct_plan(16, 16, zeta)
    calls = []

    def engine(polys, omega):
        calls.append(len(polys))
        return [dft_naive(f, omega) for f in polys]

    op_counters.reset()
    f = rand_poly(F97, 16, random.Random(8))
    assert dft_cooley_tukey(f, plan, engine) == dft_naive(f, zeta)
    assert calls == [1]
    snap = op_counters.snapshot()
    assert (plan.d, plan.d_prime) == (1, 0)
    assert (snap.layers, snap.short_layers, snap.radix2_layers) == (1, 1, 0)


def test_cooley_tukey_f97():
    zeta = root_of_unity(F97, 16)
    plan = make_ct_plan(16, 4, zeta)
    rng = random.Random(9)
    for _ in range(20):
        f = rand_poly(F97, 16, rng)
        assert dft_cooley_tukey(f, plan) == dft_naive(f, zeta)


@pytest.mark.parametrize("length,short_length,layers", [(8, 4, (1, 1)), (32, 8, (1, 2)), (32, 4, (2, 1))])
def test_cooley_tukey_trailing_radix2_layers_f97(length, short_length, layers):
    zeta = root_of_unity(F97, length)
    plan = make_ct_plan(length, short_length, zeta)
    assert (plan.d, plan.d_prime) == layers
    rng = random.Random(length + short_length)
    op_counters.reset()
    for _ in range(10):
        f = rand_poly(F97, length, rng)
        assert dft_cooley_tukey(f, plan) == dft_naive(f, zeta)
    assert op_counters.snapshot().radix2_layers == 10 * layers[1]


@pytest.mark.parametrize("short_length", [2, 4, 8])
@pytest.mark.parametrize("field", [F7681, F12289])
def test_cooley_tukey_matches_naive(field, short_length):
    rng = random.Random(short_length * field.p)
    for length in LENGTHS[: field.m + 1]:
        if length < short_length:
            continue
        zeta = root_of_unity(field, length)
        plan = make_ct_plan(length, short_length, zeta)
        for _ in range(3 if length >= 256 else 20):
            f = rand_poly(field, length, rng)
            assert dft_cooley_tukey(f, plan) == dft_naive(f, zeta)


def test_cooley_tukey_residual_radix2_layer():
    zeta = root_of_unity(F7681, 128)
    plan = make_ct_plan(128, 4, zeta)
    assert plan.d_prime == 1
    op_counters.reset()
    f = rand_poly(F7681, 128, random.Random(10))
    assert dft_cooley_tukey(f, plan, lambda polys, w: [dft_naive(g, w) for g in polys]) == dft_naive(f, zeta)
    snap = op_counters.snapshot()
    assert snap.short_layers == 3
    assert snap.radix2_layers == 1
    assert snap.layers == 4


def test_cooley_tukey_batch():
    zeta = root_of_unity(F7681, 64)
    plan = make_ct_plan(64, 8, zeta)
    rng = random.Random(11)
    polys = [rand_poly(F7681, 64, rng) for _ in range(5)]
    assert dft_cooley_tukey_batch(polys, plan) == [dft_naive(f, zeta) for f in polys]
