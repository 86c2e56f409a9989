"""Chirp transform tests."""
from __future__ import annotations

import random

import pytest

from bluestein import (
    bluestein_engine,
    chirp_exponent,
    make_chirp,
    naive_batch_convolver,
    short_dft_via_convolution,
)
from dft import PolyModXL, dft_cooley_tukey, dft_naive, make_ct_plan
from errors import ChirpMismatch
from fp import FieldElement, root_of_unity
from primes import FftPrime

F17 = FftPrime(4, 1)
F7681 = FftPrime(9, 15)
F12289 = FftPrime(12, 3)


def chirp_for(field: FftPrime, short_length: int):
    eta = root_of_unity(field, 2 * short_length)
    return make_chirp(eta * eta, short_length, eta)


def test_trivial_chirp():
    one = FieldElement(1, F17)
    chirp = make_chirp(one, 1, one)
    assert chirp.f_weights == (1,)
    assert chirp.g_chirp.coeffs == (1,)


def test_chirp_table_f17():
    eta = FieldElement(2, F17)
    chirp = make_chirp(FieldElement(4, F17), 4, eta)
    expected = tuple((eta ** -chirp_exponent(i, 4)).value for i in range(4))
    assert chirp.g_chirp.coeffs == expected == (1, 9, 16, 9)
    assert chirp.f_weights == (1, 2, 16, 2)


def test_chirp_weights_invert():
    chirp = chirp_for(F12289, 64)
    p = F12289.p
    for i in range(64):
        assert chirp.f_weights[i] * chirp.g_chirp.coeffs[i] % p == 1


def test_chirp_mismatch():
    with pytest.raises(ChirpMismatch):
        make_chirp(FieldElement(4, F17), 4, FieldElement(3, F17))


def test_chirp_identity():
    rng = random.Random(1)
    short_length = 32
    chirp = chirp_for(F7681, short_length)
    eta, omega = chirp.eta, chirp.omega
    for _ in range(100):
        i, j = rng.randrange(short_length), rng.randrange(short_length)
        lhs = eta ** (i * i) * eta ** (j * j) * eta ** -((i - j) ** 2)
        assert lhs == omega ** (i * j)


def test_chirp_exponents_mod_2s():
    chirp = chirp_for(F7681, 16)
    for i in range(16):
        assert chirp.g_chirp.coeffs[i] == (chirp.eta ** -(i * i)).value
        assert chirp_exponent(i, 16) < 32


def test_short_dft_examples():
    chirp = make_chirp(FieldElement(4, F17), 4, FieldElement(2, F17))
    assert short_dft_via_convolution(PolyModXL.zero(F17, 4), chirp).coeffs == (0, 0, 0, 0)
    assert short_dft_via_convolution(PolyModXL.of(F17, [1, 0, 0, 0]), chirp).coeffs == (1, 1, 1, 1)
    assert short_dft_via_convolution(PolyModXL.of(F17, [1, 1, 0, 0]), chirp).coeffs == (2, 5, 0, 14)


@pytest.mark.parametrize("field", [F7681, F12289])
@pytest.mark.parametrize("short_length", [1, 2, 4, 8, 16, 32, 64])
def test_short_dft_matches_naive(field, short_length):
    chirp = chirp_for(field, short_length)
    rng = random.Random(short_length)
    for _ in range(25):
        a_t = PolyModXL(tuple(rng.randrange(field.p) for _ in range(short_length)), field)
        assert short_dft_via_convolution(a_t, chirp) == dft_naive(a_t, chirp.omega)


def test_wrong_length_rejected():
    chirp = chirp_for(F7681, 8)
    with pytest.raises(ChirpMismatch):
        short_dft_via_convolution(PolyModXL.zero(F7681, 4), chirp)


def test_engine_inside_cooley_tukey():
    length, short_length = 64, 8
    zeta = root_of_unity(F7681, length)
    plan = make_ct_plan(length, short_length, zeta)
    eta = zeta ** (length // (2 * short_length))
    chirp = make_chirp(plan.omega, short_length, eta)
    rng = random.Random(4)
    f = PolyModXL(tuple(rng.randrange(F7681.p) for _ in range(length)), F7681)
    engine = bluestein_engine(chirp, naive_batch_convolver)
    assert dft_cooley_tukey(f, plan, engine) == dft_naive(f, zeta)
