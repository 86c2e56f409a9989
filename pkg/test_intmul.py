"""Integer multiplication tests against the schoolbook oracle and int products."""
from __future__ import annotations

import random

import pytest

import config
from bigint import ZERO, Natural, mul_oracle
from errors import ParameterInfeasible
from intmul import ENGINES, make_plan, multiply, plan_for_prime, recover_product
from primes import FftPrime, lg
from transform import Profile

F12289 = FftPrime(12, 3)
SMALL_PLAN = plan_for_prime(10, F12289, k=3)


def nat(value: int) -> Natural:
    return Natural.from_int(value)


def test_practical_plan_for_a_million_bits():
    plan = make_plan(10**6)
    assert (plan.k, plan.m, plan.b) == (5, 135, 33)
    assert plan.d_chunks == 30304
    assert plan.length == 1 << 17
    assert plan.d_chunks <= plan.length // 2
    assert 2 * plan.b + lg(plan.d_chunks) < plan.m
    assert plan.prime.m == 135


def test_faithful_plan_infeasible_at_a_million_bits():
    with pytest.raises(ParameterInfeasible) as excinfo:
        make_plan(10**6, Profile(mode="paper_faithful"))
    assert "k" in excinfo.value.inequality


def test_degenerate_plan():
    plan = make_plan(2)
    assert plan.d_chunks == 1
    assert plan.length == 2
    assert multiply(nat(3), nat(3), plan=plan) == nat(9)


def test_small_prime_plan():
    assert (SMALL_PLAN.b, SMALL_PLAN.d_chunks, SMALL_PLAN.length) == (3, 4, 16)
    with pytest.raises(ParameterInfeasible):
        plan_for_prime(200, F12289, k=3)


def test_recover_product_examples():
    assert recover_product([nat(42)], 7) == nat(42)
    assert recover_product([nat(1), nat(1)], 4) == nat(17)
    assert recover_product([], 4) == ZERO


def test_recover_product_matches_evaluation():
    rng = random.Random(1)
    for _ in range(50):
        b = rng.randrange(1, 40)
        coeffs = [rng.getrandbits(2 * b + 5) for _ in range(rng.randrange(1, 30))]
        expected = sum(c << (b * i) for i, c in enumerate(coeffs))
        assert int(recover_product([nat(c) for c in coeffs], b)) == expected


@pytest.mark.parametrize("b", [1, 7, 32, 64])
def test_recover_product_zero_leading_coefficients(b):
    assert int(recover_product([ZERO, ZERO, nat(1)], b)) == 1 << (2 * b)
    assert int(recover_product([ZERO, nat(3), ZERO, ZERO, nat(5)], b)) == (3 << b) + (5 << (4 * b))


def test_trivial_operands():
    u = nat(0xDEADBEEF)
    for engine in ENGINES:
        assert multiply(ZERO, u, engine, force=True) == ZERO
        assert multiply(u, nat(1), engine, force=True) == u


def test_exhaustive_small_operands_fft_path():
    for x in range(64):
        for y in range(64):
            assert int(multiply(nat(x), nat(y), plan=SMALL_PLAN)) == x * y


@pytest.mark.parametrize("engine", ["fft", "fft-recursive"])
def test_random_ten_bit_operands(engine):
    rng = random.Random(2)
    for _ in range(300):
        x, y = rng.getrandbits(10), rng.getrandbits(10)
        assert int(multiply(nat(x), nat(y), engine, plan=SMALL_PLAN)) == x * y


def test_forced_default_plan_matches_oracle():
    rng = random.Random(3)
    for bits in (8, 64, 300):
        for _ in range(20):
            u, v = nat(rng.getrandbits(bits)), nat(rng.getrandbits(bits))
            assert multiply(u, v, force=True) == mul_oracle(u, v)


@pytest.mark.parametrize("bits", [1 << 10, 1 << 12, 1 << 14])
def test_random_pairs_match_int_product(bits):
    rng = random.Random(bits)
    for _ in range(3):
        x, y = rng.getrandbits(bits), rng.getrandbits(bits)
        assert int(multiply(nat(x), nat(y), force=True)) == x * y


def test_engines_agree():
    rng = random.Random(4)
    u, v = nat(rng.getrandbits(4096)), nat(rng.getrandbits(4096))
    products = {engine: multiply(u, v, engine, force=True) for engine in ENGINES}
    assert len(set(products.values())) == 1


def test_recursive_engine_default_plan():
    rng = random.Random(5)
    x, y = rng.getrandbits(3000), rng.getrandbits(3000)
    assert int(multiply(nat(x), nat(y), "fft-recursive", force=True)) == x * y


def test_bypass_below_threshold(monkeypatch):
    monkeypatch.setattr(config.settings, "mul_bypass_bits", 1 << 20)
    assert multiply(nat(255), nat(255)) == nat(65025)


def test_unbalanced_operands():
    rng = random.Random(6)
    x, y = rng.getrandbits(5000), rng.getrandbits(17)
    assert int(multiply(nat(x), nat(y), force=True)) == x * y


@pytest.mark.parametrize("engine", ["fft", "fft-recursive"])
def test_sparse_operands(engine):
    for x, y in [(2**5000, 2**5000), (2**4999, 3), (2**3000 * (2**700 - 1), 2**1200 + 1)]:
        assert int(multiply(nat(x), nat(y), engine, force=True)) == x * y


def test_default_path_powers_of_two():
    u = nat(2**1500)
    assert int(multiply(u, u)) == 2**3000
    assert int(multiply(nat(2**2100), nat(2**2100 - 1))) == 2**2100 * (2**2100 - 1)


def test_ring_axioms():
    rng = random.Random(7)
    for _ in range(5):
        u, v, w = (nat(rng.getrandbits(2500)) for _ in range(3))
        assert multiply(u, v, force=True) == multiply(v, u, force=True)
        assert multiply(u, v + w, force=True) == multiply(u, v, force=True) + multiply(u, w, force=True)


def test_plan_too_small_for_operands():
    with pytest.raises(ParameterInfeasible):
        multiply(nat(1 << 20), nat(3), plan=SMALL_PLAN)


def test_unknown_engine():
    with pytest.raises(ValueError):
        multiply(nat(1), nat(1), "toom")
