"""Prime search and Hypothesis P table tests, with sympy as the independent oracle."""
from __future__ import annotations

import math
import random
from fractions import Fraction

import pytest
from sympy import isprime, primerange
from sympy import totient as sympy_totient

import primes
from errors import InvalidResidue, NotFound
from primes import (
    FftPrime,
    PrimeTable,
    ap_scan,
    default_a_max,
    find_all_a,
    find_composite_witness,
    find_p0,
    find_p0_unbounded,
    is_prime,
    least_prime_in_ap,
    lg,
    minimality_evidence,
    p_of_q,
    sieve_primes,
    totient,
)

PUBLISHED_A_1000 = [13, 306, 726, 2647, 3432, 5682, 5800, 5916, 6532, 7737, 8418, 8913, 9072]


def test_lg_convention():
    assert [lg(x) for x in (1, 2, 3, 4, 5, 8, 9)] == [0, 1, 2, 2, 3, 3, 4]
    for x in range(2, 5000):
        assert 2 ** (lg(x) - 1) < x <= 2 ** lg(x)


def test_is_prime_examples():
    assert not is_prime(0)
    assert not is_prime(1)
    assert is_prime(2)
    assert is_prime(257)
    assert is_prime(13 * 2**1000 + 1)
    assert not is_prime(12 * 2**1000 + 1)


def test_is_prime_matches_sympy():
    for n in range(20000):
        assert is_prime(n) == isprime(n), n
    rng = random.Random(1)
    for _ in range(300):
        n = rng.getrandbits(rng.choice([40, 64, 90, 200]))
        assert is_prime(n) == isprime(n), n


def test_strong_pseudoprimes_rejected():
    # strong pseudoprimes to several small bases
    for n in (3215031751, 2152302898747, 3474749660383, 341550071728321, 3825123056546413051):
        assert not is_prime(n)


def test_composite_witness():
    assert find_composite_witness(91) == 7
    assert find_composite_witness(257) is None
    assert find_composite_witness(1999 * 2003) == 1999
    big = (2**89 - 1) * (2**107 - 1)
    assert find_composite_witness(big) is not None


def test_sieve():
    assert list(sieve_primes(30)) == list(primerange(0, 31))
    assert len(sieve_primes(1)) == 0


@pytest.mark.parametrize("m,a,p", [(4, 1, 17), (8, 1, 257), (1, 1, 3), (3, 2, 17)])
def test_find_p0_small(m, a, p):
    prime = find_p0(m)
    assert (prime.a, prime.p) == (a, p)


def test_find_p0_m1000():
    assert find_p0(1000).a == 13


def test_find_p0_not_found():
    # 2^3+1 = 9 is composite
    with pytest.raises(NotFound):
        find_p0(3, a_max=1)


def test_find_p0_parallel_matches_sequential(monkeypatch):
    monkeypatch.setattr("config.settings.search_block", 4)
    assert find_p0(1000, a_max=400, workers=2).a == 13
    assert find_all_a(1000, 400, workers=2) == [13, 306]


def test_find_p0_unbounded_goes_past_the_bound():
    with pytest.raises(NotFound):
        find_p0(3, a_max=1)
    assert find_p0_unbounded(3).a == 2
    assert find_p0_unbounded(10, timeout=30).p == 12289
    assert find_p0_unbounded(1000, timeout=600).a == 13


def test_find_p0_unbounded_times_out(monkeypatch):
    monkeypatch.setattr(primes, "_scan_block", lambda m, lo, hi: [])
    with pytest.raises(NotFound, match="within 0.01s"):
        find_p0_unbounded(5, timeout=0.01)


def test_find_p0_unbounded_rejects_bad_arguments():
    with pytest.raises(ValueError):
        find_p0_unbounded(0)
    with pytest.raises(ValueError):
        find_p0_unbounded(4, timeout=0)


def test_find_all_a_small():
    assert find_all_a(4, 1) == [1]
    assert find_all_a(1, 6) == [1, 2, 3, 5, 6]


def test_find_all_a_matches_published_list():
    assert find_all_a(1000, 9100) == PUBLISHED_A_1000


def test_fft_prime_rejects_composite():
    with pytest.raises(ValueError):
        FftPrime(2, 2)  # 9
    prime = FftPrime(4, 1)
    assert prime.p == 17
    assert prime.supports_order(16)
    assert not prime.supports_order(32)
    assert not prime.supports_order(12)


def test_minimality_evidence():
    prime = find_p0(1000)
    evidence = minimality_evidence(prime)
    assert sorted(evidence) == list(range(1, 13))
    assert all(w > 1 for w in evidence.values())


def test_default_a_max():
    assert default_a_max(1) == 1
    assert default_a_max(4) == 23
    assert default_a_max(10, Fraction(1)) == 99


@pytest.mark.parametrize("r,q,expected", [(1, 4, 5), (3, 4, 3), (1, 2, 3), (1, 3, 7), (2, 3, 2)])
def test_least_prime_in_ap(r, q, expected):
    assert least_prime_in_ap(r, q) == expected


def test_least_prime_invalid_residue():
    with pytest.raises(InvalidResidue):
        least_prime_in_ap(2, 4)


@pytest.mark.parametrize(
    "q,prime,ratio",
    [(2, 3, Fraction(3, 2)), (3, 7, Fraction(7, 12)), (4, 5, Fraction(5, 16))],
)
def test_p_of_q_examples(q, prime, ratio):
    record = p_of_q(q)
    assert record.least_prime == prime
    assert record.ratio == ratio


def sympy_p_of_q(q: int, primes: list) -> int:
    phi = sympy_totient(q)
    seen = {}
    for p in primes:
        if q % p and p % q not in seen:
            seen[p % q] = p
            if len(seen) == phi:
                return p
    raise AssertionError(f"prime list too short for q={q}")


def test_p_of_q_matches_sieve_oracle():
    table = PrimeTable()
    primes = list(primerange(2, 2_000_000))
    for q in range(2, 1001):
        record = p_of_q(q, table)
        assert record.least_prime == sympy_p_of_q(q, primes), q
        assert record.phi_q == sympy_totient(q)
        assert record.least_prime % q == record.r


def test_p_of_q_matches_ascending_scan():
    for q in range(2, 60):
        record = p_of_q(q)
        residues = [r for r in range(1, q + 1) if math.gcd(r, q) == 1]
        assert record.least_prime == max(least_prime_in_ap(r, q) for r in residues)


def test_totient():
    for q in range(1, 300):
        assert totient(q) == sympy_totient(q)


def test_ap_scan_small():
    summary = ap_scan(range(2, 5))
    assert [r.ratio for r in summary.records] == [Fraction(3, 2), Fraction(7, 12), Fraction(5, 16)]
    assert summary.argmax_q == 2
    assert summary.argmax_is_q2
    assert summary.violations == []


def test_ap_scan_records_violations_without_raising(caplog):
    summary = ap_scan([2, 3], c=Fraction(1, 2))
    assert summary.violations == [2, 3]
    assert "above C" in caplog.text


def test_ap_scan_maximum_at_q2():
    summary = ap_scan(range(2, 401))
    assert summary.max_ratio == Fraction(3, 2)
    assert summary.argmax_is_q2
