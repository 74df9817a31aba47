import math
import os

import numpy as np
import pytest
from hypothesis import given, strategies as st

from ramexp.arith import (
    CapacityError,
    build_sieve,
    divisors,
    factorize,
    is_coprime_to_set,
    is_prime,
    is_smooth,
    mobius_phi,
    p_adic_valuation,
    prime_divisors,
    prime_set,
    primes_up_to,
    shared_sieve,
    sieve_capacity,
)


def test_sieve_small_tables():
    t = build_sieve(10)
    assert t.mu[1:].tolist() == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]
    assert t.phi[6] == 2 and t.phi[9] == 6
    t2 = build_sieve(2)
    assert (t2.spf[2], t2.mu[2], t2.phi[2]) == (2, -1, 1)


def test_sieve_is_read_only():
    t = build_sieve(100)
    with pytest.raises(ValueError):
        t.mu[5] = 3


def test_sieve_capacity_errors(monkeypatch):
    with pytest.raises(CapacityError):
        build_sieve(1)
    monkeypatch.setenv("RAMEXP_SIEVE_CAPACITY", "1000")
    assert sieve_capacity() == 1000
    with pytest.raises(CapacityError):
        build_sieve(1001)


@pytest.mark.parametrize("n, expected", [(1, []), (12, [(2, 2), (3, 1)]), (97, [(97, 1)])])
def test_factorize_examples(n, expected):
    assert factorize(n) == expected


def test_factorize_beyond_sieve_uses_trial_division():
    n = 2**3 * 1_000_003
    assert factorize(n, build_sieve(100)) == [(2, 3), (1_000_003, 1)]


@pytest.mark.parametrize("p, a, v", [(2, 12, 2), (5, 12, 0), (3, 1, 0)])
def test_valuation_examples(p, a, v):
    assert p_adic_valuation(p, a) == v


@pytest.mark.parametrize("n, mp", [(1, (1, 1)), (6, (1, 2)), (8, (0, 4))])
def test_mobius_phi_examples(n, mp):
    assert mobius_phi(n) == mp


def test_prime_divisors_examples():
    assert prime_divisors(1) == frozenset()
    assert prime_divisors(12) == {2, 3}
    assert prime_divisors(7) == {7}


def test_coprime_and_smooth_examples():
    assert is_coprime_to_set(35, {2, 3})
    assert not is_coprime_to_set(6, {2})
    assert is_coprime_to_set(1, {2, 3, 5})
    assert is_smooth(12, 3) and not is_smooth(14, 3) and is_smooth(1, 2)


def test_point_values_match_sieve():
    t = shared_sieve(10_000)
    for n in range(1, 10_001):
        assert mobius_phi(n) == (int(t.mu[n]), int(t.phi[n]))


def test_divisor_sum_identities():
    t = shared_sieve(10_000)
    for n in range(1, 10_001):
        ds = divisors(n)
        assert sum(int(t.phi[d]) for d in ds) == n
        assert sum(int(t.mu[d]) for d in ds) == (1 if n == 1 else 0)


def test_factorize_round_trip_to_1e5():
    t = shared_sieve(100_000)
    for n in range(1, 100_001):
        assert math.prod(p**e for p, e in factorize(n, t)) == n


def test_sieve_against_numpy_free_reference():
    t = build_sieve(2000)
    primes = [p for p in range(2, 2001) if all(p % d for d in range(2, int(p**0.5) + 1))]
    assert primes_up_to(2000) == primes
    assert t.primes.tolist() == primes
    for n in range(2, 2001):
        assert t.spf[n] == min(p for p in primes if n % p == 0)


@given(st.integers(min_value=1, max_value=10**6), st.integers(min_value=1, max_value=10**6))
def test_phi_multiplicative_on_coprime(m, n):
    if math.gcd(m, n) == 1:
        assert mobius_phi(m * n)[1] == mobius_phi(m)[1] * mobius_phi(n)[1]
        assert mobius_phi(m * n)[0] == mobius_phi(m)[0] * mobius_phi(n)[0]


def test_input_validation():
    with pytest.raises(ValueError):
        factorize(0)
    with pytest.raises(ValueError):
        p_adic_valuation(4, 8)
    with pytest.raises(ValueError):
        prime_set([2, 9])
    assert is_prime(2) and not is_prime(1)
