import math
from itertools import product as cartesian

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from microsq import oracles
from microsq.arith import (
    Eligibility,
    classify,
    euler_phi,
    factorize,
    is_gauss_excluded,
    is_prime,
    is_three_square_eligible,
    legendre,
    moebius,
    ordered_two_square_count,
    primes_up_to,
    r2,
    two_square_decompositions,
)


def test_factorize_examples():
    assert list(factorize(1)) == []
    assert list(factorize(12)) == [(2, 2), (3, 1)]
    p = 10**9 + 7
    assert list(factorize(p)) == [(p, 1)]
    assert oracles.is_prime_trial(p)


def test_factorize_large_composites():
    n = 1_000_000_007 * 998_244_353
    assert list(factorize(n)) == [(998_244_353, 1), (1_000_000_007, 1)]
    m = (2**61 - 1) * 3
    assert list(factorize(m)) == [(3, 1), (2**61 - 1, 1)]


@pytest.mark.parametrize("bad", [0, -5, 2**63])
def test_factorize_rejects(bad):
    with pytest.raises(ValueError):
        factorize(bad)


def test_factorize_reconstructs_up_to_a_million():
    # spot the whole range through the sieve path, in strides
    for n in range(1, 10**6 + 1, 997):
        f = factorize(n)
        assert math.prod(p**e for p, e in f) == n
        primes = [p for p, _ in f]
        assert primes == sorted(set(primes))
        assert all(is_prime(p) for p in primes)


def test_factorize_matches_trial_division():
    for n in range(1, 5000):
        assert factorize(n).as_dict() == oracles.trial_factor(n)


@given(st.integers(min_value=1, max_value=2**62))
@settings(max_examples=200, deadline=None)
def test_factorize_property(n):
    f = factorize(n)
    assert math.prod(p**e for p, e in f) == n
    assert all(is_prime(p) for p in f.primes())


def test_primes_and_primality():
    assert primes_up_to(30) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert [n for n in range(200) if is_prime(n)] == [n for n in range(200) if oracles.is_prime_trial(n)]


def test_legendre_examples():
    assert legendre(0, 5) == 0
    assert legendre(4, 7) == 1
    assert legendre(3, 7) == -1
    assert oracles.squares_mod(7) == {1, 2, 4}


@pytest.mark.parametrize("p", [2, 9, 15])
def test_legendre_rejects(p):
    with pytest.raises(ValueError):
        legendre(1, p)


def test_legendre_matches_square_sets():
    for p in primes_up_to(997)[1:]:
        squares = oracles.squares_mod(p)
        values = [legendre(b, p) for b in range(p)]
        assert values[0] == 0
        assert all((v == 1) == (b in squares) for b, v in enumerate(values) if b)
        assert sum(values[1:]) == 0


def test_multiplicative_examples():
    assert moebius(1) == 1 and euler_phi(1) == 1
    assert moebius(12) == 0 and euler_phi(12) == 4
    assert moebius(30) == -1 and euler_phi(30) == 8


def test_multiplicative_against_sieve():
    mu, phi = oracles.moebius_phi_sieve(20000)
    for n in range(1, 20001):
        assert moebius(n) == mu[n]
        assert euler_phi(n) == phi[n]


def test_two_square_examples():
    assert two_square_decompositions(0, allow_zero=True) == [(0, 0)]
    assert two_square_decompositions(0, allow_zero=False) == []
    assert two_square_decompositions(25, allow_zero=True) == [(0, 5), (3, 4)]
    assert two_square_decompositions(21) == []


def test_two_square_rejects_huge():
    with pytest.raises(ValueError):
        two_square_decompositions(2**63)


def test_two_square_against_brute_force():
    for m in range(0, 20001):
        assert two_square_decompositions(m, allow_zero=True) == oracles.two_square_pairs(m, True)
        assert two_square_decompositions(m, allow_zero=False) == oracles.two_square_pairs(m, False)


def test_two_square_counts_up_to_1e5():
    # membership and number of decompositions over the whole range
    limit = 10**5
    counts = np.zeros(limit + 1, dtype=np.int64)
    for a in range(0, math.isqrt(limit) + 1):
        b = np.arange(a, math.isqrt(limit) + 1)
        s = a * a + b * b
        np.add.at(counts, s[s <= limit], 1)
    for m in range(0, limit + 1, 7):
        assert len(two_square_decompositions(m)) == counts[m]


@given(st.integers(min_value=0, max_value=10**12))
@settings(max_examples=200, deadline=None)
def test_two_square_property(m):
    pairs = two_square_decompositions(m)
    assert all(a * a + b * b == m and 0 <= a <= b for a, b in pairs)
    assert len(set(pairs)) == len(pairs)
    obstructed = any(p % 4 == 3 and e % 2 for p, e in factorize(m)) if m else False
    assert (not pairs) == obstructed


def test_ordered_counts_follow_multiplicity_rule():
    for m in range(0, 3000):
        pairs = two_square_decompositions(m, allow_zero=True)
        positive = sum(2 if 0 < a < b else 1 for a, b in pairs if a > 0)
        with_zero = sum(1 if a == b else 2 for a, b in pairs)
        assert ordered_two_square_count(m) == positive
        assert ordered_two_square_count(m, allow_zero=True) == with_zero
        signed = sum(1 for x, y in cartesian(range(-60, 61), repeat=2) if x * x + y * y == m) if m <= 3600 else None
        assert r2(m) == signed


def test_classify_examples():
    E = Eligibility
    assert classify(7) == {E.SEVEN_MOD_8, E.GAUSS_EXCLUDED, E.FOUR_SQUARE_ELIGIBLE}
    assert classify(28) == {E.DIVISIBLE_BY_4, E.GAUSS_EXCLUDED, E.FOUR_SQUARE_ELIGIBLE}
    assert classify(5) == {E.THREE_SQUARE_ELIGIBLE, E.GAUSS_ELIGIBLE, E.FOUR_SQUARE_ELIGIBLE}
    assert E.EIGHT_DIVIDES_N in classify(16)


@given(st.integers(min_value=1, max_value=10**15))
def test_classify_property(n):
    tags = classify(n)
    if is_three_square_eligible(n):
        assert Eligibility.GAUSS_ELIGIBLE in tags
    assert (Eligibility.GAUSS_EXCLUDED in tags) != (Eligibility.GAUSS_ELIGIBLE in tags)
    assert (Eligibility.FOUR_SQUARE_ELIGIBLE in tags) == (n % 8 != 0)


def test_gauss_theorem_census():
    limit = 10**5
    hit = oracles.integer_representable_table(limit)
    excluded = np.array([is_gauss_excluded(n) for n in range(1, limit + 1)])
    assert np.array_equal(~hit[1:], excluded)
