import json
import math
import random
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from microsq.arith import is_three_square_eligible, legendre, primes_up_to
from microsq.densities import (
    InvariantViolation,
    Method,
    a_term,
    a_term_bound,
    a_term_direct,
    a_term_odd_prime_power,
    extra_moduli,
    extra_moduli_scan,
    local_factor_table,
    max_exponent,
    mertens_floor,
    odd_prime_partial_sum,
    odd_prime_partial_sums,
    asymptotic_w,
    singular_series_additive,
    singular_series_multiplicative,
    sseries_exception_count,
    truncation_gap_stats,
    truncation_identity_check,
    truncation_modulus,
    two_adic_partial_sum,
    two_adic_partial_sum_count,
)

BASELINES = json.loads(Path(__file__).with_name("baselines.json").read_text())
odd_primes = st.sampled_from(primes_up_to(97)[1:])


def test_a_term_direct_examples():
    assert a_term_direct(1, 17) == pytest.approx(1)
    # l = 0: chi_3(-2) = chi_3(1) = 1
    assert a_term_direct(3, 2) == pytest.approx(1 / 3)
    assert a_term_direct(9, 3) == pytest.approx(-1 / 9)


def test_a_term_direct_rejects_bad_modulus():
    with pytest.raises(ValueError):
        a_term_direct(0, 1)


def test_odd_prime_power_examples():
    assert a_term_odd_prime_power(3, 2, 9) == Fraction(2, 9)
    assert a_term_odd_prime_power(3, 2, 2) == 0
    assert a_term_odd_prime_power(5, 1, 2) == Fraction(-1, 5)
    assert legendre(3, 5) == -1  # squares mod 5 are {1, 4}
    assert float(a_term_odd_prime_power(5, 1, 2)) == pytest.approx(a_term_direct(5, 2))


def test_a_term_examples():
    for n in range(1, 51):
        assert a_term(12, n) == pytest.approx(a_term_direct(4, n) * float(a_term_odd_prime_power(3, 1, n)), abs=1e-12)
        assert a_term(12, n) == pytest.approx(a_term_direct(12, n), abs=1e-9)
        assert a_term(2, n) == a_term_direct(2, n)
    for p in (3, 5, 7, 11):
        for m in (1, 2, 4):
            if m % p:
                assert a_term(p * p, p * p * m) == pytest.approx((p - 1) / p**2)


def test_closed_forms_against_definition_small_grid():
    worst = max(abs(a_term(q, n) - a_term_direct(q, n)) for q in range(1, 101) for n in range(1, 101))
    assert worst < 1e-9


def test_closed_forms_against_definition_random_pairs():
    rng = random.Random(11)
    worst = 0.0
    for _ in range(10**4):
        q = rng.randint(1, 5000)
        n = rng.randint(1, 10**6)
        worst = max(worst, abs(a_term(q, n) - a_term_direct(q, n)))
    assert worst < 1e-9


@given(st.integers(1, 3000), st.integers(-(10**9), 10**9))
@settings(max_examples=150, deadline=None)
def test_density_bound_and_reality(q, n):
    value = a_term_direct(q, n)  # raises if the imaginary part survives
    assert abs(value) <= a_term_bound(q) + 1e-12


def test_two_adic_examples():
    assert two_adic_partial_sum(0, 5) == 1
    value = two_adic_partial_sum(3, 1)
    assert value >= 2**-6
    assert Fraction(value).limit_denominator(1 << 12) == two_adic_partial_sum_count(3, 1)
    # n = 7 is outside the hypothesis; no assertion even though the value is small
    assert two_adic_partial_sum(3, 7) == pytest.approx(float(two_adic_partial_sum_count(3, 7)))


def test_two_adic_range_checked():
    with pytest.raises(ValueError):
        two_adic_partial_sum(21, 1)


@given(st.integers(0, 10), st.integers(1, 10**6))
@settings(max_examples=100, deadline=None)
def test_two_adic_matches_solution_count(H, n):
    assert two_adic_partial_sum(H, n) == pytest.approx(float(two_adic_partial_sum_count(H, n)), abs=1e-9)


def test_odd_partial_sum_examples():
    assert odd_prime_partial_sum(7, 0, 3) == 1
    assert odd_prime_partial_sum(3, 2, 1) == Fraction(2, 3)
    value = odd_prime_partial_sum(3, 4, 9)
    assert value >= 1
    assert value == sum((a_term_odd_prime_power(3, h, 9) for h in range(1, 5)), Fraction(1))


@given(odd_primes, st.integers(0, 8), st.integers(1, 10**9))
@settings(max_examples=300, deadline=None)
def test_odd_partial_sum_floor(p, H, n):
    assert all(s >= 1 - Fraction(1, p) for s in odd_prime_partial_sums(p, H, n))


def test_odd_partial_sum_matches_direct_densities():
    for p in (3, 5, 7):
        for n in range(1, 60):
            total = sum(a_term_direct(p**h, n) for h in range(0, 5) if p**h <= 3000)
            H = max(h for h in range(0, 5) if p**h <= 3000)
            assert float(odd_prime_partial_sums(p, H, n)[-1]) == pytest.approx(total, abs=1e-9)


def test_max_exponent_exact_boundaries():
    assert max_exponent(2, 8) == 3
    assert max_exponent(2, 7.999) == 2
    assert max_exponent(3, 243) == 5
    assert max_exponent(5, 4) == 0
    for p in (2, 3, 5, 7):
        for W in range(1, 2000):
            H = max_exponent(p, W)
            assert p**H <= W < p ** (H + 1)


def test_additive_series_examples():
    assert singular_series_additive(5, 1.9) == 1
    expected = 1 + a_term_direct(2, 1) + a_term_direct(3, 1)
    assert singular_series_additive(1, 3) == pytest.approx(expected)
    with pytest.raises(ValueError):
        singular_series_additive(1, 10**5)


def test_additive_series_reported_for_seven_mod_eight():
    # the local obstruction at 2 shows up as small values; reported, not asserted
    values = [singular_series_additive(7, W) for W in (8, 32, 128)]
    assert all(math.isfinite(v) for v in values)


def test_multiplicative_series_examples():
    value, table = singular_series_multiplicative(3, 1.5)
    assert value == 1 and table.rows == []
    value, table = singular_series_multiplicative(1, 10)
    assert [(r.p, r.H) for r in table.rows] == [(2, 3), (3, 2), (5, 1), (7, 1)]
    assert table.rows[0].method is Method.DIRECT and table.rows[1].method is Method.CLOSED_FORM
    oracle = two_adic_partial_sum(3, 1) * float(
        odd_prime_partial_sum(3, 2, 1) * odd_prime_partial_sum(5, 1, 1) * odd_prime_partial_sum(7, 1, 1)
    )
    assert value == pytest.approx(oracle)


def test_multiplicative_series_floor_at_w100():
    floor = mertens_floor(100)
    expected = Fraction(1, 64)
    for p in primes_up_to(100)[1:]:
        expected *= 1 - Fraction(1, p)
    assert floor == expected
    for n in (1, 2, 3, 5, 6, 10, 21, 999_999):
        if is_three_square_eligible(n):
            value, _ = singular_series_multiplicative(n, 100)
            assert value >= float(floor)


def test_local_factor_rows_respect_floors():
    for n in range(1, 300):
        for row in local_factor_table(n, 50).rows:
            if row.p > 2:
                assert row.exact >= 1 - Fraction(1, row.p)
            elif is_three_square_eligible(n):
                assert row.partial_sum >= 2**-6


def test_truncation_modulus_and_extra_set():
    assert truncation_modulus(10) == 2520
    assert truncation_modulus(1) == 1
    assert extra_moduli(1) == []
    for W in (2, 5, 7, 10, 12):
        assert extra_moduli(W) == extra_moduli_scan(W)


def test_truncation_identity_examples():
    assert truncation_identity_check(5, 1) == 0
    assert truncation_identity_check(5, 10) < 1e-8
    assert truncation_identity_check(7, 10) < 1e-8


@given(st.integers(1, 10**7), st.sampled_from([2, 3, 4, 6, 8, 10, 12, 16]))
@settings(max_examples=60, deadline=None)
def test_truncation_identity_property(n, W):
    assert truncation_identity_check(n, W) < 1e-8


def test_truncation_modulus_limit():
    with pytest.raises(ValueError):
        truncation_identity_check(1, 30)


def test_gap_stats_examples():
    s = truncation_gap_stats(1e4, 1)
    assert s.mean_square == 0 and s.sample_count == 5000
    s = truncation_gap_stats(1e4, 5)
    assert s.mean_square >= 0 and math.isfinite(s.max_abs)
    assert s.sample_count == 5000 and s.evaluated == 5000


def test_gap_stats_baseline():
    base = BASELINES["truncation_gap"]
    s = truncation_gap_stats(base["X"], base["W"], stride=base["stride"])
    assert s.ratio == pytest.approx(base["ratio"], rel=0.01)
    assert s.max_abs == pytest.approx(base["max_abs"], rel=0.01)


def test_exception_count_is_reported():
    bad, seen = sseries_exception_count(1e4, 10, 0.1)
    assert 0 <= bad <= seen
    assert seen == sum(1 for n in range(5001, 10001) if is_three_square_eligible(n))


def test_invariant_violation_is_an_assertion():
    assert issubclass(InvariantViolation, AssertionError)


def test_asymptotic_w_is_tiny_at_desk_scale():
    assert 1.6 < asymptotic_w(1e6) < 1.8
