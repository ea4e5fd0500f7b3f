"""Exact elementary number theory on 64-bit integers.

Factorization, the multiplicative functions needed by the local density
formulas, Legendre symbols, two-square decompositions and the residue-class
bookkeeping that decides which integers are eligible for three squares.
Everything here is exact integer arithmetic.
"""

from __future__ import annotations

import enum
from array import array
import threading
from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt

import numpy as np

LIMIT_64 = 1 << 63
TRIAL_BOUND = 10**6
_SPF_LIMIT = 1 << 21

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


@dataclass(frozen=True)
class PrimeFactorization:
    """Ordered (prime, exponent) pairs; the factorization of 1 is empty."""

    factors: tuple[tuple[int, int], ...]

    def __iter__(self):
        return iter(self.factors)

    def __len__(self) -> int:
        return len(self.factors)

    def value(self) -> int:
        out = 1
        for p, e in self.factors:
            out *= p**e
        return out

    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]

    def exponent(self, p: int) -> int:
        for prime, e in self.factors:
            if prime == p:
                return e
        return 0

    def as_dict(self) -> dict[int, int]:
        return dict(self.factors)


# --- primes -----------------------------------------------------------------

_sieve_lock = threading.Lock()
_spf: np.ndarray | None = None
_small_primes: list[int] | None = None


def _smallest_prime_factors() -> np.ndarray:
    global _spf
    if _spf is None:
        with _sieve_lock:
            if _spf is None:
                spf = np.zeros(_SPF_LIMIT, dtype=np.int32)
                spf[1] = 1
                for p in range(2, isqrt(_SPF_LIMIT - 1) + 1):
                    if spf[p] == 0:
                        block = spf[p * p :: p]
                        block[block == 0] = p
                        spf[p] = p
                rest = np.flatnonzero(spf == 0)
                spf[rest] = rest
                spf.setflags(write=False)
                _spf = spf
    return _spf


_spf_arr: array | None = None


def _spf_array() -> array:
    # array.array indexing returns plain ints, much faster than numpy scalars
    global _spf_arr
    if _spf_arr is None:
        _spf_arr = array("i", _smallest_prime_factors().tobytes())
    return _spf_arr


def primes_up_to(n: int) -> list[int]:
    """All primes p <= n (sieve of Eratosthenes)."""
    if n < 2:
        return []
    flags = np.ones(n + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, isqrt(n) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return np.flatnonzero(flags).tolist()


def _trial_primes() -> list[int]:
    global _small_primes
    if _small_primes is None:
        with _sieve_lock:
            if _small_primes is None:
                _small_primes = primes_up_to(TRIAL_BOUND)
    return _small_primes


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin; exact for every n < 3.3 * 10**24."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _rho(n: int) -> int:
    """A nontrivial factor of the odd composite n (Brent's variant)."""
    for c in range(1, 200):
        y, r, q, g = 2, 1, 1, 1
        x = ys = 2
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(128, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += 128
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"rho failed to split {n}")


def _split_large(n: int, out: dict[int, int]) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    r = isqrt(n)
    if r * r == n:
        _split_large(r, out)
        _split_large(r, out)
        return
    d = _rho(n)
    _split_large(d, out)
    _split_large(n // d, out)


@lru_cache(maxsize=1 << 16)
def factorize(n: int) -> PrimeFactorization:
    """Prime factorization of 1 <= n < 2**63.

    Small inputs read a smallest-prime-factor table; larger ones use trial
    division to 10**6 followed by Miller-Rabin and rho splitting.
    """
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)):
        raise TypeError("factorize expects an integer")
    n = int(n)
    if n < 1:
        raise ValueError(f"factorize requires n >= 1, got {n}")
    if n >= LIMIT_64:
        raise ValueError("factorize requires n < 2**63")
    out: dict[int, int] = {}
    if n < _SPF_LIMIT:
        spf = _spf_array()
        while n > 1:
            p = spf[n]
            out[p] = out.get(p, 0) + 1
            n //= p
        return PrimeFactorization(tuple(sorted(out.items())))
    m = n
    for p in _trial_primes():
        if p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out[p] = e
    if m > 1:
        if m <= TRIAL_BOUND * TRIAL_BOUND or is_prime(m):
            # m has no factor below min(10**6, sqrt(m)), so it is prime
            out[m] = out.get(m, 0) + 1
        else:
            _split_large(m, out)
    return PrimeFactorization(tuple(sorted(out.items())))


def valuation(n: int, p: int) -> int:
    """Exponent of p in n; n = 0 is reported as a very large valuation."""
    if n == 0:
        return 1 << 30
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


# --- multiplicative functions ----------------------------------------------


def moebius(n: int) -> int:
    f = factorize(n)
    if any(e > 1 for _, e in f):
        return 0
    return -1 if len(f) % 2 else 1


def euler_phi(n: int) -> int:
    out = 1
    for p, e in factorize(n):
        out *= (p - 1) * p ** (e - 1)
    return out


def divisors(n: int) -> list[int]:
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def legendre(b: int, p: int) -> int:
    """Legendre symbol (b/p) for an odd prime p, by Euler's criterion."""
    if p == 2 or not is_prime(p):
        raise ValueError(f"legendre requires an odd prime, got {p}")
    r = pow(b % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


# --- sums of two squares ----------------------------------------------------


def sqrt_minus_one(p: int) -> int:
    """Some x with x**2 = -1 (mod p), for a prime p = 1 (mod 4)."""
    for c in range(2, p):
        x = pow(c, (p - 1) // 4, p)
        if x * x % p == p - 1:
            return x
    raise ValueError(f"{p} is not a prime congruent to 1 mod 4")


def prime_two_squares(p: int) -> tuple[int, int]:
    """(a, b) with a**2 + b**2 = p for a prime p = 1 (mod 4), by Cornacchia."""
    x = sqrt_minus_one(p)
    a, b = p, x
    limit = isqrt(p)
    while b > limit:
        a, b = b, a % b
    c = isqrt(p - b * b)
    if b * b + c * c != p:
        raise ArithmeticError(f"descent failed for {p}")
    return b, c


def _gauss_mul(z: tuple[int, int], w: tuple[int, int]) -> tuple[int, int]:
    return z[0] * w[0] - z[1] * w[1], z[0] * w[1] + z[1] * w[0]


def _gauss_pow(z: tuple[int, int], k: int) -> tuple[int, int]:
    out = (1, 0)
    for _ in range(k):
        out = _gauss_mul(out, z)
    return out


def two_square_decompositions(m: int, allow_zero: bool = True) -> list[tuple[int, int]]:
    """All unordered pairs a <= b with a**2 + b**2 = m, sorted by a.

    Built from the Gaussian-integer factorization of m. Pairs with a = 0 are
    dropped unless ``allow_zero`` is set.
    """
    if m < 0 or m >= LIMIT_64:
        raise ValueError("two_square_decompositions requires 0 <= m < 2**63")
    if m == 0:
        return [(0, 0)] if allow_zero else []
    scale = 1
    gauss_parts: list[list[tuple[int, int]]] = []
    for p, e in factorize(m):
        if p == 2:
            gauss_parts.append([_gauss_pow((1, 1), e)])
        elif p % 4 == 3:
            if e % 2:
                return []
            scale *= p ** (e // 2)
        else:
            a, b = prime_two_squares(p)
            pi, pibar = (a, b), (a, -b)
            gauss_parts.append(
                [_gauss_mul(_gauss_pow(pi, k), _gauss_pow(pibar, e - k)) for k in range(e + 1)]
            )
    zs = [(scale, 0)]
    for part in gauss_parts:
        zs = [_gauss_mul(z, w) for z in zs for w in part]
    pairs = set()
    for x, y in zs:
        x, y = abs(x), abs(y)
        pairs.add((min(x, y), max(x, y)))
    out = sorted(pairs)
    if not allow_zero:
        out = [pr for pr in out if pr[0] > 0]
    return out


def is_sum_of_two_squares(m: int) -> bool:
    if m < 0:
        return False
    if m == 0:
        return True
    return all(p % 4 != 3 or e % 2 == 0 for p, e in factorize(m))


def r2(m: int) -> int:
    """Number of (x, y) in Z**2 with x**2 + y**2 = m."""
    if m < 0:
        return 0
    if m == 0:
        return 1
    if m < _SPF_LIMIT:
        return _r2_small(m)
    out = 4
    for p, e in factorize(m):
        if p % 4 == 1:
            out *= e + 1
        elif p % 4 == 3 and e % 2:
            return 0
    return out


def _r2_small(m: int) -> int:
    spf = _spf_array()
    out = 4
    while m > 1:
        p = int(spf[m])
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        if p & 3 == 1:
            out *= e + 1
        elif p & 3 == 3 and e & 1:
            return 0
    return out


def ordered_two_square_count(m: int, allow_zero: bool = False) -> int:
    """Ordered pairs (x, y) of non-negative (or positive) integers with x**2 + y**2 = m.

    A pair (a, b) with 0 < a < b counts twice, (a, a) once, and (0, b)
    contributes (0, b), (b, 0) only under ``allow_zero``.
    """
    if m < 0:
        return 0
    if m == 0:
        return 1 if allow_zero else 0
    total = r2(m)
    if total == 0:
        return 0
    s = isqrt(m)
    square = s * s == m
    # the signed count covers each positive pair 4 times and each axis point once
    positive = (total - (4 if square else 0)) // 4
    return positive + (2 if square and allow_zero else 0)


# --- eligibility -------------------------------------------------------------


class Eligibility(str, enum.Enum):
    THREE_SQUARE_ELIGIBLE = "ThreeSquareEligible"
    DIVISIBLE_BY_4 = "DivisibleBy4"
    SEVEN_MOD_8 = "SevenMod8"
    FOUR_SQUARE_ELIGIBLE = "FourSquareEligible"
    EIGHT_DIVIDES_N = "EightDividesN"
    GAUSS_ELIGIBLE = "GaussEligible"
    GAUSS_EXCLUDED = "GaussExcluded"


def is_three_square_eligible(n: int) -> bool:
    return n % 4 != 0 and n % 8 != 7


def is_gauss_excluded(n: int) -> bool:
    """True when n = 4**l * (8k + 7)."""
    if n <= 0:
        return False
    while n % 4 == 0:
        n //= 4
    return n % 8 == 7


def classify(n: int) -> frozenset[Eligibility]:
    if n < 1:
        raise ValueError("classify requires n >= 1")
    tags = set()
    if is_three_square_eligible(n):
        tags.add(Eligibility.THREE_SQUARE_ELIGIBLE)
    if n % 4 == 0:
        tags.add(Eligibility.DIVISIBLE_BY_4)
    if n % 8 == 7:
        tags.add(Eligibility.SEVEN_MOD_8)
    if n % 8 == 0:
        tags.add(Eligibility.EIGHT_DIVIDES_N)
    else:
        tags.add(Eligibility.FOUR_SQUARE_ELIGIBLE)
    if is_gauss_excluded(n):
        tags.add(Eligibility.GAUSS_EXCLUDED)
    else:
        tags.add(Eligibility.GAUSS_ELIGIBLE)
    return frozenset(tags)

