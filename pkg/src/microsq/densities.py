"""Local densities A(q; n) and the two truncations of the singular series.

A(q; n) = sum over a mod q, (a, q) = 1, of q^-3 S(q, a)^3 e(-n a / q).

Odd prime powers have exact rational closed forms; powers of two are summed
from the definition. The additive truncation sums A(q; n) over q <= W, the
multiplicative one multiplies per-prime partial sums up to p^H(p) <= W.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product

import numpy as np

from .arith import euler_phi, factorize, is_three_square_eligible, legendre, primes_up_to, valuation
from .expsums import e_frac, gauss_sum_table

IMAG_TOL = 1e-9
TWO_ADIC_FLOOR = 2.0**-6


class InvariantViolation(AssertionError):
    """A proven inequality failed numerically, which points to a bug."""


class Method(str, enum.Enum):
    CLOSED_FORM = "ClosedForm"
    DIRECT = "Direct"


def asymptotic_w(X: float) -> float:
    """The asymptotic truncation W = (log X)^(1/5); tiny at desk scale."""
    return math.log(X) ** 0.2


# --- single terms -------------------------------------------------------------


@lru_cache(maxsize=64)
def _coprime_residues(q: int) -> np.ndarray:
    a = np.arange(1, q + 1, dtype=np.int64)
    return a[np.gcd(a, q) == 1]


@lru_cache(maxsize=64)
def _cubed_gauss_sums(q: int) -> np.ndarray:
    a = _coprime_residues(q)
    return gauss_sum_table(q)[a % q] ** 3


@lru_cache(maxsize=1 << 17)
def _a_term_direct_cached(q: int, r: int) -> float:
    a = _coprime_residues(q)
    total = np.sum(_cubed_gauss_sums(q) * e_frac(-r * a, q)) / float(q) ** 3
    if abs(total.imag) > IMAG_TOL:
        raise InvariantViolation(f"A({q}; n = {r} mod {q}) has imaginary part {total.imag:.3e}")
    return float(total.real)


def a_term_direct(q: int, n: int) -> float:
    """A(q; n) summed over reduced residues a mod q straight from the definition."""
    if q < 1:
        raise ValueError("q must be positive")
    return _a_term_direct_cached(q, n % q)


def a_term_odd_prime_power(p: int, h: int, n: int) -> Fraction:
    """A(p^h; n) for an odd prime p, exactly.

    Even h = 2l: (p-1)/p^(l+1) when p^2l | n, -1/p^(l+1) when p^(2l-1) || n,
    otherwise 0. Odd h = 2l+1: chi_p(-n/p^2l)/p^(l+1) when p^2l || n, else 0.
    """
    if p == 2:
        raise ValueError("a_term_odd_prime_power needs an odd prime")
    if h == 0:
        return Fraction(1)
    nu = valuation(n, p)
    l, odd = divmod(h, 2)
    if not odd:
        if nu >= 2 * l:
            return Fraction(p - 1, p ** (l + 1))
        if nu == 2 * l - 1:
            return Fraction(-1, p ** (l + 1))
        return Fraction(0)
    if nu == 2 * l:
        return Fraction(legendre(-(n // p ** (2 * l)), p), p ** (l + 1))
    return Fraction(0)


def a_term(q: int, n: int) -> float:
    """A(q; n) as a product over the prime powers exactly dividing q."""
    if q < 1:
        raise ValueError("q must be positive")
    out = 1.0
    for p, k in factorize(q):
        if p == 2:
            out *= a_term_direct(2**k, n)
        else:
            out *= float(a_term_odd_prime_power(p, k, n))
        if out == 0.0:
            break
    return out


# --- per-prime partial sums -----------------------------------------------------


def max_exponent(p: int, W: float) -> int:
    """Largest H with p^H <= W, by repeated multiplication."""
    H, power = 0, p
    while power <= W:
        H += 1
        power *= p
    return H


def odd_prime_partial_sums(p: int, H: int, n: int) -> list[Fraction]:
    """[sum_{h<=k} A(p^h; n) for k = 0..H], exact."""
    out = [Fraction(1)]
    for h in range(1, H + 1):
        out.append(out[-1] + a_term_odd_prime_power(p, h, n))
    return out


def odd_prime_partial_sum(p: int, H: int, n: int) -> Fraction:
    value = odd_prime_partial_sums(p, H, n)[-1]
    if value < 1 - Fraction(1, p):
        raise InvariantViolation(f"odd-prime partial sum {value} < 1 - 1/{p} (p={p}, H={H}, n={n})")
    return value


def two_adic_partial_sum(H: int, n: int) -> float:
    """sum_{h<=H} A(2^h; n) from the definition.

    For H >= 3 and n eligible the value must be at least 2^-6.
    """
    if H < 0 or H > 20:
        raise ValueError("two_adic_partial_sum needs 0 <= H <= 20")
    value = 1.0
    for h in range(1, H + 1):
        value += a_term_direct(2**h, n)
    if H >= 3 and is_three_square_eligible(n) and value < TWO_ADIC_FLOOR:
        raise InvariantViolation(f"2-adic partial sum {value} < 2^-6 (H={H}, n={n})")
    return value


def two_adic_partial_sum_count(H: int, n: int) -> Fraction:
    """Independent route: #{x mod 2^H : x1^2 + x2^2 + x3^2 = n} / 4^H."""
    m = 1 << H
    sq = np.bincount((np.arange(m, dtype=np.int64) ** 2) % m, minlength=m)
    pair = np.zeros(m, dtype=np.int64)
    for s, c in enumerate(sq):
        if c:
            pair += c * np.roll(sq, s)
    target = n % m
    total = sum(int(sq[s]) * int(pair[(target - s) % m]) for s in range(m) if sq[s])
    return Fraction(total, m * m)


# --- singular series ------------------------------------------------------------


@dataclass
class LocalFactorRow:
    p: int
    H: int
    partial_sum: float
    method: Method
    exact: Fraction | None = None


@dataclass
class LocalFactorTable:
    n: int
    W: float
    rows: list[LocalFactorRow] = field(default_factory=list)

    @property
    def value(self) -> float:
        return math.prod(r.partial_sum for r in self.rows)


def singular_series_additive(n: int, W: float) -> float:
    """sum_{1 <= q <= W} A(q; n)."""
    if W > 10**4:
        raise ValueError("singular_series_additive supports W <= 10^4")
    return math.fsum(a_term(q, n) for q in range(1, int(math.floor(W)) + 1))


@lru_cache(maxsize=64)
def mertens_floor(W: float) -> Fraction:
    """2^-6 prod_{2 < p <= W} (1 - 1/p), exactly."""
    out = Fraction(1, 64)
    for p in primes_up_to(int(math.floor(W))):
        if p > 2:
            out *= 1 - Fraction(1, p)
    return out


def local_factor_table(n: int, W: float) -> LocalFactorTable:
    table = LocalFactorTable(n=n, W=W)
    for p in primes_up_to(int(math.floor(W))):
        H = max_exponent(p, W)
        if p == 2:
            table.rows.append(LocalFactorRow(2, H, two_adic_partial_sum(H, n), Method.DIRECT))
        else:
            exact = odd_prime_partial_sum(p, H, n)
            table.rows.append(LocalFactorRow(p, H, float(exact), Method.CLOSED_FORM, exact))
    return table


def singular_series_multiplicative(n: int, W: float) -> tuple[float, LocalFactorTable]:
    """prod_{p <= W} sum_{h <= H(p)} A(p^h; n) together with its factor table."""
    if W > 10**4:
        raise ValueError("singular_series_multiplicative supports W <= 10^4")
    table = local_factor_table(n, W)
    value = table.value
    if W >= 8 and is_three_square_eligible(n):
        floor = mertens_floor(W)
        # compare exactly: odd factors are exact rationals, the 2-adic factor is a float
        odd = math.prod((r.exact for r in table.rows if r.exact is not None), start=Fraction(1))
        two = Fraction(table.rows[0].partial_sum)
        if two * odd < floor:
            raise InvariantViolation(f"S*({n}; {W}) = {value} below 2^-6 prod(1 - 1/p)")
    return value, table


# --- comparing the truncations ----------------------------------------------------


def truncation_modulus(W: float) -> int:
    """Q = prod_{p <= W} p^H(p), i.e. lcm(1, ..., floor(W))."""
    return math.prod(p ** max_exponent(p, W) for p in primes_up_to(int(math.floor(W))))


def extra_moduli(W: float) -> list[int]:
    """The set of q in (W, Q] whose prime-power parts p^h all satisfy p^h <= W."""
    primes = primes_up_to(int(math.floor(W)))
    choices = [[p**h for h in range(max_exponent(p, W) + 1)] for p in primes]
    out = [math.prod(c) for c in product(*choices)] if primes else [1]
    return sorted(q for q in out if q > W)


def extra_moduli_scan(W: float) -> list[int]:
    """Same set as :func:`extra_moduli`, found by testing every q in (W, Q]."""
    Q = truncation_modulus(W)
    out = []
    for q in range(int(math.floor(W)) + 1, Q + 1):
        if all(p**h <= W for p, h in factorize(q)):
            out.append(q)
    return out


def truncation_identity_check(n: int, W: float) -> float:
    """|S*(n; W) - S(n; W) - sum_{q in extra set} A(q; n)|."""
    if truncation_modulus(W) > 10**7:
        raise ValueError("truncation modulus too large to enumerate")
    star, _ = singular_series_multiplicative(n, W)
    additive = singular_series_additive(n, W)
    extra = math.fsum(a_term(q, n) for q in extra_moduli(W))
    return abs(star - additive - extra)


@dataclass
class TruncationGapSample:
    X: float
    W: float
    mean_square: float
    max_abs: float
    sample_count: int
    evaluated: int
    ratio: float


def truncation_gap(n: int, W: float) -> float:
    star, _ = singular_series_multiplicative(n, W)
    return star - singular_series_additive(n, W)


def truncation_gap_stats(X: float, W: float, stride: int = 1) -> TruncationGapSample:
    """Mean of |S*(n; W) - S(n; W)|^2 over n in (X/2, X], optionally strided.

    ``ratio`` compares the extrapolated sum over the full range with X / W.
    """
    if W > 20:
        raise ValueError("truncation_gap_stats supports W <= 20")
    lo, hi = int(math.floor(X / 2)) + 1, int(math.floor(X))
    Q = truncation_modulus(W)
    cache: dict[int, float] = {}
    squares = []
    for n in range(lo, hi + 1, max(1, stride)):
        key = n % Q
        if key not in cache:
            cache[key] = truncation_gap(n, W)
        squares.append(cache[key] ** 2)
    arr = np.asarray(squares)
    mean_square = float(np.sum(arr) / arr.size) if arr.size else 0.0
    count = hi - lo + 1
    max_abs = float(np.sqrt(np.max(arr))) if arr.size else 0.0
    ratio = mean_square * count / (X / W)
    return TruncationGapSample(X, W, mean_square, max_abs, count, int(arr.size), ratio)


def sseries_exception_count(X: float, W: float, delta: float, stride: int = 1) -> tuple[int, int]:
    """(#eligible n in (X/2, X] with S(n; W) < delta / log W, #examined)."""
    lo, hi = int(math.floor(X / 2)) + 1, int(math.floor(X))
    threshold = delta / math.log(W)
    Q = truncation_modulus(W)
    cache: dict[int, float] = {}
    bad = seen = 0
    for n in range(lo, hi + 1, max(1, stride)):
        if not is_three_square_eligible(n):
            continue
        key = n % Q
        if key not in cache:
            cache[key] = singular_series_additive(n, W)
        seen += 1
        bad += cache[key] < threshold
    return bad, seen


def a_term_bound(q: int) -> float:
    """phi(q) (2q)^(3/2) / q^3, implied by |S(q, a)|^2 <= 2q."""
    return euler_phi(q) * (2.0 * q) ** 1.5 / float(q) ** 3
