"""Representations n = x1^2 + x2^2 + x3^2 (and four squares) with small x3.

Counts follow the R(n; Y) convention: x in N^3 with N = {1, 2, ...},
(x1, x2) ordered, x3 designated and at most Y. ``allow_zero`` widens every
coordinate to N u {0}; ``signed`` counts integer points with |x3| <= Y.

Scalar functions answer one n at a time; the ``*_table`` functions compute
the same quantities for a whole block of n with numpy and back the scans.
"""

from __future__ import annotations

from math import isqrt
from typing import NamedTuple

import numpy as np

from .arith import ordered_two_square_count, r2, two_square_decompositions

LIMIT_62 = 1 << 62


class RepTriple(NamedTuple):
    x1: int
    x2: int
    x3: int


class RepQuad(NamedTuple):
    x1: int
    x2: int
    x3: int
    x4: int


def _unordered_two_square_count(m: int, allow_zero: bool) -> int:
    ordered = ordered_two_square_count(m, allow_zero)
    if ordered == 0:
        return 0
    half = m // 2
    s = isqrt(half)
    diagonal = m % 2 == 0 and s * s == half and (m > 0 or allow_zero)
    return (ordered + diagonal) // 2


def count_reps(
    n: int,
    Y: int,
    ordered: bool = True,
    allow_zero: bool = False,
    signed: bool = False,
) -> int:
    """R(n; Y): representations of n as x1^2 + x2^2 + x3^2 with x3 <= Y."""
    if n < 0 or n >= LIMIT_62:
        raise ValueError("count_reps requires 0 <= n < 2**62")
    if Y < 0:
        return 0
    top = min(Y, isqrt(n))
    if signed:
        return sum(r2(n - y * y) * (1 if y == 0 else 2) for y in range(0, top + 1))
    start = 0 if allow_zero else 1
    if ordered:
        return sum(ordered_two_square_count(n - y * y, allow_zero) for y in range(start, top + 1))
    return sum(_unordered_two_square_count(n - y * y, allow_zero) for y in range(start, top + 1))


def enumerate_reps(n: int, Y: int, allow_zero: bool = False) -> list[RepTriple]:
    """Every (x1, x2, x3) with x1 <= x2 and x3 <= Y, sorted."""
    if n < 0 or n >= LIMIT_62:
        raise ValueError("enumerate_reps requires 0 <= n < 2**62")
    out = []
    start = 0 if allow_zero else 1
    for y in range(start, min(Y, isqrt(n)) + 1):
        for a, b in two_square_decompositions(n - y * y, allow_zero=allow_zero):
            out.append(RepTriple(a, b, y))
    return sorted(out)


def min_microsquare(n: int) -> int | None:
    """Least y >= 1 such that n - y^2 is a sum of two positive squares."""
    y = 1
    while y * y <= n - 2:
        if ordered_two_square_count(n - y * y) > 0:
            return y
        y += 1
    return None


def count_reps_four(n: int, Y: int, allow_zero: bool = False) -> int:
    """R_0(n; Y): x1^2 + x2^2 + x3^2 + x4^2 = n with max(x3, x4) <= Y."""
    if n < 0 or n >= LIMIT_62:
        raise ValueError("count_reps_four requires 0 <= n < 2**62")
    start = 0 if allow_zero else 1
    top = min(Y, isqrt(n))
    total = 0
    for y3 in range(start, top + 1):
        rest = n - y3 * y3
        for y4 in range(start, min(top, isqrt(rest)) + 1):
            total += ordered_two_square_count(rest - y4 * y4, allow_zero)
    return total


def enumerate_reps_four(n: int, Y: int) -> list[RepQuad]:
    out = []
    top = min(Y, isqrt(n))
    for y3 in range(1, top + 1):
        for y4 in range(1, top + 1):
            m = n - y3 * y3 - y4 * y4
            if m < 2:
                continue
            for a, b in two_square_decompositions(m, allow_zero=False):
                out.append(RepQuad(a, b, y3, y4))
    return sorted(out)


def min_microsquare_four(n: int) -> int | None:
    """Least Y with R_0(n; Y) > 0."""
    y = 1
    while y * y + 3 <= n:
        rest = n - y * y
        for other in range(1, y + 1):
            if ordered_two_square_count(rest - other * other) > 0:
                return y
        y += 1
    return None


# --- block computations -------------------------------------------------------


def two_square_counts(lo: int, hi: int, allow_zero: bool = False) -> np.ndarray:
    """Ordered pair counts c[m - lo] = #{(a, b) : a^2 + b^2 = m} for lo <= m < hi."""
    lo = max(lo, 0)
    if hi <= lo:
        return np.zeros(0, dtype=np.int64)
    start = 0 if allow_zero else 1
    top = isqrt(hi - 1)
    pieces = []
    for a in range(start, top + 1):
        rem_lo = lo - a * a
        b_lo = max(start, isqrt(rem_lo - 1) + 1 if rem_lo > 0 else 0)
        b_hi = isqrt(hi - 1 - a * a)
        if b_hi >= b_lo:
            b = np.arange(b_lo, b_hi + 1, dtype=np.int64)
            pieces.append(a * a + b * b - lo)
    if not pieces:
        return np.zeros(hi - lo, dtype=np.int64)
    return np.bincount(np.concatenate(pieces), minlength=hi - lo).astype(np.int64)


def rep_count_table(lo: int, hi: int, Y: int) -> np.ndarray:
    """R(n; Y) for lo <= n < hi (ordered, positive coordinates)."""
    Y = min(Y, isqrt(max(hi - 1, 0)))
    base = max(lo - Y * Y, 0)
    c2 = two_square_counts(base, hi)
    out = np.zeros(hi - lo, dtype=np.int64)
    n = np.arange(lo, hi, dtype=np.int64)
    for y in range(1, Y + 1):
        m = n - y * y
        ok = m >= base
        out[ok] += c2[m[ok] - base]
    return out


def rep_count_four_table(lo: int, hi: int, Y: int) -> np.ndarray:
    """R_0(n; Y) for lo <= n < hi."""
    Y = min(Y, isqrt(max(hi - 1, 0)))
    weights: dict[int, int] = {}
    for y3 in range(1, Y + 1):
        for y4 in range(1, Y + 1):
            s = y3 * y3 + y4 * y4
            weights[s] = weights.get(s, 0) + 1
    base = max(lo - 2 * Y * Y, 0)
    c2 = two_square_counts(base, hi)
    out = np.zeros(hi - lo, dtype=np.int64)
    n = np.arange(lo, hi, dtype=np.int64)
    for s, w in sorted(weights.items()):
        m = n - s
        ok = m >= base
        out[ok] += w * c2[m[ok] - base]
    return out


VECTOR_REACH = 256


def _positive_table(lo: int, hi: int, back: int) -> tuple[int, np.ndarray]:
    base = max(lo - back, 0)
    return base, two_square_counts(base, hi) > 0


def _lookup(table: np.ndarray, base: int, m: np.ndarray) -> np.ndarray:
    out = np.zeros(m.size, dtype=bool)
    ok = m >= max(base, 2)
    out[ok] = table[m[ok] - base]
    return out


def min_microsquare_table(lo: int, hi: int) -> np.ndarray:
    """min_microsquare(n) for lo <= n < hi, with 0 standing for "absent".

    Vectorised for y <= VECTOR_REACH; the rare n still open after that go
    through the scalar routine.
    """
    out = np.zeros(hi - lo, dtype=np.int64)
    if hi <= lo:
        return out
    base, positive = _positive_table(lo, hi, VECTOR_REACH**2)
    pending = np.arange(lo, hi, dtype=np.int64)
    stripped = pending.copy()
    for _ in range(64):
        four = stripped % 4 == 0
        if not four.any():
            break
        stripped[four] //= 4
    pending = pending[stripped % 8 != 7]  # no representation at all
    y = 1
    while pending.size and y <= VECTOR_REACH and y * y <= hi:
        hit = _lookup(positive, base, pending - y * y)
        out[pending[hit] - lo] = y
        pending = pending[~hit]
        y += 1
    for n in pending:
        out[n - lo] = min_microsquare(int(n)) or 0
    return out


def min_microsquare_four_table(lo: int, hi: int) -> np.ndarray:
    """Least Y with R_0(n; Y) > 0, for lo <= n < hi; 0 when none exists."""
    out = np.zeros(hi - lo, dtype=np.int64)
    if hi <= lo:
        return out
    base, positive = _positive_table(lo, hi, 2 * VECTOR_REACH**2)
    pending = np.arange(lo, hi, dtype=np.int64)
    y = 1
    while pending.size and y <= VECTOR_REACH and y * y + 3 <= hi:
        # newly allowed pairs have max(y3, y4) = y
        hit = np.zeros(pending.size, dtype=bool)
        for other in range(1, y + 1):
            hit |= _lookup(positive, base, pending - y * y - other * other)
        out[pending[hit] - lo] = y
        pending = pending[~hit]
        y += 1
    for n in pending:
        out[n - lo] = min_microsquare_four(int(n)) or 0
    return out
