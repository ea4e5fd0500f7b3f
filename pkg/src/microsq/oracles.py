"""Brute-force reference computations.

Deliberately naive: loops and enumeration with no number theory beyond the
definitions. They back the test suite and the ``verify`` command, and must
never call the fast paths they are used to check.
"""

from __future__ import annotations

from math import isqrt

import numpy as np


def trial_factor(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_prime_trial(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def moebius_phi_sieve(limit: int) -> tuple[np.ndarray, np.ndarray]:
    """mu(n) and phi(n) for 0 <= n <= limit by a linear sieve."""
    mu = np.ones(limit + 1, dtype=np.int64)
    phi = np.arange(limit + 1, dtype=np.int64)
    is_comp = np.zeros(limit + 1, dtype=bool)
    for p in range(2, limit + 1):
        if is_comp[p]:
            continue
        is_comp[2 * p :: p] = True
        mu[p::p] *= -1
        mu[p * p :: p * p] = 0
        phi[p::p] -= phi[p::p] // p
    mu[0] = 0
    return mu, phi


def squares_mod(p: int) -> set[int]:
    return {(r * r) % p for r in range(1, p)}


def two_square_pairs(m: int, allow_zero: bool = True) -> list[tuple[int, int]]:
    out = []
    a = 0 if allow_zero else 1
    while 2 * a * a <= m:
        for b in range(a, isqrt(m) + 1):
            if a * a + b * b == m:
                out.append((a, b))
        a += 1
    return out


def count_triples(n: int, Y: int, allow_zero: bool = False) -> int:
    """Ordered (x1, x2, x3) with x1^2 + x2^2 + x3^2 = n and x3 <= Y, by three loops."""
    start = 0 if allow_zero else 1
    total = 0
    r = isqrt(n)
    for x3 in range(start, min(Y, r) + 1):
        for x1 in range(start, r + 1):
            for x2 in range(start, r + 1):
                if x1 * x1 + x2 * x2 + x3 * x3 == n:
                    total += 1
    return total


def count_triples_table(limit: int, Y: int | None) -> np.ndarray:
    """Ordered positive triple counts for every n <= limit, x3 <= Y (None: unbounded).

    Loops over x3 and x1 and marks every x2 at once; still a plain
    enumeration of all triples.
    """
    r = isqrt(limit)
    top = r if Y is None else min(Y, r)
    counts = np.zeros(limit + 1, dtype=np.int64)
    x2 = np.arange(1, r + 1, dtype=np.int64)
    for x3 in range(1, top + 1):
        for x1 in range(1, r + 1):
            s = x3 * x3 + x1 * x1 + x2 * x2
            s = s[s <= limit]
            if s.size == 0:
                break
            np.add.at(counts, s, 1)
    return counts


def integer_representable_table(limit: int) -> np.ndarray:
    """Whether n = x^2 + y^2 + z^2 has any integer solution, for 0 <= n <= limit."""
    r = isqrt(limit)
    hit = np.zeros(limit + 1, dtype=bool)
    z = np.arange(0, r + 1, dtype=np.int64)
    for x in range(0, r + 1):
        for y in range(x, r + 1):
            s = x * x + y * y + z[y:] * z[y:]
            hit[s[s <= limit]] = True
    return hit


def count_quads(n: int, Y: int) -> int:
    total = 0
    r = isqrt(n)
    for x3 in range(1, min(Y, r) + 1):
        for x4 in range(1, min(Y, r) + 1):
            for x1 in range(1, r + 1):
                for x2 in range(1, r + 1):
                    if x1 * x1 + x2 * x2 + x3 * x3 + x4 * x4 == n:
                        total += 1
    return total


def count_window_triples(n: int, P: int, Y: int) -> int:
    """#{(x1, x2, x3) : P/2 < x1, x2 <= P, 1 <= x3 <= Y, sum of squares = n}."""
    total = 0
    for x1 in range(P // 2 + 1, P + 1):
        for x2 in range(P // 2 + 1, P + 1):
            rest = n - x1 * x1 - x2 * x2
            if rest < 1:
                continue
            x3 = isqrt(rest)
            if x3 * x3 == rest and x3 <= Y:
                total += 1
    return total


def sphere_points(n: int) -> list[tuple[int, int, int]]:
    r = isqrt(n)
    out = []
    for x in range(-r, r + 1):
        for y in range(-r, r + 1):
            rest = n - x * x - y * y
            if rest < 0:
                continue
            z = isqrt(rest)
            if z * z == rest:
                out.append((x, y, z))
                if z:
                    out.append((x, y, -z))
    return sorted(out)


def two_square_sums_up_to(limit: int) -> list[int]:
    """Integers 1..limit of the form a^2 + b^2 with a, b >= 0."""
    hit = set()
    a = 0
    while a * a <= limit:
        b = a
        while a * a + b * b <= limit:
            hit.add(a * a + b * b)
            b += 1
        a += 1
    hit.discard(0)
    return sorted(hit)


def pair_sum_collisions(values: np.ndarray) -> int:
    """#{(a, b, c, d) in values^4 : a + b = c + d}, by counting pair sums."""
    sums = (values[:, None] + values[None, :]).ravel()
    counts = np.bincount(sums)
    return int(np.sum(counts.astype(np.int64) ** 2))
