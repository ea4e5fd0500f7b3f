"""Integral points on the sphere x^2 + y^2 + z^2 = n and their minimum spacing.

Distances are taken between the normalised points x / sqrt(n). For distinct
points u, v the Euclidean distance is sqrt(2 (n - <u, v>) / n), so the whole
computation reduces to the largest integer inner product g below n.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from itertools import permutations, product
from math import isqrt

import numpy as np

from .arith import two_square_decompositions

LIMIT = 10**10
ALL_PAIRS_LIMIT = 5000


class Metric(str, enum.Enum):
    EUCLID = "euclid"
    SQUARED = "sq"


def _signed_permutations() -> np.ndarray:
    mats = []
    for perm in permutations(range(3)):
        for signs in product((1, -1), repeat=3):
            m = np.zeros((3, 3), dtype=np.int64)
            for row, (col, s) in enumerate(zip(perm, signs)):
                m[row, col] = s
            mats.append(m)
    return np.stack(mats)


GROUP = _signed_permutations()


def orbit_size(x: int, y: int, z: int) -> int:
    """Number of distinct signed permutations of (x, y, z)."""
    distinct = len({x, y, z})
    perms = {3: 6, 2: 3, 1: 1}[distinct]
    return perms * 2 ** sum(1 for c in (x, y, z) if c)


def canonical_points(n: int) -> np.ndarray:
    """All (x, y, z) with 0 <= x <= y <= z and x^2 + y^2 + z^2 = n."""
    if n < 0 or n > LIMIT:
        raise ValueError(f"canonical_points supports 0 <= n <= {LIMIT}")
    out = []
    z_lo = isqrt(max(n - 1, 0) // 3)
    for z in range(z_lo, isqrt(n) + 1):
        if 3 * z * z < n:
            continue
        for x, y in two_square_decompositions(n - z * z, allow_zero=True):
            if y <= z:
                out.append((x, y, z))
    return np.array(sorted(out), dtype=np.int64).reshape(-1, 3)


def expand_orbits(reps: np.ndarray) -> np.ndarray:
    """Images of every row under the 48 signed permutations (with repeats)."""
    return np.einsum("gij,kj->kgi", GROUP, reps).reshape(-1, 3)


@dataclass
class SpherePointSet:
    n: int
    points: np.ndarray

    @property
    def count(self) -> int:
        return int(self.points.shape[0])


def lattice_points(n: int) -> SpherePointSet:
    reps = canonical_points(n)
    if reps.size == 0:
        return SpherePointSet(n, np.zeros((0, 3), dtype=np.int64))
    return SpherePointSet(n, np.unique(expand_orbits(reps), axis=0))


def point_count(n: int) -> int:
    return sum(orbit_size(*map(int, r)) for r in canonical_points(n))


def _max_inner_all_pairs(points: np.ndarray, n: int) -> int:
    gram = points @ points.T
    np.fill_diagonal(gram, np.iinfo(np.int64).min)
    return int(gram.max())


def _max_inner_orbits(reps: np.ndarray, n: int) -> int:
    # the group preserves inner products, so one point per orbit suffices
    # on the left; repeated images on the right are harmless, and the
    # only partner with inner product n is the point itself
    gram = reps @ expand_orbits(reps).T
    gram[gram == n] = np.iinfo(np.int64).min
    return int(gram.max())


def max_inner_product(n: int, method: str = "auto") -> int | None:
    """Largest <u, v> over distinct lattice points u, v on the sphere of radius sqrt(n)."""
    reps = canonical_points(n)
    if reps.size == 0:
        return None
    if method == "auto":
        method = "orbits"
    if method == "all-pairs":
        pts = lattice_points(n).points
        if pts.shape[0] < 2:
            return None
        if pts.shape[0] > ALL_PAIRS_LIMIT:
            raise ValueError("all-pairs method limited to 5000 points")
        return _max_inner_all_pairs(pts, n)
    if method == "orbits":
        if n == 0:
            return None
        return _max_inner_orbits(reps, n)
    raise ValueError(f"unknown method {method!r}")


def spacing_from_inner(n: int, g: int, metric: Metric | str = Metric.EUCLID) -> float:
    gap = n - g  # exact integer, so no cancellation
    if Metric(metric) is Metric.SQUARED:
        return 2.0 * gap / n
    return math.sqrt(2.0 * gap / n)


def min_spacing(n: int, metric: Metric | str = Metric.EUCLID, method: str = "auto") -> float | None:
    """Minimum distance between distinct normalised points, or None with fewer than two."""
    g = max_inner_product(n, method)
    return None if g is None else spacing_from_inner(n, g, metric)


# --- block computation ------------------------------------------------------------


def canonical_table(limit: int) -> tuple[np.ndarray, np.ndarray]:
    """Canonical triples for every n <= limit, sorted by n, with offsets into them.

    Triples for n live at rows offsets[n]:offsets[n + 1].
    """
    r = isqrt(limit)
    chunks = []
    for x in range(0, r + 1):
        for y in range(x, r + 1):
            base = x * x + y * y
            if base + y * y > limit:
                break
            z_hi = isqrt(limit - base)
            z = np.arange(y, z_hi + 1, dtype=np.int64)
            chunks.append(np.column_stack([np.full(z.size, x), np.full(z.size, y), z]))
    triples = np.concatenate(chunks)
    norms = (triples**2).sum(axis=1)
    order = np.argsort(norms, kind="stable")
    triples, norms = triples[order], norms[order]
    offsets = np.searchsorted(norms, np.arange(limit + 2))
    return triples, offsets


def max_inner_table(limit: int) -> np.ndarray:
    """max_inner_product(n) for 0 <= n <= limit; -1 where fewer than two points exist."""
    triples, offsets = canonical_table(limit)
    out = np.full(limit + 1, -1, dtype=np.int64)
    for n in range(1, limit + 1):
        lo, hi = offsets[n], offsets[n + 1]
        if hi > lo:
            out[n] = _max_inner_orbits(triples[lo:hi], n)
    return out


@dataclass
class SpacingRow:
    n: int
    count: int
    spacing: float | None
    normalised: float | None


def spacing_scan(lo: int, hi: int, metric: Metric | str = Metric.EUCLID, eps: float = 0.01) -> list[SpacingRow]:
    """Rows (n, count, m, m n / (log n)^(1+eps)) for lo <= n <= hi."""
    rows = []
    for n in range(max(lo, 1), hi + 1):
        reps = canonical_points(n)
        count = sum(orbit_size(*map(int, r)) for r in reps)
        m = None if count < 2 else spacing_from_inner(n, _max_inner_orbits(reps, n), metric)
        norm = None
        if m is not None and n > 1:
            norm = m * n / math.log(n) ** (1 + eps)
        rows.append(SpacingRow(n, count, m, norm))
    return rows


def violation_fractions(rows: list[SpacingRow], constants) -> dict[float, float]:
    """For each C, the fraction of rows whose normalised spacing exceeds C."""
    usable = [r for r in rows if r.normalised is not None]
    if not usable:
        return {float(c): 0.0 for c in constants}
    vals = np.array([r.normalised for r in usable])
    return {float(c): float(np.mean(vals > c)) for c in constants}
