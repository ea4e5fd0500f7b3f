import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from microsq import oracles
from microsq.arith import is_gauss_excluded, is_three_square_eligible
from microsq.reps import min_microsquare
from microsq.sphere import (
    GROUP,
    Metric,
    lattice_points,
    max_inner_product,
    max_inner_table,
    min_spacing,
    point_count,
    spacing_from_inner,
    spacing_scan,
    violation_fractions,
)


def test_lattice_point_examples():
    one = lattice_points(1)
    assert one.count == 6
    assert {tuple(p) for p in one.points} == {(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)}
    assert lattice_points(2).count == len(oracles.sphere_points(2)) == 12
    assert lattice_points(7).count == 0


def test_lattice_points_against_brute_force():
    for n in range(0, 3000):
        pts = sorted(map(tuple, lattice_points(n).points.tolist()))
        assert pts == oracles.sphere_points(n)
        assert point_count(n) == len(pts)


def test_point_count_large_n():
    for n in (10**6 + 1, 10**8 + 7, 10**10):
        assert point_count(n) == lattice_points(n).count


def test_point_sets_closed_under_group():
    for n in (1, 2, 3, 50, 1000, 12345):
        pts = {tuple(p) for p in lattice_points(n).points.tolist()}
        for g in GROUP:
            assert {tuple(g @ np.array(p)) for p in pts} == pts


def test_count_grows_under_scaling_by_four():
    counts = np.array([point_count(n) for n in range(0, 10**4 + 1)])
    for n in range(1, 2501):
        assert counts[4 * n] >= counts[n]


def test_spacing_examples():
    assert min_spacing(1) == pytest.approx(math.sqrt(2))
    assert min_spacing(2) == pytest.approx(1)
    assert min_spacing(7) is None
    assert min_spacing(1, Metric.SQUARED) == pytest.approx(2)


def test_spacing_direct_check_small_sets():
    for n in (1, 2, 3, 5, 6, 9, 14):
        pts = np.array(oracles.sphere_points(n), dtype=float) / math.sqrt(n)
        d = np.sqrt(((pts[:, None, :] - pts[None, :, :]) ** 2).sum(-1))
        d[np.eye(len(pts), dtype=bool)] = np.inf
        assert min_spacing(n) == pytest.approx(d.min(), rel=1e-12)


def test_two_methods_agree_exactly():
    for n in range(1, 6000):
        a = max_inner_product(n, "orbits")
        b = max_inner_product(n, "all-pairs")
        assert a == b


def test_spacing_lower_floor():
    for n in range(1, 5000):
        m = min_spacing(n)
        if m is not None:
            assert m * math.sqrt(n) >= math.sqrt(2) - 1e-12


@given(st.integers(3, 10**7))
@settings(max_examples=100, deadline=None)
def test_microsquare_gives_close_pair(n):
    y = min_microsquare(n)
    if y is None:
        return
    g = max_inner_product(n)
    assert n - g <= 2 * y * y  # (x1, x2, y) and (x1, x2, -y)
    assert spacing_from_inner(n, g) <= 2 * y / math.sqrt(n) + 1e-12


def test_batch_table_matches_scalar():
    table = max_inner_table(3000)
    for n in range(0, 3001):
        g = max_inner_product(n) if n else None
        assert table[n] == (-1 if g is None else g)


def test_scan_rows():
    rows = spacing_scan(1, 10)
    assert [r.n for r in rows] == list(range(1, 11))
    by_n = {r.n: r for r in rows}
    assert by_n[7].count == 0 and by_n[7].spacing is None
    for r in rows:
        assert r.count == len(oracles.sphere_points(r.n))
        if r.spacing is not None:
            assert r.spacing * math.sqrt(r.n) >= math.sqrt(2) - 1e-12
    for r in spacing_scan(20, 200):
        if is_gauss_excluded(r.n):
            assert r.count == 0 and r.spacing is None


def test_scan_both_metrics_and_violations():
    euclid = spacing_scan(2, 2000, Metric.EUCLID)
    sq = spacing_scan(2, 2000, Metric.SQUARED)
    for a, b in zip(euclid, sq):
        if a.spacing is not None:
            assert b.spacing == pytest.approx(a.spacing**2)
    fr = violation_fractions([r for r in euclid if is_three_square_eligible(r.n)], [1, 10, 100])
    assert 0 <= fr[100.0] <= fr[10.0] <= fr[1.0] <= 1
