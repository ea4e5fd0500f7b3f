"""Major arcs, the approximants f* and g*, the singular integral J(n; W), and
the arc integrals used to check the major-arc asymptotic numerically.

All arc integrals are real-grid quadratures. Where an exact answer exists
(a trigonometric polynomial on a fine enough uniform grid, or integrated in
closed form over an interval) it is provided separately as an oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import gcd

import numpy as np

from .densities import singular_series_additive
from .expsums import (
    TWO_PI,
    ConvergenceError,
    ThetaParams,
    _gl_panels,
    e_frac,
    f_values,
    g_values,
    gauss_sum,
    trig_poly_on_grid,
    v_values,
)


@dataclass(frozen=True)
class FareyArc:
    a: int
    q: int
    half_width: float

    @property
    def center(self) -> float:
        return self.a / self.q

    def segment(self) -> tuple[float, float]:
        """The part of the arc inside [0, 1]."""
        return max(0.0, self.center - self.half_width), min(1.0, self.center + self.half_width)

    def contains(self, alpha: float) -> bool:
        return abs(alpha - self.center) <= self.half_width


@dataclass
class ArcSystem:
    major: list[FareyArc]
    X: float
    W: float

    @property
    def half_width(self) -> float:
        return self.W / self.X

    @property
    def major_measure(self) -> float:
        return math.fsum(hi - lo for lo, hi in (arc.segment() for arc in self.major))

    @property
    def minor_measure(self) -> float:
        return 1.0 - self.major_measure

    def find(self, alpha: float) -> FareyArc | None:
        for arc in self.major:
            if arc.contains(alpha):
                return arc
        return None


def build_major_arcs(X: float, W: float) -> ArcSystem:
    """Arcs |alpha - a/q| <= W/X for 0 <= a <= q <= W, (a, q) = 1.

    The arcs at 0/1 and 1/1 are the two halves of a single arc around 0
    modulo 1; both are kept, clipped to [0, 1].
    """
    if W < 1:
        raise ValueError("W must be at least 1")
    if 2 * W**3 >= X:
        raise ValueError(f"major arcs overlap: need 2 W^3 < X, got W={W}, X={X}")
    delta = W / X
    arcs = [
        FareyArc(a, q, delta)
        for q in range(1, int(math.floor(W)) + 1)
        for a in range(0, q + 1)
        if gcd(a, q) == 1
    ]
    arcs.sort(key=lambda arc: (arc.center, arc.q))
    for left, right in zip(arcs, arcs[1:]):
        if left.segment()[1] >= right.segment()[0]:
            raise ValueError(f"arcs at {left.a}/{left.q} and {right.a}/{right.q} overlap")
    return ArcSystem(arcs, float(X), float(W))


# --- approximants ----------------------------------------------------------------


def f_star(alpha: float, arc: FareyArc, params: ThetaParams) -> complex:
    """q^-1 S(q, a) v(alpha - a/q)."""
    if not arc.contains(alpha):
        raise ValueError(f"alpha={alpha} lies outside the arc at {arc.a}/{arc.q}")
    v = v_values(alpha - arc.center, params.P)[0]
    return complex(gauss_sum(arc.q, arc.a) * v / arc.q)


def g_star(alpha: float, arc: FareyArc, params: ThetaParams) -> complex:
    """q^-1 S(q, a) Y."""
    if not arc.contains(alpha):
        raise ValueError(f"alpha={alpha} lies outside the arc at {arc.a}/{arc.q}")
    return complex(gauss_sum(arc.q, arc.a) * params.Y / arc.q)


@dataclass
class ApproximationReport:
    max_f_error: float
    max_g_error: float
    f_constant: float
    g_constant: float
    samples: int


def approximation_errors(params: ThetaParams, W: float, per_arc: int = 17) -> ApproximationReport:
    """Largest |f - f*| and |g - g*| on sample points of every major arc.

    The constants divide by W^(1/2), the size the errors are expected to have.
    """
    arcs = build_major_arcs(params.scale, W)
    max_f = max_g = 0.0
    count = 0
    for arc in arcs.major:
        offsets = np.linspace(-arc.half_width, arc.half_width, per_arc)
        s = gauss_sum(arc.q, arc.a) / arc.q
        fs = f_values(arc.a, arc.q, offsets, params)
        gs = g_values(arc.a, arc.q, offsets, params)
        vs = v_values(offsets, params.P)
        max_f = max(max_f, float(np.max(np.abs(fs - s * vs))))
        max_g = max(max_g, float(np.max(np.abs(gs - s * params.Y))))
        count += offsets.size
    root = math.sqrt(W)
    return ApproximationReport(max_f, max_g, max_f / root, max_g / root, count)


# --- singular integral -------------------------------------------------------------


def _frequency_bound(n: int, P: int) -> float:
    return max(2.0 * P * P - n, n - P * P / 4.0, 1.0)


def singular_integral(n: int, W: float, X: float, Y: int, max_panels: int = 1 << 15) -> float:
    """J(n; W) = Y times the integral over |beta| <= W/X of v(beta)^2 e(-beta n)."""
    P = math.isqrt(int(math.floor(X)))
    if not X / 2 < n <= X:
        raise ValueError("singular_integral requires X/2 < n <= X")
    delta = W / X
    K = _frequency_bound(n, P)
    # e(K beta) turns by less than pi/4 per panel
    panels = max(4, math.ceil(2 * delta * K * 8))
    prev = None
    while panels <= max_panels:
        nodes, weights = _gl_panels(-delta, delta, panels)
        vals = v_values(nodes, P) ** 2 * np.exp(-1j * TWO_PI * nodes * n)
        total = complex(np.dot(vals, weights)) * Y
        if prev is not None and abs(total - prev) <= 1e-9 * Y:
            if abs(total.imag) > 1e-6 * Y:
                raise ConvergenceError(f"J(n; W) has imaginary part {total.imag:.3e}")
            return total.real
        prev = total
        panels *= 2
    raise ConvergenceError("singular integral did not converge")


def circle_density(m, P: int) -> np.ndarray:
    """Density at m of gamma1^2 + gamma2^2 for (gamma1, gamma2) uniform on [P/2, P]^2 (unnormalised).

    Half the angle subtended by the square at radius sqrt(m).
    """
    m = np.asarray(m, dtype=float)
    r = np.sqrt(np.maximum(m, 1e-300))
    lo_c = np.clip(P / (2 * r), -1.0, 1.0)
    hi_c = np.clip(P / r, -1.0, 1.0)
    theta_lo = np.maximum(np.arccos(hi_c), np.arcsin(lo_c))
    theta_hi = np.minimum(np.arccos(lo_c), np.arcsin(hi_c))
    return np.where(m > 0, np.maximum(theta_hi - theta_lo, 0.0) / 2.0, 0.0)


def _density_breaks(P: int) -> list[float]:
    return [P * P / 2.0, float(P * P), 1.25 * P * P, 2.0 * P * P]


def singular_integral_density(n: int, W: float, X: float, Y: int, panels: int = 4000) -> float:
    """J(n; W) by a second route: the circle density convolved with the Dirichlet kernel.

    J = Y int rho(m) sin(2 pi (m - n) W/X) / (pi (m - n)) dm.
    """
    P = math.isqrt(int(math.floor(X)))
    delta = W / X
    breaks = sorted(set(_density_breaks(P) + [float(n)]))
    total = 0.0
    for lo, hi in zip(breaks, breaks[1:]):
        nodes, weights = _gl_panels(lo, hi, panels)
        kernel = 2 * delta * np.sinc(2 * delta * (nodes - n))
        total += float(np.dot(circle_density(nodes, P) * kernel, weights))
    return Y * total


def local_area_density(n: int, X: float, half_window: float, panels: int = 400) -> float:
    """Area of {(g1, g2) in [P/2, P]^2 : |g1^2 + g2^2 - n| <= D} divided by 2D."""
    P = math.isqrt(int(math.floor(X)))
    lo, hi = n - half_window, n + half_window
    breaks = sorted({lo, hi, *[b for b in _density_breaks(P) if lo < b < hi]})
    total = 0.0
    for a, b in zip(breaks, breaks[1:]):
        nodes, weights = _gl_panels(a, b, panels)
        total += float(np.dot(circle_density(nodes, P), weights))
    return total / (2 * half_window)


def v_square_mass(P: int, b1: float, b2: float, panels: int = 200) -> float:
    """Integral of |v(beta)|^2 over b1 <= |beta| <= b2."""
    nodes, weights = _gl_panels(b1, b2, panels)
    return 2.0 * float(np.dot(np.abs(v_values(nodes, P)) ** 2, weights))


# --- arc integrals -------------------------------------------------------------------


@dataclass
class MajorArcResult:
    n: int
    integral: float
    imag: float
    sseries: float
    J: float

    @property
    def main_term(self) -> float:
        return self.sseries * self.J

    @property
    def difference(self) -> float:
        return self.integral - self.main_term


def _simpson(values: np.ndarray, h: float) -> complex:
    return complex(h / 3.0 * (values[0] + values[-1] + 4 * values[1:-1:2].sum() + 2 * values[2:-1:2].sum()))


def major_arc_integral(n: int, params: ThetaParams, W: float, step: float | None = None) -> complex:
    """Integral over the major arcs of f(alpha)^2 g(alpha) e(-n alpha), composite Simpson per arc.

    The default step is 1/(32X); anything up to 1/(8X) is accepted.
    """
    X = params.scale
    h_max = 1.0 / (32.0 * X) if step is None else step
    if h_max > 1.0 / (8.0 * X):
        raise ValueError("grid step must be at most 1/(8X)")
    arcs = build_major_arcs(X, W)
    total = 0j
    for arc in arcs.major:
        lo, hi = arc.segment()
        intervals = max(2, math.ceil((hi - lo) / h_max))
        intervals += intervals % 2
        beta = np.linspace(lo - arc.center, hi - arc.center, intervals + 1)
        vals = f_values(arc.a, arc.q, beta, params) ** 2 * g_values(arc.a, arc.q, beta, params)
        phase = e_frac(-n * arc.a, arc.q) * np.exp(-1j * TWO_PI * beta * n)
        total += _simpson(vals * phase, (hi - lo) / intervals)
    return total


def window_rep_counts(params: ThetaParams) -> np.ndarray:
    """r[m] = #{(x1, x2, y) : P/2 < x1, x2 <= P, 1 <= y <= Y, x1^2 + x2^2 + y^2 = m}."""
    x = params.x_range
    pairs = np.bincount((x[:, None] ** 2 + x[None, :] ** 2).ravel())
    out = np.zeros(pairs.size + params.Y**2, dtype=np.int64)
    for y in params.y_range:
        out[y * y : y * y + pairs.size] += pairs
    return out


def major_arc_integral_exact(n: int, params: ThetaParams, W: float, counts: np.ndarray | None = None) -> complex:
    """Same integral with every frequency integrated in closed form over each arc."""
    counts = window_rep_counts(params) if counts is None else counts
    m = np.flatnonzero(counts)
    r = counts[m].astype(float)
    k = m - n
    arcs = build_major_arcs(params.scale, W)
    total = 0j
    for arc in arcs.major:
        lo, hi = arc.segment()
        b0, b1 = lo - arc.center, hi - arc.center
        centre = e_frac(k * arc.a, arc.q)
        with np.errstate(divide="ignore", invalid="ignore"):
            piece = (np.exp(1j * TWO_PI * k * b1) - np.exp(1j * TWO_PI * k * b0)) / (1j * TWO_PI * k)
        piece[k == 0] = b1 - b0
        total += complex(np.sum(r * centre * piece))
    return total


def major_arc_value(n: int, params: ThetaParams, W: float, step: float | None = None) -> MajorArcResult:
    """The major-arc integral next to S(n; W) J(n; W)."""
    X = params.scale
    if not X / 2 < n <= X:
        raise ValueError("major_arc_value requires X/2 < n <= X")
    integral = major_arc_integral(n, params, W, step)
    return MajorArcResult(
        n=n,
        integral=integral.real,
        imag=integral.imag,
        sseries=singular_series_additive(n, W),
        J=singular_integral(n, W, X, params.Y),
    )


# --- full-circle grids ------------------------------------------------------------------


def orthogonality_grid_points(params: ThetaParams) -> int:
    return 2 * (2 * params.P**2 + params.Y**2) + 1


def grid_rep_integral(n: int, params: ThetaParams, n_points: int | None = None) -> float:
    """Uniform-grid integral over [0, 1) of f(alpha)^2 g(alpha) e(-n alpha)."""
    N = orthogonality_grid_points(params) if n_points is None else n_points
    x, y = params.x_range, params.y_range
    f = trig_poly_on_grid(x * x, N)
    g = trig_poly_on_grid(y * y, N)
    j = np.arange(N, dtype=np.int64)
    twist = e_frac(-(j * (n % N)), N)
    return float(np.real(np.sum(f * f * g * twist)) / N)


def _major_mask(arcs: ArcSystem, N: int) -> np.ndarray:
    mask = np.zeros(N, dtype=bool)
    for arc in arcs.major:
        lo, hi = arc.segment()
        j_lo = math.ceil(lo * N - 1e-9)
        j_hi = math.floor(hi * N + 1e-9)
        idx = np.arange(j_lo, j_hi + 1)
        mask[idx[idx < N]] = True
    return mask


@dataclass
class MomentResult:
    X: float
    Y: int
    W: float
    minor: float
    full: float
    bound: float
    n_points: int

    @property
    def ratio(self) -> float:
        return self.minor / self.bound


def minor_arc_moment(params: ThetaParams, W: float, n_points: int | None = None) -> MomentResult:
    """Grid value of the integral of |f|^4 |g|^2 over the minor arcs.

    ``bound`` is X Y log X + X Y^2 / W with constant 1.
    """
    X = params.scale
    if X > 1e6:
        raise ValueError("minor_arc_moment supports X <= 10^6")
    N = int(math.ceil(8 * X)) if n_points is None else n_points
    x, y = params.x_range, params.y_range
    weight = np.abs(trig_poly_on_grid(x * x, N)) ** 4 * np.abs(trig_poly_on_grid(y * y, N)) ** 2
    mask = _major_mask(build_major_arcs(X, W), N)
    minor = float(np.sum(weight[~mask]) / N)
    full = float(np.sum(weight) / N)
    bound = X * params.Y * math.log(X) + X * params.Y**2 / W
    return MomentResult(X, params.Y, W, minor, full, bound, N)
