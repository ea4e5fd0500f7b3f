"""Complete quadratic exponential sums and the generating sums f, g, v.

Phases are reduced exactly in the integers before they reach floating point:
``e(a r**2 / q)`` is evaluated as ``e(((a * (r**2 % q)) % q) / q)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt

import numpy as np

from .arith import euler_phi, factorize, legendre, moebius

TWO_PI = 2.0 * math.pi


class ConvergenceError(RuntimeError):
    """A quadrature did not reach its error target within the panel budget."""


def e(z):
    """e(z) = exp(2 pi i z), elementwise."""
    return np.exp(1j * TWO_PI * np.asarray(z, dtype=float))


def e_frac(num, den: int):
    """e(num / den) for integer numerators, reduced mod den first."""
    num = np.mod(np.asarray(num, dtype=np.int64), den)
    return np.exp(1j * TWO_PI * (num / den))


@dataclass(frozen=True)
class ThetaParams:
    """Ranges of the generating sums: x in (P/2, P], 1 <= y <= Y."""

    P: int
    Y: int
    X: float | None = None

    def __post_init__(self):
        if self.P < 2:
            raise ValueError(f"P must be at least 2, got {self.P}")
        if not 1 <= self.Y <= self.P:
            raise ValueError(f"need 1 <= Y <= P, got Y={self.Y}, P={self.P}")
        if self.X is not None and isqrt(int(math.floor(self.X))) != self.P:
            raise ValueError("P must equal floor(sqrt(X))")

    @classmethod
    def from_x(cls, X: float, Y: int) -> "ThetaParams":
        return cls(P=isqrt(int(math.floor(X))), Y=int(Y), X=float(X))

    @property
    def scale(self) -> float:
        return float(self.X) if self.X is not None else float(self.P * self.P)

    @property
    def x_range(self) -> np.ndarray:
        # strict lower end: x > P/2
        return np.arange(self.P // 2 + 1, self.P + 1, dtype=np.int64)

    @property
    def y_range(self) -> np.ndarray:
        return np.arange(1, self.Y + 1, dtype=np.int64)


# --- Gauss sums ---------------------------------------------------------------


def gauss_sum_direct(q: int, a: int) -> complex:
    """S(q, a) = sum_{r=1}^{q} e(a r^2 / q), summed term by term."""
    if q < 1:
        raise ValueError("q must be positive")
    r = np.arange(1, q + 1, dtype=np.int64)
    sq = (r * r) % q
    return complex(np.sum(e_frac((a % q) * sq, q)))


@lru_cache(maxsize=256)
def gauss_sum_table(q: int) -> np.ndarray:
    """S(q, a) for every a in 0..q-1.

    Same sum as :func:`gauss_sum_direct`, regrouped by the residue of r**2:
    S(q, a) = sum_s #{r : r^2 = s mod q} e(a s / q), evaluated as one FFT.
    """
    r = np.arange(q, dtype=np.int64)
    counts = np.bincount((r * r) % q, minlength=q).astype(float)
    table = np.fft.ifft(counts) * q
    table.setflags(write=False)
    return table


def gauss_sum_prime(p: int, a: int) -> complex:
    """S(p, a) for an odd prime p: chi_p(a) sqrt(p), times i when p = 3 mod 4."""
    root = math.sqrt(p)
    unit = 1.0 if p % 4 == 1 else 1j
    return legendre(a, p) * unit * root


def gauss_sum_prime_power(p: int, k: int, a: int) -> complex:
    """S(p^k, a) for odd p with p not dividing a."""
    l, odd = divmod(k, 2)
    if odd:
        return p**l * gauss_sum_prime(p, a)
    return complex(p**l)


def gauss_sum(q: int, a: int) -> complex:
    """S(q, a) from the prime-power closed forms, for gcd(a, q) = 1.

    Split by the Chinese remainder theorem, S(q1 q2, a) = S(q1, a q2) S(q2, a q1)
    for coprime q1, q2; powers of two are summed directly.
    """
    if q < 1:
        raise ValueError("q must be positive")
    if gcd(a, q) != 1:
        raise ValueError(f"gauss_sum requires gcd(a, q) = 1, got a={a}, q={q}")
    out = complex(1.0)
    for p, k in factorize(q):
        m = p**k
        adj = a * (q // m) % m
        if p == 2:
            out *= gauss_sum_direct(m, adj)
        else:
            out *= gauss_sum_prime_power(p, k, adj)
    return out


# --- Ramanujan sums -----------------------------------------------------------


def ramanujan_sum(q: int, m: int) -> int:
    """c_q(m) = mu(q/(q,m)) phi(q) / phi(q/(q,m))."""
    if q < 1:
        raise ValueError("q must be positive")
    d = q // gcd(q, m)
    return moebius(d) * euler_phi(q) // euler_phi(d)


def ramanujan_sum_direct(q: int, m: int) -> complex:
    a = np.array([a for a in range(1, q + 1) if gcd(a, q) == 1], dtype=np.int64)
    return complex(np.sum(e_frac(a * (m % q), q)))


# --- generating sums ----------------------------------------------------------


def f_sum(alpha: float, params: ThetaParams) -> complex:
    """f(alpha) = sum over P/2 < x <= P of e(alpha x^2)."""
    x = params.x_range
    return complex(np.sum(e(alpha * (x * x))))


def g_sum(alpha: float, params: ThetaParams) -> complex:
    """g(alpha) = sum over 1 <= y <= Y of e(alpha y^2)."""
    y = params.y_range
    return complex(np.sum(e(alpha * (y * y))))


def _rational_shift_sum(squares: np.ndarray, a: int, q: int, beta: np.ndarray) -> np.ndarray:
    """sum_k e((a/q + beta) * s_k) for many beta, keeping a s_k / q exact."""
    base = e_frac(a * (squares % q), q)
    phase = np.exp(1j * TWO_PI * np.outer(beta, squares.astype(float)))
    return phase @ base


def f_values(a: int, q: int, beta, params: ThetaParams) -> np.ndarray:
    """f(a/q + beta) on an array of offsets beta."""
    x = params.x_range
    return _rational_shift_sum(x * x, a, q, np.atleast_1d(np.asarray(beta, dtype=float)))


def g_values(a: int, q: int, beta, params: ThetaParams) -> np.ndarray:
    y = params.y_range
    return _rational_shift_sum(y * y, a, q, np.atleast_1d(np.asarray(beta, dtype=float)))


def trig_poly_on_grid(exponents: np.ndarray, n_points: int) -> np.ndarray:
    """sum_k e(j * s_k / N) for j = 0..N-1, with integer exponents s_k >= 0."""
    counts = np.bincount(np.mod(exponents, n_points), minlength=n_points).astype(float)
    return np.fft.ifft(counts) * n_points


# --- the oscillatory integral v -----------------------------------------------

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(12)


def _gl_panels(lo: float, hi: float, panels: int) -> tuple[np.ndarray, np.ndarray]:
    edges = np.linspace(lo, hi, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    nodes = (mid[:, None] + half[:, None] * _GL_NODES[None, :]).ravel()
    weights = (half[:, None] * _GL_WEIGHTS[None, :]).ravel()
    return nodes, weights


def _v_panels(beta_max: float, P: int) -> int:
    # phase 2 pi beta gamma^2 must move by less than pi/4 per panel
    span = TWO_PI * beta_max * (P * P - (P / 2.0) ** 2)
    return max(4, math.ceil(span / (math.pi / 4)))


def v_values(beta, P: int, tol: float | None = None, max_panels: int | None = None) -> np.ndarray:
    """v(beta) = integral over [P/2, P] of e(beta gamma^2), vectorised over beta.

    The panel count doubles until two passes agree to ``tol``; the default
    budget is eight doublings' worth above the starting count.
    """
    beta = np.atleast_1d(np.asarray(beta, dtype=float))
    tol = 1e-8 * P if tol is None else tol
    panels = _v_panels(float(np.max(np.abs(beta), initial=0.0)), P)
    max_panels = max(1 << 16, 8 * panels) if max_panels is None else max_panels
    prev = None
    while panels <= max_panels:
        nodes, weights = _gl_panels(P / 2.0, float(P), panels)
        sq = nodes * nodes
        out = np.empty(beta.shape, dtype=complex)
        step = max(1, (1 << 22) // sq.size)
        for start in range(0, beta.size, step):
            chunk = beta[start : start + step]
            out[start : start + step] = np.exp(1j * TWO_PI * np.outer(chunk, sq)) @ weights
        if prev is not None and np.max(np.abs(out - prev)) < tol:
            return out
        prev = out
        panels *= 2
    raise ConvergenceError(f"v integral did not converge within {max_panels} panels")


def v_integral(beta: float, params: ThetaParams) -> complex:
    if abs(beta) > 1:
        raise ValueError("v_integral requires |beta| <= 1")
    return complex(v_values(beta, params.P)[0])


def v_decay_constant(params: ThetaParams, betas) -> float:
    """max over the given beta of |v(beta)| (1 + |beta| X) / P."""
    betas = np.asarray(betas, dtype=float)
    vals = np.abs(v_values(betas, params.P))
    return float(np.max(vals * (1.0 + np.abs(betas) * params.scale) / params.P))


def fourth_moment_grid(Y: int, n_points: int | None = None) -> float:
    """Uniform-grid integral of |g(alpha)|^4 over [0, 1)."""
    n_points = 8 * Y * Y + 1 if n_points is None else n_points
    y = np.arange(1, Y + 1, dtype=np.int64)
    vals = trig_poly_on_grid(y * y, n_points)
    return float(np.mean(np.abs(vals) ** 4))


def fourth_moment_count(Y: int) -> int:
    """#{y in [1, Y]^4 : y1^2 + y2^2 = y3^2 + y4^2}, by counting sums."""
    y = np.arange(1, Y + 1, dtype=np.int64)
    sums = (y[:, None] ** 2 + y[None, :] ** 2).ravel()
    counts = np.bincount(sums)
    return int(np.sum(counts.astype(np.int64) ** 2))
