"""Oracle suites run by ``microsq verify``.

Each check compares a fast path with an independent oracle and is either
exact (any difference is a mismatch) or toleranced. The report separates the
two so the exit code can say which kind of failure happened.
"""

from __future__ import annotations

import json
import math
import random
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from .arith import is_three_square_eligible, primes_up_to
from .circle import grid_rep_integral
from .densities import (
    InvariantViolation,
    a_term,
    a_term_direct,
    a_term_odd_prime_power,
    odd_prime_partial_sums,
    truncation_identity_check,
    two_adic_partial_sum,
    two_adic_partial_sum_count,
)
from .expsums import ThetaParams, gauss_sum, gauss_sum_direct, ramanujan_sum, ramanujan_sum_direct
from .oracles import count_window_triples

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_RUNTIME = 3
EXIT_TOLERANCE = 4

SUITES = ("lemmas", "orthogonality", "truncation")


@dataclass
class CheckResult:
    name: str
    kind: str  # "exact" or "tolerance"
    passed: bool
    detail: str
    seconds: float = 0.0
    error: str | None = None


@dataclass
class Report:
    suite: str
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def exit_code(self) -> int:
        if any(c.error for c in self.checks):
            return EXIT_RUNTIME
        if any(not c.passed and c.kind == "exact" for c in self.checks):
            return EXIT_MISMATCH
        if not self.passed:
            return EXIT_TOLERANCE
        return EXIT_OK

    def to_json(self) -> str:
        body = {"suite": self.suite, "passed": self.passed, "exit_code": self.exit_code, "checks": [asdict(c) for c in self.checks]}
        return json.dumps(body, indent=2)


def _run(name: str, kind: str, func) -> CheckResult:
    start = time.perf_counter()
    try:
        ok, detail = func()
        return CheckResult(name, kind, bool(ok), detail, time.perf_counter() - start)
    except InvariantViolation as exc:
        return CheckResult(name, kind, False, str(exc), time.perf_counter() - start)
    except Exception as exc:  # reported, not raised: the suite keeps going
        return CheckResult(name, kind, False, "raised", time.perf_counter() - start, f"{type(exc).__name__}: {exc}")


# --- local checks ------------------------------------------------------------------


def check_gauss_sums(q_max: int = 60) -> tuple[bool, str]:
    worst = 0.0
    for q in range(1, q_max + 1):
        for a in range(1, q + 1):
            if math.gcd(a, q) == 1:
                worst = max(worst, abs(gauss_sum(q, a) - gauss_sum_direct(q, a)))
    return worst < 1e-9, f"max |closed form - direct| = {worst:.2e} for q <= {q_max}"


def check_ramanujan(q_max: int = 40, m_max: int = 40) -> tuple[bool, str]:
    worst = max(abs(ramanujan_sum(q, m) - ramanujan_sum_direct(q, m)) for q in range(1, q_max + 1) for m in range(m_max + 1))
    return worst < 1e-9, f"max deviation {worst:.2e}"


def check_prime_power_closed_forms(n_max: int = 200) -> tuple[bool, str]:
    worst = 0.0
    pairs = 0
    for p in (3, 5, 7, 11, 13):
        h = 1
        while p**h <= 3000:
            for n in range(1, n_max + 1):
                worst = max(worst, abs(float(a_term_odd_prime_power(p, h, n)) - a_term_direct(p**h, n)))
                pairs += 1
            h += 1
    return worst < 1e-9, f"{pairs} (p^h, n) pairs, max deviation {worst:.2e}"


def check_a_term_products(q_max: int = 120, n_max: int = 60) -> tuple[bool, str]:
    worst = max(abs(a_term(q, n) - a_term_direct(q, n)) for q in range(1, q_max + 1) for n in range(1, n_max + 1))
    return worst < 1e-9, f"max deviation {worst:.2e}"


def check_odd_prime_floor(p_max: int = 97, H_max: int = 8, n_max: int = 10**4) -> tuple[bool, str]:
    bad = 0
    for p in primes_up_to(p_max):
        if p == 2:
            continue
        floor = 1 - Fraction(1, p)
        for n in range(1, n_max + 1):
            bad += sum(1 for s in odd_prime_partial_sums(p, H_max, n) if s < floor)
    return bad == 0, f"{bad} violations (odd p <= {p_max}, H <= {H_max}, n <= {n_max})"


def check_two_adic_floor(H_max: int = 12, n_max: int = 10**4) -> tuple[bool, str]:
    bad = 0
    for n in range(1, n_max + 1):
        if not is_three_square_eligible(n):
            continue
        for H in range(3, H_max + 1):
            try:
                two_adic_partial_sum(H, n)
            except InvariantViolation:
                bad += 1
    return bad == 0, f"{bad} violations (3 <= H <= {H_max}, eligible n <= {n_max})"


def check_two_adic_count(H_max: int = 8, n_max: int = 64) -> tuple[bool, str]:
    worst = 0.0
    for H in range(H_max + 1):
        for n in range(1, n_max + 1):
            worst = max(worst, abs(two_adic_partial_sum(H, n) - float(two_adic_partial_sum_count(H, n))))
    return worst < 1e-9, f"max deviation from solution counts mod 2^H: {worst:.2e}"


# --- suites ----------------------------------------------------------------------------


def suite_lemmas() -> Report:
    rep = Report("lemmas")
    rep.checks.append(_run("gauss_sum closed form", "tolerance", check_gauss_sums))
    rep.checks.append(_run("ramanujan_sum closed form", "exact", check_ramanujan))
    rep.checks.append(_run("odd prime power densities", "tolerance", check_prime_power_closed_forms))
    rep.checks.append(_run("multiplicative A(q; n)", "tolerance", check_a_term_products))
    rep.checks.append(_run("odd prime partial sums >= 1 - 1/p", "exact", check_odd_prime_floor))
    rep.checks.append(_run("2-adic partial sums >= 2^-6", "exact", check_two_adic_floor))
    rep.checks.append(_run("2-adic sums vs solution counts", "tolerance", check_two_adic_count))
    return rep


def suite_orthogonality(X: float = 1e4, Y: int = 20, samples: int = 10, seed: int = 0) -> Report:
    rep = Report("orthogonality")
    params = ThetaParams.from_x(X, Y)
    rng = random.Random(seed)
    lo, hi = params.P**2 // 2 + 1, params.P**2 + Y * Y
    for n in sorted(rng.sample(range(lo, hi + 1), samples)):

        def one(n=n):
            value = grid_rep_integral(n, params)
            count = count_window_triples(n, params.P, Y)
            return abs(value - count) < 1e-6, f"grid {value:.9f} vs count {count}"

        rep.checks.append(_run(f"orthogonality n={n}", "exact", one))
    return rep


def suite_truncation(W: float = 10, samples: int = 100, n_max: int = 10**6, seed: int = 0) -> Report:
    rep = Report("truncation")
    rng = random.Random(seed)
    ns = sorted(rng.sample(range(1, n_max + 1), samples))

    def run():
        worst = max(truncation_identity_check(n, W) for n in ns)
        return worst < 1e-8, f"max residual {worst:.2e} over {samples} n at W={W}"

    rep.checks.append(_run(f"truncation identity W={W}", "tolerance", run))
    return rep


def run_suite(name: str, seed: int = 0) -> Report:
    if name == "lemmas":
        return suite_lemmas()
    if name == "orthogonality":
        return suite_orthogonality(seed=seed)
    if name == "truncation":
        return suite_truncation(seed=seed)
    if name == "all":
        out = Report("all")
        for part in SUITES:
            out.checks.extend(run_suite(part, seed).checks)
        return out
    raise ValueError(f"unknown suite {name!r}")
