"""Batch scans over ranges of n: per-n survey rows, exceptional-set counts,
gaps between sums of two squares, and the CSV / config plumbing around them.

Ranges are cut into contiguous blocks that may run concurrently; results are
always merged in block order, so output never depends on the thread count.
"""

from __future__ import annotations

import csv
import io
import math
import os
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .arith import Eligibility, classify, is_three_square_eligible
from .densities import singular_series_additive, singular_series_multiplicative, truncation_modulus
from .reps import (
    min_microsquare_four_table,
    min_microsquare_table,
    rep_count_four_table,
    rep_count_table,
    two_square_counts,
)

CSV_HEADER = ["n", "eligible", "rep_count", "min_micro", "sseries_add", "sseries_mult"]
BLOCK = 1 << 16


def thread_count() -> int:
    raw = os.environ.get("MICROSQ_THREADS")
    if raw is None:
        return max(1, os.cpu_count() or 1)
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"MICROSQ_THREADS must be an integer, got {raw!r}") from None
    return max(1, value)


def blocks(lo: int, hi: int, size: int = BLOCK) -> list[tuple[int, int]]:
    """Half-open blocks covering [lo, hi)."""
    return [(s, min(s + size, hi)) for s in range(lo, hi, size)]


def run_blocks(func, lo: int, hi: int, threads: int | None = None, size: int = BLOCK) -> list:
    """func(a, b) over the blocks of [lo, hi), results in block order."""
    parts = blocks(lo, hi, size)
    threads = thread_count() if threads is None else max(1, threads)
    if threads == 1 or len(parts) == 1:
        return [func(a, b) for a, b in parts]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda ab: func(*ab), parts))


# --- survey rows ------------------------------------------------------------------


@dataclass(frozen=True)
class SurveyRecord:
    n: int
    eligible: bool
    rep_count: int
    min_micro: int | None = None
    sseries_add: float | None = None
    sseries_mult: float | None = None

    @property
    def tags(self) -> frozenset[Eligibility]:
        return classify(self.n)


def survey_records(
    lo: int, hi: int, Y: int, W: float | None = None, threads: int | None = None, variant: str = "three"
) -> list[SurveyRecord]:
    """One record per n in [lo, hi]; singular series only when W is given.

    With ``variant="four"`` the counts are R_0(n; Y), the minimal microsquare
    is the least admissible max(x3, x4) and eligibility means 8 does not divide n.
    """
    if variant not in ("three", "four"):
        raise ValueError(f"unknown variant {variant!r}")
    four = variant == "four"
    lo = max(lo, 1)
    Q = truncation_modulus(W) if W is not None else 1
    cache: dict[int, tuple[float, float]] = {}

    def series(n: int) -> tuple[float | None, float | None]:
        if W is None:
            return None, None
        key = n % Q
        if key not in cache:
            cache[key] = (singular_series_additive(n, W), singular_series_multiplicative(n, W)[0])
        return cache[key]

    def block(a: int, b: int) -> list[SurveyRecord]:
        counts = (rep_count_four_table if four else rep_count_table)(a, b, Y)
        micro = (min_microsquare_four_table if four else min_microsquare_table)(a, b)
        out = []
        for i, n in enumerate(range(a, b)):
            add, mult = series(n)
            out.append(
                SurveyRecord(
                    n=n,
                    eligible=n % 8 != 0 if four else is_three_square_eligible(n),
                    rep_count=int(counts[i]),
                    min_micro=int(micro[i]) or None,
                    sseries_add=add,
                    sseries_mult=mult,
                )
            )
        return out

    # the series cache is shared, so keep that path single-threaded
    parts = run_blocks(block, lo, hi + 1, 1 if W is not None else threads)
    return [r for part in parts for r in part]


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_records(stream, records, config: dict | None = None) -> None:
    for key in sorted(config or {}):
        stream.write(f"# {key}={config[key]}\n")
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in records:
        writer.writerow([_fmt(r.n), _fmt(r.eligible), _fmt(r.rep_count), _fmt(r.min_micro), _fmt(r.sseries_add), _fmt(r.sseries_mult)])


def records_to_csv(records, config: dict | None = None) -> str:
    buf = io.StringIO()
    write_records(buf, records, config)
    return buf.getvalue()


def parse_records(text: str) -> tuple[list[SurveyRecord], dict[str, str]]:
    """Inverse of :func:`records_to_csv`: records plus the commented config."""
    config = {}
    body = []
    for line in text.splitlines():
        if line.startswith("#"):
            key, _, value = line[1:].strip().partition("=")
            config[key] = value
        elif line:
            body.append(line)
    reader = csv.reader(body)
    header = next(reader)
    if header != CSV_HEADER:
        raise ValueError(f"unexpected header {header}")
    out = []
    for row in reader:
        n, elig, reps, micro, add, mult = row
        out.append(
            SurveyRecord(
                n=int(n),
                eligible=elig == "1",
                rep_count=int(reps),
                min_micro=int(micro) if micro else None,
                sseries_add=float(add) if add else None,
                sseries_mult=float(mult) if mult else None,
            )
        )
    return out, config


# --- exceptional sets ---------------------------------------------------------------


@dataclass
class ScanSummary:
    X: float
    Y: int
    variant: str
    eligible_count: int
    exceptional_count: int
    bound_value: float
    exceptions: list[int] = field(default_factory=list)
    unrepresentable: list[int] = field(default_factory=list)

    @property
    def ratio(self) -> float:
        return self.exceptional_count / self.bound_value if self.bound_value > 0 else math.nan


def theorem_bound(X: float, Y: int, variant: str = "three") -> float:
    """Right side of the exceptional-set estimate with constant 1."""
    L = math.log(X)
    LL = math.log(L) if L > 1 else 0.0
    if variant == "three":
        return X / Y * L * LL**2
    if variant == "four":
        return X / Y**2 * L * LL**3
    raise ValueError(f"unknown variant {variant!r}")


def default_y(X: float) -> int:
    """ceil((log X)(log log X)^2)."""
    L = math.log(X)
    return math.ceil(L * math.log(L) ** 2)


def minimal_micro_range(X: float, variant: str = "three", threads: int | None = None) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(n, eligible mask, least admissible Y or 0) for X/2 < n <= X."""
    if variant not in ("three", "four"):
        raise ValueError(f"unknown variant {variant!r}")
    limit = 10**9 if variant == "three" else 10**7
    if X > limit:
        raise ValueError(f"exceptional_scan supports X <= {limit:.0e} for variant {variant}")
    lo, hi = int(math.floor(X / 2)) + 1, int(math.floor(X)) + 1
    table = min_microsquare_table if variant == "three" else min_microsquare_four_table
    micro = np.concatenate(run_blocks(table, lo, hi, threads, size=1 << 20)) if hi > lo else np.zeros(0, dtype=np.int64)
    n = np.arange(lo, hi, dtype=np.int64)
    if variant == "three":
        eligible = (n % 4 != 0) & (n % 8 != 7)
    else:
        eligible = n % 8 != 0
    return n, eligible, micro


def summarize(X: float, Y: int, variant: str, n: np.ndarray, eligible: np.ndarray, micro: np.ndarray) -> ScanSummary:
    missing = eligible & ((micro == 0) | (micro > Y))
    return ScanSummary(
        X=X,
        Y=Y,
        variant=variant,
        eligible_count=int(eligible.sum()),
        exceptional_count=int(missing.sum()),
        bound_value=theorem_bound(X, Y, variant),
        exceptions=[int(v) for v in n[missing]],
        unrepresentable=[int(v) for v in n[eligible & (micro == 0)]],
    )


def exceptional_scan(X: float, Y: int, variant: str = "three", threads: int | None = None) -> ScanSummary:
    """E(X; Y) (or E_0(X; Y)) exactly, with every exceptional n listed.

    ``unrepresentable`` holds the eligible n with no representation in
    positive integers at all, whatever Y is.
    """
    n, eligible, micro = minimal_micro_range(X, variant, threads)
    return summarize(X, Y, variant, n, eligible, micro)


def exceptional_trajectory(X: float, Ys, variant: str = "three", threads: int | None = None) -> list[ScanSummary]:
    n, eligible, micro = minimal_micro_range(X, variant, threads)
    return [summarize(X, Y, variant, n, eligible, micro) for Y in Ys]


# --- gaps between sums of two squares ------------------------------------------------


@dataclass
class GapScan:
    limit: int
    count: int
    max_gap: int
    histogram: dict[int, int]

    @property
    def ratio(self) -> float:
        return self.max_gap / (0.25 * math.log(self.limit))


def two_square_gap_scan(limit: int, block: int = 1 << 22) -> GapScan:
    """Gaps between successive positive sums of two squares up to limit."""
    if limit < 2 or limit > 10**9:
        raise ValueError("two_square_gap_scan needs 2 <= limit <= 10^9")
    hist: Counter = Counter()
    prev = None
    count = 0
    for a, b in blocks(1, limit + 1, block):
        vals = np.flatnonzero(two_square_counts(a, b, allow_zero=True)) + a
        if vals.size == 0:
            continue
        count += vals.size
        if prev is not None:
            hist[int(vals[0] - prev)] += 1
        gaps, freq = np.unique(np.diff(vals), return_counts=True)
        for g, c in zip(gaps, freq):
            hist[int(g)] += int(c)
        prev = int(vals[-1])
    return GapScan(limit, count, max(hist) if hist else 0, dict(sorted(hist.items())))


# --- configuration ---------------------------------------------------------------------


def _coerce(text: str):
    for kind in (int, float):
        try:
            return kind(text)
        except ValueError:
            pass
    return text


def parse_config(text: str) -> dict:
    """key = value lines; blank lines and '#' comments ignored."""
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep or not key.strip():
            raise ValueError(f"config line {lineno}: expected key=value")
        out[key.strip()] = _coerce(value.strip())
    return out


def load_config(path: str) -> dict:
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())


def resolve_config(file_values: dict, cli_values: dict) -> dict:
    """File values overridden by every CLI value that was actually given."""
    merged = dict(file_values)
    merged.update({k: v for k, v in cli_values.items() if v is not None})
    return merged
