"""Command-line entry point: ``microsq <verb> ...``.

Exit codes: 0 success, 1 verification failure (oracle mismatch),
2 invalid arguments, 3 runtime or convergence failure, 4 a toleranced
check exceeded its tolerance.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import __version__
from .circle import major_arc_value, minor_arc_moment
from .densities import InvariantViolation, singular_series_additive, singular_series_multiplicative
from .expsums import ConvergenceError, ThetaParams
from .reps import count_reps, enumerate_reps, min_microsquare
from .sphere import Metric, canonical_points, orbit_size, spacing_scan, violation_fractions, max_inner_product, spacing_from_inner
from .survey import (
    exceptional_scan,
    load_config,
    resolve_config,
    survey_records,
    theorem_bound,
    two_square_gap_scan,
    write_records,
)
from .verify import EXIT_MISMATCH, EXIT_RUNTIME, EXIT_USAGE, run_suite


class UsageError(ValueError):
    pass


def _range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    try:
        a, b = int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A..B, got {text!r}") from None
    if not sep or a > b:
        raise argparse.ArgumentTypeError(f"expected A..B with A <= B, got {text!r}")
    return a, b


def _emit(args, payload: dict, lines: list[str]) -> None:
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print("\n".join(lines))


# --- verbs ------------------------------------------------------------------------


def cmd_repr(args) -> int:
    n, Y = args.n, args.ymax
    count = count_reps(n, Y, allow_zero=args.allow_zero)
    micro = min_microsquare(n) if n >= 3 else None
    payload = {"n": n, "Y": Y, "allow_zero": args.allow_zero, "count": count, "min_micro": micro}
    lines = [f"R({n}; {Y}) = {count}", f"min microsquare: {micro if micro is not None else '-'}"]
    if args.enumerate:
        reps = enumerate_reps(n, Y, allow_zero=args.allow_zero)
        payload["reps"] = [list(r) for r in reps]
        lines += [f"  {r.x1}^2 + {r.x2}^2 + {r.x3}^2" for r in reps]
    _emit(args, payload, lines)
    return 0


def cmd_scan(args) -> int:
    cfg = load_config(args.config) if args.config else {}
    cfg = resolve_config(cfg, {"xmin": args.xmin, "xmax": args.xmax, "ymax": args.ymax, "w": args.w, "out": args.out})
    if args.four:
        cfg["variant"] = "four"
    cfg.setdefault("variant", "three")
    for key in ("xmin", "xmax", "ymax", "out"):
        if key not in cfg:
            raise UsageError(f"scan needs --{key} (or '{key}' in the config file)")
    lo, hi, Y = int(cfg["xmin"]), int(cfg["xmax"]), int(cfg["ymax"])
    if lo < 1 or hi < lo or Y < 0:
        raise UsageError("need 1 <= xmin <= xmax and ymax >= 0")
    W = float(cfg["w"]) if cfg.get("w") is not None else None
    records = survey_records(lo, hi, Y, W=W, variant=cfg["variant"])
    with open(cfg["out"], "w", encoding="utf-8", newline="") as fh:
        write_records(fh, records, cfg)
    eligible = [r for r in records if r.eligible]
    missing = [r.n for r in eligible if r.rep_count == 0]
    payload = {"config": cfg, "rows": len(records), "eligible": len(eligible), "exceptional": len(missing), "exceptions": missing[:100]}
    lines = [f"wrote {len(records)} rows to {cfg['out']}", f"eligible {len(eligible)}, without a representation {len(missing)}"]
    if lo == hi // 2 + 1:
        bound = theorem_bound(hi, Y, cfg["variant"]) if Y > 0 else math.inf
        payload["bound"] = bound
        lines.append(f"bound (constant 1) {bound:.6g}, ratio {len(missing) / bound:.6g}")
    _emit(args, payload, lines)
    return 0


def cmd_exceptional(args) -> int:
    s = exceptional_scan(args.x, args.ymax, "four" if args.four else "three")
    payload = {
        "X": s.X,
        "Y": s.Y,
        "variant": s.variant,
        "eligible": s.eligible_count,
        "exceptional": s.exceptional_count,
        "bound": s.bound_value,
        "ratio": s.ratio,
        "exceptions": s.exceptions,
        "unrepresentable": s.unrepresentable,
    }
    lines = [
        f"E(X={s.X:g}; Y={s.Y}) = {s.exceptional_count} of {s.eligible_count} eligible ({s.variant} squares)",
        f"bound {s.bound_value:.6g}, ratio {s.ratio:.6g}",
    ]
    if s.exceptions:
        lines.append("exceptions: " + " ".join(map(str, s.exceptions[:50])) + (" ..." if len(s.exceptions) > 50 else ""))
    _emit(args, payload, lines)
    return 0


def cmd_sseries(args) -> int:
    n, W = args.n, args.w
    payload: dict = {"n": n, "W": W}
    lines = []
    if args.mode in ("add", "both"):
        payload["additive"] = singular_series_additive(n, W)
        lines.append(f"S(n; W)  = {payload['additive']!r}")
    if args.mode in ("mult", "both"):
        value, table = singular_series_multiplicative(n, W)
        payload["multiplicative"] = value
        payload["factors"] = [{"p": r.p, "H": r.H, "partial_sum": r.partial_sum, "method": r.method.value} for r in table.rows]
        lines.append(f"S*(n; W) = {value!r}")
        lines += [f"  p={r.p:<5} H={r.H:<3} {r.partial_sum!r:<22} {r.method.value}" for r in table.rows]
    _emit(args, payload, lines)
    return 0


def cmd_major(args) -> int:
    X = args.x if args.x is not None else float(args.n)
    params = ThetaParams.from_x(X, args.ymax)
    r = major_arc_value(args.n, params, args.w)
    payload = {"n": r.n, "X": X, "W": args.w, "Y": args.ymax, "integral": r.integral, "imag": r.imag,
               "sseries": r.sseries, "J": r.J, "main_term": r.main_term, "difference": r.difference}
    lines = [
        f"major-arc integral {r.integral:.9g} (imag {r.imag:.2e})",
        f"S(n; W) {r.sseries:.9g}  J(n; W) {r.J:.9g}  product {r.main_term:.9g}",
        f"difference {r.difference:.6g}  (Y/W = {args.ymax / args.w:.6g})",
    ]
    _emit(args, payload, lines)
    return 0


def cmd_moment(args) -> int:
    r = minor_arc_moment(ThetaParams.from_x(args.x, args.ymax), args.w)
    payload = {"X": r.X, "Y": r.Y, "W": r.W, "minor": r.minor, "full": r.full, "bound": r.bound, "ratio": r.ratio, "grid": r.n_points}
    lines = [f"minor arcs {r.minor:.9g}  whole circle {r.full:.9g}", f"bound XY log X + XY^2/W = {r.bound:.6g}, ratio {r.ratio:.6g}"]
    _emit(args, payload, lines)
    return 0


def cmd_sphere(args) -> int:
    metric = Metric(args.metric)
    if args.range is not None:
        lo, hi = args.range
        rows = spacing_scan(lo, hi, metric)
        fractions = violation_fractions(rows, [0.5, 1, 2, 5, 10, 100])
        payload = {"metric": metric.value, "rows": [r.__dict__ for r in rows], "violations": fractions}
        lines = ["n,count,m,normalised"] + [
            f"{r.n},{r.count},{'' if r.spacing is None else repr(r.spacing)},{'' if r.normalised is None else repr(r.normalised)}" for r in rows
        ]
        lines += [f"# fraction above C={c:g}: {f:.4f}" for c, f in fractions.items()]
        _emit(args, payload, lines)
        return 0
    if args.n is None:
        raise UsageError("sphere needs n or --range A..B")
    n = args.n
    count = sum(orbit_size(*map(int, r)) for r in canonical_points(n))
    g = max_inner_product(n) if count >= 2 else None
    m = None if g is None else spacing_from_inner(n, g, metric)
    payload = {"n": n, "count": count, "metric": metric.value, "max_inner": g, "spacing": m}
    _emit(args, payload, [f"{count} points", f"min spacing ({metric.value}): {m if m is not None else '-'}"])
    return 0


def cmd_gaps(args) -> int:
    g = two_square_gap_scan(args.limit)
    payload = {"limit": g.limit, "count": g.count, "max_gap": g.max_gap, "ratio": g.ratio, "histogram": g.histogram}
    lines = [f"{g.count} sums of two squares up to {g.limit}", f"max gap {g.max_gap}, ratio to (1/4) log X: {g.ratio:.6g}"]
    lines += [f"  {k:>4} {v}" for k, v in g.histogram.items()]
    _emit(args, payload, lines)
    return 0


def cmd_verify(args) -> int:
    report = run_suite(args.suite, seed=args.seed)
    if args.json:
        print(report.to_json())
    else:
        for c in report.checks:
            status = "PASS" if c.passed else ("ERROR" if c.error else "FAIL")
            print(f"{status:5} {c.name}: {c.detail}" + (f" [{c.error}]" if c.error else ""))
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(report.to_json() + "\n")
    return report.exit_code


# --- parser -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="microsq", description="Sums of three squares with a small square: counts, densities and arc integrals.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print machine-readable output")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("repr", parents=[common], help="count (and list) representations")
    p.add_argument("n", type=int)
    p.add_argument("--ymax", type=int, required=True)
    p.add_argument("--enumerate", action="store_true")
    p.add_argument("--allow-zero", action="store_true")
    p.set_defaults(func=cmd_repr)

    p = sub.add_parser("scan", parents=[common], help="per-n survey rows as CSV")
    p.add_argument("--config", help="key=value file; flags override it")
    p.add_argument("--xmin", type=int)
    p.add_argument("--xmax", type=int)
    p.add_argument("--ymax", type=int)
    p.add_argument("--w", type=float, help="also compute both singular series at this W")
    p.add_argument("--four", action="store_true", help="two microsquares")
    p.add_argument("--out")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("exceptional", parents=[common], help="exact exceptional count over (X/2, X]")
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--ymax", type=int, required=True)
    p.add_argument("--four", action="store_true")
    p.set_defaults(func=cmd_exceptional)

    p = sub.add_parser("sseries", parents=[common], help="truncated singular series")
    p.add_argument("n", type=int)
    p.add_argument("--w", type=float, required=True)
    p.add_argument("--mode", choices=("add", "mult", "both"), default="both")
    p.set_defaults(func=cmd_sseries)

    p = sub.add_parser("major", parents=[common], help="major-arc integral against S(n; W) J(n; W)")
    p.add_argument("n", type=int)
    p.add_argument("--w", type=float, required=True)
    p.add_argument("--ymax", type=int, required=True)
    p.add_argument("--x", type=float, help="scale X (default n)")
    p.set_defaults(func=cmd_major)

    p = sub.add_parser("moment", parents=[common], help="minor-arc moment of |f^4 g^2|")
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--ymax", type=int, required=True)
    p.add_argument("--w", type=float, required=True)
    p.set_defaults(func=cmd_moment)

    p = sub.add_parser("sphere", parents=[common], help="lattice points and minimum spacing")
    p.add_argument("n", type=int, nargs="?")
    p.add_argument("--range", type=_range, metavar="A..B")
    p.add_argument("--metric", choices=[m.value for m in Metric], default=Metric.EUCLID.value)
    p.set_defaults(func=cmd_sphere)

    p = sub.add_parser("gaps", parents=[common], help="gaps between sums of two squares")
    p.add_argument("--limit", type=int, required=True)
    p.set_defaults(func=cmd_gaps)

    p = sub.add_parser("verify", parents=[common], help="run oracle suites")
    p.add_argument("--suite", choices=("lemmas", "orthogonality", "truncation", "all"), default="all")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--report", help="also write the JSON report here")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ValueError, TypeError) as exc:
        print(f"microsq: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InvariantViolation as exc:
        print(f"microsq: invariant violated: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except (ConvergenceError, MemoryError, OSError) as exc:
        print(f"microsq: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
