"""Command-line runner: ``widthlab {width,trace,verify,growth,vc,bounds}``.

Exit codes: 0 when every check passes, 1 on a check violation, 2 on a
usage or parse error.  Reports contain no timestamps, so a fixed seed gives
byte-identical output.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import checks
from .bounds import BoundParams, ConditionNotMet, interval_union_count, interval_union_family_trace, max_one_runs, remark_bound, sauer_phi, theorem_bound, vc_dimension
from .canon import BadShape, procedure_g, procedure_q
from .enumeration import GrowthSearchConfig, RealizabilityInstance, format_sets, grid_oracle_patterns, growth_search, hyper_trace_exact, realizable_patterns, uniform_grid
from .hyper import Threshold
from .model import Domain, StepFunction, WidthLabError, as_scalar, canonical_order, format_scalar, parse_collection
from .width import ConstantWidth, fplus, point_width

GROWTH_COLUMNS = ["m", "ell", "gamma", "B", "K", "Gamma_best", "bound", "gap", "mode", "seed", "evaluated", "budget_exceeded", "ok"]


class UsageError(Exception):
    pass


def _fmt(x) -> str:
    if isinstance(x, Fraction):
        return format_scalar(x)
    if isinstance(x, int):
        return format_scalar(Fraction(x))
    if x == float("inf"):
        return "inf"
    if x == float("-inf"):
        return "-inf"
    return str(x)


def _scalar(text: str, name: str) -> Fraction:
    try:
        return as_scalar(text)
    except WidthLabError as exc:
        raise UsageError(f"--{name}: {exc}") from exc


def _points(text: str) -> list[Fraction]:
    return [_scalar(p, "points") for p in text.split(",") if p.strip()]


def _m_values(text: str) -> list[int]:
    """``6``, ``2,4,6`` or the inclusive range ``2:8``."""
    try:
        if ":" in text:
            lo, hi = (int(v) for v in text.split(":"))
            return list(range(lo, hi + 1))
        return [int(v) for v in text.split(",")]
    except ValueError as exc:
        raise UsageError(f"--m: cannot parse {text!r}") from exc


def _threshold(args) -> Threshold:
    gamma = _scalar(args.gamma, "gamma")
    if gamma <= 0:
        raise UsageError("--gamma must be positive")
    return Threshold(gamma, strict=args.strict)


def _emit(args, text: str):
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _csv(rows: list[dict], columns: list[str]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def cmd_width(args) -> int:
    try:
        h = StepFunction.from_json(Path(args.function_file).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {args.function_file}: {exc}") from exc
    f = fplus(h)
    rows = []
    for x in _points(args.points):
        w = point_width(h, x)
        fx = f(x)
        rows.append({"x": _fmt(x), "width": _fmt(w), "f": _fmt(fx), "abs_f": _fmt(abs(fx))})
    doc = {"function": h.to_dict(), "constant": isinstance(f, ConstantWidth), "rows": rows}
    _emit(args, _json(doc) if args.format == "json" else _csv(rows, ["x", "width", "f", "abs_f"]))
    return 0


def cmd_trace(args) -> int:
    if not args.collection:
        raise UsageError("trace needs --collection 'p,q,...;p,q,...'")
    domain = Domain(_scalar(args.B, "B"))
    t = _threshold(args)
    zeta = canonical_order(parse_collection(args.collection))
    for p in zeta.support:
        domain.check(p)
    g = procedure_g(zeta)
    inst = RealizabilityInstance(zeta.support, t, domain)
    patterns = realizable_patterns(inst)
    delta = _scalar(args.delta, "delta") if args.delta else t.gamma / 4
    doc = {
        "B": _fmt(domain.B),
        "gamma": _fmt(t.gamma),
        "mode": t.mode,
        "ell": zeta.ell,
        "m": zeta.m,
        "N": len(zeta),
        "collection": format_sets(zeta.sets),
        "realizable_patterns": len(patterns),
        "oracle_agrees": patterns == grid_oracle_patterns(inst, delta),
        "Gamma": hyper_trace_exact(zeta, t, domain),
        "Gamma_G": hyper_trace_exact(g, t, domain),
        "G": format_sets(g.sets),
    }
    try:
        q = procedure_q(g, zeta.ell, zeta.m)
        doc["Gamma_QG"] = hyper_trace_exact(q, t, domain)
        doc["QG"] = format_sets(q.sets)
    except BadShape as exc:
        doc["Gamma_QG"] = None
        doc["QG_error"] = str(exc)
    params = BoundParams(domain.B, t.gamma, zeta.ell, zeta.m)
    doc["K"] = params.K
    doc["bound"] = theorem_bound(params)
    doc["ok"] = doc["Gamma"] <= doc["bound"] and doc["oracle_agrees"]
    if args.format == "csv":
        _emit(args, _csv([doc], sorted(doc)))
    else:
        _emit(args, _json(doc))
    return 0 if doc["ok"] else 1


def cmd_verify(args) -> int:
    if args.budget < 1:
        raise UsageError("--budget must be at least 1")
    results = checks.run_suite(seed=args.seed, budget=args.budget)
    doc = {
        "seed": args.seed,
        "budget": args.budget,
        "passed": all(r.passed for r in results),
        "checks": [r.to_dict() for r in results],
    }
    if args.format == "csv":
        rows = [{"check": r.name, "passed": r.passed} for r in results]
        _emit(args, _csv(rows, ["check", "passed"]))
    else:
        _emit(args, _json(doc))
    return 0 if doc["passed"] else 1


def cmd_growth(args) -> int:
    B = _scalar(args.B, "B")
    gamma = _scalar(args.gamma, "gamma")
    grid = _points(args.grid) if args.grid else None
    rows = []
    for m in _m_values(args.m):
        try:
            cfg = GrowthSearchConfig(
                ell=args.ell, m=m, gamma=gamma, B=B, mode=args.mode, budget=args.budget, seed=args.seed,
                grid=grid if grid else (uniform_grid(B, args.grid_q) if args.grid_q else None), strict=args.strict,
            )
        except WidthLabError as exc:
            raise UsageError(str(exc)) from exc
        res = growth_search(cfg)
        rows.append(
            {
                "m": m, "ell": args.ell, "gamma": _fmt(gamma), "B": _fmt(B), "K": cfg.params.K,
                "Gamma_best": res.gamma_best, "bound": res.bound, "gap": res.gap, "mode": args.mode,
                "seed": args.seed, "evaluated": res.evaluated, "budget_exceeded": res.budget_exceeded, "ok": res.ok,
            }
        )
        if args.format == "json":
            rows[-1]["best"] = format_sets(res.best) if res.best else None
            rows[-1]["violations"] = [{"collection": format_sets(s), "Gamma": g} for s, g in res.violations[:5]]
    if args.format == "json":
        _emit(args, _json({"rows": rows}))
    else:
        _emit(args, _csv(rows, GROWTH_COLUMNS))
    return 0 if all(r["ok"] for r in rows) else 1


def cmd_vc(args) -> int:
    n = _m_values(args.m)[0]
    B = _scalar(args.B, "B")
    t = _threshold(args)
    K = args.K if args.K is not None else BoundParams(B, t.gamma, 1, max(n, 1)).K
    ground = tuple(B * Fraction(2 * i + 1, 2 * n) for i in range(n))
    domain = Domain(B)

    def theta_trace(points):
        return realizable_patterns(RealizabilityInstance(points, t, domain))

    doc = {
        "B": _fmt(B),
        "gamma": _fmt(t.gamma),
        "mode": t.mode,
        "K": K,
        "n": n,
        "ground": [_fmt(p) for p in ground],
        "vc_interval_unions": vc_dimension(interval_union_family_trace(K), ground),
        "vc_theta_class": vc_dimension(theta_trace, ground),
        "theta_trace_on_ground": len(theta_trace(ground)),
        "interval_union_count": interval_union_count(K, n),
        "sauer_phi": sauer_phi(2 * K, n),
        "max_one_runs": max_one_runs(B, t.gamma, t.strict),
    }
    _emit(args, _json(doc) if args.format == "json" else _csv([doc], sorted(k for k in doc if k != "ground")))
    return 0


def cmd_bounds(args) -> int:
    rows = []
    for m in _m_values(args.m):
        try:
            p = BoundParams(_scalar(args.B, "B"), _scalar(args.gamma, "gamma"), args.ell, m)
        except WidthLabError as exc:
            raise UsageError(str(exc)) from exc
        try:
            remark = repr(remark_bound(p))
        except ConditionNotMet:
            remark = ""
        rows.append(
            {
                "m": m, "ell": p.ell, "gamma": _fmt(p.gamma), "B": _fmt(p.B), "K": p.K,
                "phi": sauer_phi(2 * p.K, m - p.ell), "theorem_bound": theorem_bound(p), "remark_bound": remark,
            }
        )
    cols = ["m", "ell", "gamma", "B", "K", "phi", "theorem_bound", "remark_bound"]
    _emit(args, _json({"rows": rows}) if args.format == "json" else _csv(rows, cols))
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--B", default="1", help="domain bound, e.g. 1 or 7/2")
    common.add_argument("--gamma", default="1/4", help="width threshold")
    common.add_argument("--ell", type=int, default=1, help="sample size")
    common.add_argument("--m", default="6", help="collection size: 6, 2,4,6 or 2:8")
    common.add_argument("--mode", choices=("exhaustive", "canonical", "random"), default="canonical")
    common.add_argument("--budget", type=int, default=1000)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--delta", default=None, help="grid oracle spacing (default gamma/4)")
    common.add_argument("--out", default=None, help="write the report here instead of stdout")
    common.add_argument("--format", choices=("csv", "json"), default=None)
    strict = common.add_mutually_exclusive_group()
    strict.add_argument("--strict", dest="strict", action="store_true", default=True, help="theta is |f| > gamma (default)")
    strict.add_argument("--non-strict", dest="strict", action="store_false", help="theta is |f| >= gamma")

    parser = argparse.ArgumentParser(prog="widthlab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("width", parents=[common], help="widths of a step function at points")
    p.add_argument("function_file")
    p.add_argument("--points", required=True, help="comma separated rationals")
    p.set_defaults(func=cmd_width, default_format="csv")

    p = sub.add_parser("trace", parents=[common], help="exact hyperclass trace of one collection")
    p.add_argument("--collection", help="samples separated by ';', points by ','")
    p.set_defaults(func=cmd_trace, default_format="json")

    p = sub.add_parser("verify", parents=[common], help="run the verification suite")
    p.set_defaults(func=cmd_verify, default_format="json")

    p = sub.add_parser("growth", parents=[common], help="growth-function search against the bound")
    p.add_argument("--grid", default=None, help="explicit support grid, comma separated")
    p.add_argument("--grid-q", type=int, default=None, help="use the grid {k B / q : 0 < k < q}")
    p.set_defaults(func=cmd_growth, default_format="csv")

    p = sub.add_parser("vc", parents=[common], help="VC dimension of interval unions and of the theta class")
    p.add_argument("--K", type=int, default=None, help="number of intervals (default floor(B / (2 gamma)))")
    p.set_defaults(func=cmd_vc, default_format="json")

    p = sub.add_parser("bounds", parents=[common], help="bound formulas")
    p.set_defaults(func=cmd_bounds, default_format="csv")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.format is None:
        args.format = args.default_format
    try:
        return args.func(args)
    except (UsageError, WidthLabError) as exc:
        print(f"widthlab {args.command}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
