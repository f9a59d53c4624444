"""Command-line front-end.

Subcommands: generate, order, run, sweep, walk, fit. Exit codes: 0 on
success, 1 when a single run ends with an unhandled timeout, 2 on
validation errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .driver import DEFAULT_BUDGET, incremental_reoptimize
from .errors import GraphError, ParameterError, SizeLimitError
from .graphs import (FamilyKind, GraphFamily, compute_metrics, family_from_dict,
                     format_edge_list, generate, is_bipartite)
from .harness import (ExperimentConfig, fit_exponent, make_order, run_sweep)
from .optimizers import Algorithm, OptimizerConfig
from .orders import OrderKind, format_order
from .walks import (RandomWalkSpec, WalkBoundary, exact_hitting_times,
                    expected_absorption_closed_form, expected_two_sided_closed_form,
                    simulate_min_of_eta, tail_check_report)

EXIT_OK = 0
EXIT_TIMEOUT = 1
EXIT_INVALID = 2


def parse_family_spec(spec: str) -> GraphFamily:
    """Parse a compact family spec like "path:n=16" or "depth_k_star:n=13,k=3"."""
    kind, _, rest = spec.partition(":")
    d: dict[str, object] = {"kind": kind.strip()}
    if rest.strip():
        for item in rest.split(","):
            key, sep, value = item.partition("=")
            if not sep:
                raise ParameterError(f"bad family parameter {item!r} (expected key=value)")
            try:
                d[key.strip()] = int(value)
            except ValueError as exc:
                raise ParameterError(f"family parameter {key.strip()!r} must be an integer") from exc
    return family_from_dict(d)


def _write_out(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w") as fh:
            fh.write(text)


def _add_family_arg(p: argparse.ArgumentParser) -> None:
    kinds = ", ".join(k.value for k in FamilyKind)
    p.add_argument("--family", required=True,
                   help=f"family spec, e.g. path:n=16 (kinds: {kinds})")


def _cmd_generate(args: argparse.Namespace) -> int:
    g = generate(parse_family_spec(args.family))
    _write_out(format_edge_list(g), args.out)
    if args.metrics:
        metrics = compute_metrics(g)
        doc = {
            "family": g.family.label() if g.family else None,
            "n": g.n,
            "m": g.m,
            "bipartite": is_bipartite(g) is not None,
            "diameter": metrics.diameter,
            "longest_path": metrics.longest_path,
        }
        sys.stderr.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    return EXIT_OK


def _cmd_order(args: argparse.Namespace) -> int:
    g = generate(parse_family_spec(args.family))
    order = make_order(g, OrderKind(args.kind), seed=args.seed,
                       start=args.start, depth_greedy=args.depth_greedy)
    _write_out(format_order(order), args.out)
    return EXIT_OK


def _cmd_run(args: argparse.Namespace) -> int:
    g = generate(parse_family_spec(args.family))
    order = make_order(g, OrderKind(args.order_kind), seed=args.order_seed,
                       start=args.start, depth_greedy=args.depth_greedy)
    cfg = OptimizerConfig(Algorithm(args.algorithm), lam=args.lam, seed=args.seed)
    stats, state = incremental_reoptimize(
        g, order, cfg, budget=args.budget,
        continue_on_timeout=args.continue_on_timeout, engine=args.engine)
    _write_out(stats.to_json() + "\n", args.out)
    if stats.timeouts > 0 and not state.is_proper():
        return EXIT_TIMEOUT
    return EXIT_OK


def _cmd_sweep(args: argparse.Namespace) -> int:
    with open(args.config) as fh:
        cfg = ExperimentConfig.from_json(fh.read())
    overrides: dict[str, object] = {}
    if args.seed is not None:
        overrides["master_seed"] = args.seed
    if args.reps is not None:
        overrides["repetitions"] = args.reps
    if args.budget is not None:
        overrides["budget"] = args.budget
    if args.continue_on_timeout:
        overrides["continue_on_timeout"] = True
    if overrides:
        d = cfg.to_dict()
        d.update(overrides)
        cfg = ExperimentConfig.from_dict(d)
    result = run_sweep(cfg)
    out_csv = cfg.out_csv
    out_json = cfg.out_json
    if args.out is not None:
        out_csv = args.out + ".csv"
        out_json = args.out + ".json"
    if out_csv is None and out_json is None:
        sys.stdout.write(result.to_csv())
        return EXIT_OK
    if out_csv is not None:
        _write_out(result.to_csv(), out_csv)
    if out_json is not None:
        _write_out(result.to_summary_json() + "\n", out_json)
    written = [p for p in (out_csv, out_json) if p is not None]
    sys.stdout.write("wrote " + " ".join(written) + "\n")
    return EXIT_OK


def _walk_exact_report(k: int, x0: int, p: Fraction) -> dict:
    spec = RandomWalkSpec(k=k, x0=x0, p=float(p))
    bounce = exact_hitting_times(spec, convention="bounce")
    push = exact_hitting_times(spec, convention="push")
    two_spec = RandomWalkSpec(k=k, x0=x0, p=float(p), boundary=WalkBoundary.ABSORB_BOTH)
    two = exact_hitting_times(two_spec)
    return {
        "k": k,
        "x0": x0,
        "p": float(p),
        "one_sided_closed_form": float(expected_absorption_closed_form(spec)),
        "one_sided_exact_bounce": float(bounce[x0]),
        "one_sided_exact_push": float(push[x0]),
        "two_sided_closed_form": float(expected_two_sided_closed_form(two_spec)),
        "two_sided_exact": float(two[x0]),
    }


def _cmd_walk(args: argparse.Namespace) -> int:
    doc: dict = {"exact": _walk_exact_report(args.k, args.x0, Fraction(args.p))}
    if args.samples > 0:
        summary = simulate_min_of_eta(args.k, args.eta, args.samples, args.seed)
        doc["simulated"] = {
            "eta": args.eta,
            "samples": args.samples,
            "mean": summary.mean,
            "variance": summary.variance,
        }
        if args.tail_r > 0:
            check = tail_check_report(args.k, args.tail_r, args.samples, args.seed)
            doc["tail_check"] = {
                "r": check.r,
                "threshold": check.threshold,
                "empirical": check.empirical,
                "bound": check.bound,
                "stderr": check.stderr,
                "passed": check.passed,
            }
    _write_out(json.dumps(doc, indent=2, sort_keys=True) + "\n", args.out)
    return EXIT_OK


def _cmd_fit(args: argparse.Namespace) -> int:
    with open(args.csv) as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    if not lines:
        raise ParameterError(f"{args.csv} is empty")
    header = lines[0].split(",")
    try:
        xi = header.index(args.x)
        yi = header.index(args.y)
    except ValueError as exc:
        raise ParameterError(f"CSV is missing column: {exc}") from exc
    fam_i = header.index("family") if "family" in header else None
    grouped: dict[float, list[float]] = {}
    for ln in lines[1:]:
        fields = ln.split(",")
        if args.family is not None and fam_i is not None and fields[fam_i] != args.family:
            continue
        grouped.setdefault(float(fields[xi]), []).append(float(fields[yi]))
    xs = sorted(grouped)
    ys = [sum(grouped[x]) / len(grouped[x]) for x in xs]
    fit = fit_exponent(xs, ys)
    doc = {
        "x": args.x,
        "y": args.y,
        "points": len(xs),
        "slope": fit.slope,
        "intercept": fit.intercept,
        "residual": fit.residual,
    }
    _write_out(json.dumps(doc, indent=2, sort_keys=True) + "\n", args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="increcolor",
        description="incremental 2-coloring reoptimization: graphs, orders, "
                    "runs, sweeps, and random-walk checks")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="emit a graph family as an edge list")
    _add_family_arg(p)
    p.add_argument("--out", default=None, help="output path (default stdout)")
    p.add_argument("--metrics", action="store_true",
                   help="also print size/diameter/longest-path metrics to stderr")
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("order", help="emit an edge insertion order")
    _add_family_arg(p)
    p.add_argument("--kind", default=OrderKind.GENERIC.value,
                   choices=[k.value for k in OrderKind])
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--start", type=int, default=None, help="start vertex for bfs/dfs")
    p.add_argument("--depth-greedy", action="store_true",
                   help="dfs only: always descend to an unvisited neighbor first")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_order)

    p = sub.add_parser("run", help="one incremental reoptimization run (JSON stats)")
    _add_family_arg(p)
    p.add_argument("--order-kind", default=OrderKind.GENERIC.value,
                   choices=[k.value for k in OrderKind])
    p.add_argument("--order-seed", type=int, default=None)
    p.add_argument("--start", type=int, default=None)
    p.add_argument("--depth-greedy", action="store_true")
    p.add_argument("--algorithm", default=Algorithm.GENERIC_RLS.value,
                   choices=[a.value for a in Algorithm])
    p.add_argument("--lam", type=int, default=1, help="offspring / island count")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                   help="per-insertion generation budget")
    p.add_argument("--continue-on-timeout", action="store_true")
    p.add_argument("--engine", default="fast", choices=["fast", "reference"])
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_run)

    p = sub.add_parser("sweep", help="run a sweep from a JSON config (CSV + summary)")
    p.add_argument("--config", required=True, help="path to an experiment config JSON file")
    p.add_argument("--seed", type=int, default=None, help="override master seed")
    p.add_argument("--reps", type=int, default=None, help="override repetitions")
    p.add_argument("--budget", type=int, default=None, help="override budget")
    p.add_argument("--continue-on-timeout", action="store_true")
    p.add_argument("--out", default=None,
                   help="output prefix; writes <prefix>.csv and <prefix>.json")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("walk", help="random-walk hitting-time checks")
    p.add_argument("--k", type=int, required=True, help="interval length")
    p.add_argument("--x0", type=int, default=1, help="start state")
    p.add_argument("--p", default="1", help="per-step move probability (fraction ok)")
    p.add_argument("--eta", type=int, default=1, help="parallel walks for the simulation")
    p.add_argument("--samples", type=int, default=0,
                   help="simulation sample count (0 = exact-only)")
    p.add_argument("--tail-r", type=int, default=0,
                   help="also check the 2^-r tail bound at threshold 2*r*k^2")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_walk)

    p = sub.add_parser("fit", help="fit a log-log exponent to sweep CSV output")
    p.add_argument("--csv", required=True, help="CSV file with the sweep schema")
    p.add_argument("--x", default="n", help="x column (default n)")
    p.add_argument("--y", default="evaluations", help="y column (default evaluations)")
    p.add_argument("--family", default=None, help="restrict rows to one family label")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_fit)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParameterError, GraphError, SizeLimitError, OSError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
