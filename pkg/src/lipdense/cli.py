"""Command line interface: ``lipdense <subcommand> ...``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import catalog, harness
from .lipschitz import SampledFunction, flatness_profile, lip_of, load_function_csv
from .metric import (MAX_POINTS, MetricError, diameter, greedy_net, load_space,
                     snowflake)
from .trace import ConvergenceTrace, Verdict


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma list of integers, got {text!r}")


def _floats(text: str) -> list[float]:
    return [float(x) for x in text.split(",") if x.strip()]


def _space(args):
    if Path(args.space).is_file():
        space = load_space(args.space)
    else:
        space = catalog.make_space(args.space, args.seed)
    if space.size > MAX_POINTS:
        raise MetricError(f"{space.size} points exceeds the exact-scan limit "
                          f"of {MAX_POINTS}")
    return space


def cmd_validate_space(args) -> int:
    space = _space(args)
    print(json.dumps({"points": space.size, "base": space.base_label,
                      "diameter": diameter(space), "valid": True}))
    return 0


def cmd_lipconst(args) -> int:
    space = _space(args)
    alpha = args.alpha if args.alpha is not None else 1.0
    if Path(args.fn).is_file():
        f = load_function_csv(args.fn, space)
    else:
        f = catalog.space_function(args.fn, space, alpha, args.seed)
    metric = snowflake(space, alpha)
    out = {"alpha": alpha, "lip": lip_of(f.values, metric.dist)}
    if args.thresholds:
        prof = flatness_profile(SampledFunction(metric, f.values),
                                _floats(args.thresholds))
        out["flatness"] = prof.as_rows()
    print(json.dumps(out))
    return 0


def cmd_net(args) -> int:
    space = _space(args)
    metric = snowflake(space, args.alpha) if args.alpha else space
    net = greedy_net(metric, args.radius)
    print(json.dumps({"radius": net.radius,
                      "centers": [space.labels[c] for c in net.centers]}))
    return 0


def cmd_approx(args) -> int:
    indices = args.n or args.degrees or args.orders
    if indices is None:
        indices = {"cone": list(range(1, 9)), "bernstein": [4, 16, 64, 256],
                   "fejer": [4, 16, 64, 256]}[args.construction]
    grid = args.grid
    if grid is None:
        grid = 512 if args.construction == "fejer" else 256
    cfg = harness.ExperimentConfig(
        construction=args.construction, fn=args.fn, alpha=args.alpha,
        indices=indices, space=args.space, grid=grid, seed=args.seed,
        out=args.out, plot=args.plot)
    bundle = harness.run_experiment(cfg)
    for v in bundle.verdicts:
        if not v.passed or args.verbose:
            print(v.line())
    out = cfg.out_dir()
    print(f"{'PASS' if bundle.passed else 'FAIL'}: {len(bundle.verdicts)} verdicts; "
          f"trace {out / (cfg.construction + '_trace.csv')}")
    return 0 if bundle.passed else 1


def cmd_report(args) -> int:
    data = harness.load_report(args.report)
    verdicts = [Verdict(**v) for v in data["verdicts"]]
    for v in verdicts:
        print(v.line())
    if args.plot:
        harness.emit_plot(ConvergenceTrace.from_dict(data["trace"]), args.plot)
    return 0 if all(v.passed for v in verdicts) else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lipdense", description=__doc__)
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def space_args(sp, required=True):
        sp.add_argument("--space", required=required,
                        help="space JSON file or generator (euclidean:k:N, "
                             "ultrametric:N, interval:N, torus:N)")
        sp.add_argument("--seed", type=int)

    sp = sub.add_parser("validate-space", help="check a space is a metric space")
    space_args(sp)
    sp.set_defaults(func=cmd_validate_space)

    sp = sub.add_parser("lipconst", help="Lipschitz/Hölder constant of a function")
    space_args(sp)
    sp.add_argument("--fn", required=True, help="CSV (label,value) or catalog name")
    sp.add_argument("--alpha", type=float)
    sp.add_argument("--thresholds", help="comma list for a flatness profile")
    sp.set_defaults(func=cmd_lipconst)

    sp = sub.add_parser("net", help="greedy cover by open balls")
    space_args(sp)
    sp.add_argument("--radius", type=float, required=True)
    sp.add_argument("--alpha", type=float, help="radius measured in d**alpha")
    sp.set_defaults(func=cmd_net)

    sp = sub.add_parser("approx", help="run a density experiment")
    sp.add_argument("construction", choices=harness.CONSTRUCTIONS)
    space_args(sp, required=False)
    sp.add_argument("--fn", required=True)
    sp.add_argument("--alpha", type=float, required=True)
    sp.add_argument("--n", type=_ints)
    sp.add_argument("--degrees", type=_ints)
    sp.add_argument("--orders", type=_ints)
    sp.add_argument("--grid", type=int)
    sp.add_argument("--out", help=f"output directory (default ${harness.OUT_ENV} or .)")
    sp.add_argument("--plot", help="write an SVG chart to this path")
    sp.set_defaults(func=cmd_approx)

    sp = sub.add_parser("report", help="print verdicts from a JSON report")
    sp.add_argument("report")
    sp.add_argument("--plot")
    sp.set_defaults(func=cmd_report)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except (ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
