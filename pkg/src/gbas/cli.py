"""Command-line front end: plan, estimate, lowerbound, experiment.

Exit codes: 0 success, 1 usage or domain error, 2 data error,
3 draw budget exhausted, 4 experiment check failure.
"""

import argparse
import inspect
import os
import secrets
import sys

from . import harness
from .analysis import exact_ci, min_k_exact, plan, wald_lower_bound
from .distributions import RngStream, SyntheticBernoulli, open_source
from .errors import BudgetExhausted, DataError, DomainError
from .estimators import gbas_literal

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_BUDGET = 3
EXIT_CHECK = 4

OUTPUT_DIR_ENV = "GBAS_OUTPUT_DIR"
DEFAULT_BUDGET = 10**9

# rng lanes used by `estimate`
_LANE_EXP, _LANE_BERN, _LANE_UNIT = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(args, record, out=None):
    out = out or sys.stdout
    if args.json:
        out.write(harness.dumps(record) + "\n")
        return
    width = max(len(k) for k in record)
    for key, v in record.items():
        if isinstance(v, float):
            v = f"{v:.10g}"
        out.write(f"{key:<{width}}  {v}\n")


def _seed(args):
    if args.seed is None:
        args.seed = secrets.randbits(32)
        print(f"seed: {args.seed}", file=sys.stderr)
    return args.seed


def cmd_plan(args):
    pl = plan(args.epsilon, args.delta, method=args.method)
    rec = pl.to_dict()
    if args.p is not None:
        rec["p"] = args.p
        rec["expected_draws"] = pl.expected_draws(args.p)
    _emit(args, rec)
    return EXIT_OK


def cmd_estimate(args):
    if args.unit_interval and args.input is None:
        raise DomainError("--unit-interval needs --input")
    k = args.k if args.k is not None else min_k_exact(args.epsilon, args.delta).k
    seed = _seed(args)
    budget = None if args.budget == 0 else args.budget
    rng = RngStream(seed, lane=_LANE_EXP)
    handle = None
    try:
        if args.input is not None:
            unit_rng = RngStream(seed, lane=_LANE_UNIT) if args.unit_interval else None
            source, handle = open_source(args.input, unit_interval=args.unit_interval, rng=unit_rng)
            label = "stdin" if args.input == "-" else args.input
        elif args.p is not None:
            if not 0.0 <= args.p <= 1.0:
                raise DomainError(f"p must lie in [0, 1], got {args.p!r}")
            source = SyntheticBernoulli(RngStream(seed, lane=_LANE_BERN), args.p)
            label = f"synthetic(p={args.p!r})"
        else:
            raise DomainError("give a source: --p for a synthetic stream or --input PATH ('-' for stdin)")
        out = gbas_literal(source, rng, k, budget=budget)
    finally:
        if handle is not None:
            handle.close()
    ci = exact_ci(out.p_hat, k, args.level)
    rec = {
        "p_hat": out.p_hat,
        "k": k,
        "draws": out.draws,
        "r_total": out.r_total,
        "ci_lo": ci.lo,
        "ci_hi": ci.hi,
        "level": ci.level,
        "source": label,
        "unit_interval": bool(args.unit_interval),
        "seed": seed,
    }
    _emit(args, rec)
    return EXIT_OK


def cmd_lowerbound(args):
    wb = wald_lower_bound(args.epsilon, args.delta, args.p0)
    rec = {"epsilon": args.epsilon, "delta": args.delta, "p0": args.p0}
    rec.update(wb.to_dict())
    _emit(args, rec)
    return EXIT_OK


_SUITE_ARGS = {
    "p": "p", "k": "k", "n": "replicates", "seed": "seed", "p_alt": "p_alt", "estimator": "estimator",
    "alpha": "alpha", "parallel": "parallel", "level": "level", "epsilon": "epsilon", "delta": "delta",
}


def _suite_params(args):
    fn = harness.SUITES[args.suite]
    params = {}
    for name, par in inspect.signature(fn).parameters.items():
        if name == "backend":
            continue
        v = getattr(args, _SUITE_ARGS[name])
        if v is None:
            if par.default is inspect.Parameter.empty:
                raise DomainError(f"suite {args.suite!r} needs --{_SUITE_ARGS[name].replace('_', '-')}")
            continue
        params[name] = v
    return params


def _output_target(args, default_name):
    if args.out is not None:
        return args.out
    directory = os.environ.get(OUTPUT_DIR_ENV) or "."
    os.makedirs(directory, exist_ok=True)
    return os.path.join(directory, default_name)


def _write_text(path, text):
    if path == "-":
        sys.stdout.write(text)
        return []
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
    return [path]


def cmd_experiment(args):
    seed = _seed(args)
    if args.suite == "replicate":
        config = harness.ExperimentConfig(
            estimator=args.estimator, p=args.p if args.p is not None else float("nan"),
            replicates=args.replicates, seed=seed, k=args.k, epsilon=args.epsilon, delta=args.delta,
            n=args.sample_size, level=args.level, budget=args.budget, alpha=args.alpha,
            parallel=args.parallel, output_format=args.format,
        )
        report = harness.run_replications(config)
        target = _output_target(args, f"replicate-{args.estimator}-seed{seed}.{args.format}")
        if target == "-" and args.format == "json":
            written = _write_text("-", report.to_json())
        else:
            written = harness.write_report(report, target, args.format)
        summary = {"suite": "replicate", "passed": report.passed,
                   "checks": {n: c.to_dict() for n, c in report.checks.items()}, "files": written}
        passed = report.passed
    else:
        result = harness.run_suite(args.suite, **_suite_params(args))
        target = _output_target(args, f"{args.suite}-seed{seed}.json")
        written = _write_text(target, result.to_json(include_records=args.records))
        if args.format == "csv" and target != "-":
            stem = os.path.splitext(target)[0]
            for i, rep in enumerate(result.reports):
                written += harness.write_report(rep, f"{stem}.{i}.csv", "csv")
        summary = {"suite": args.suite, "passed": result.passed,
                   "checks": {n: c.to_dict() for n, c in result.checks.items()}, "files": written}
        if result.table is not None:
            summary["table"] = result.table
        passed = result.passed
    summary["seed"] = seed
    out = sys.stderr if args.out == "-" else sys.stdout
    if args.json:
        out.write(harness.dumps(summary) + "\n")
    else:
        out.write(f"suite {summary['suite']} seed {seed}: {'PASS' if passed else 'FAIL'}\n")
        for name, c in summary["checks"].items():
            mark = "ok  " if c["passed"] else "FAIL"
            out.write(f"  {mark} {name}: {c['statistic']:.6g} {c['relation']} {c['threshold']:.6g}\n")
        for row in summary.get("table", []):
            out.write("  " + ", ".join(f"{k}={v:.6g}" if isinstance(v, float) else f"{k}={v}"
                                       for k, v in row.items()) + "\n")
        for path in written:
            out.write(f"  wrote {path}\n")
    return EXIT_OK if passed else EXIT_CHECK


def _positive_int(text):
    try:
        v = int(float(text)) if "e" in text.lower() else int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text!r}")
    return v


def build_parser():
    parser = _Parser(prog="gbas", description="Gamma Bernoulli approximation: planning, estimation, experiments.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p):
        p.add_argument("--json", action="store_true", help="machine-readable JSON output")

    p = sub.add_parser("plan", help="choose the success target k for an (epsilon, delta) guarantee")
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--delta", type=float, default=0.05)
    p.add_argument("--method", choices=("exact", "bound"), default="exact")
    p.add_argument("--p", type=float, help="report expected draws k/p at this p")
    common(p)
    p.set_defaults(func=cmd_plan)

    p = sub.add_parser("estimate", help="run GBAS on a synthetic, file or stdin Bernoulli stream")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--k", type=int, help="success target")
    g.add_argument("--epsilon", type=float, help="plan k from (epsilon, delta) instead")
    p.add_argument("--delta", type=float, default=0.05)
    src = p.add_mutually_exclusive_group()
    src.add_argument("--p", type=float, help="synthetic Bern(p) stream")
    src.add_argument("--input", help="file of values, one per line ('-' for stdin)")
    p.add_argument("--unit-interval", action="store_true", help="input holds [0,1] values, not 0/1")
    p.add_argument("--seed", type=_positive_int)
    p.add_argument("--budget", type=_positive_int, default=DEFAULT_BUDGET, help="draw cap; 0 means unlimited")
    p.add_argument("--level", type=float, default=0.95)
    common(p)
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("lowerbound", help="lower bounds on expected draws of any (epsilon, delta) scheme")
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--p0", type=float, required=True)
    common(p)
    p.set_defaults(func=cmd_lowerbound)

    p = sub.add_parser("experiment", help="Monte Carlo validation suites")
    p.add_argument("--suite", required=True, choices=("replicate",) + tuple(harness.SUITES))
    p.add_argument("--estimator", choices=harness.ESTIMATORS, default="gbas-literal")
    p.add_argument("--p", type=float)
    p.add_argument("--p-alt", type=float, help="second p for the p-invariance suite")
    p.add_argument("--k", type=int)
    p.add_argument("--epsilon", type=float)
    p.add_argument("--delta", type=float)
    p.add_argument("--level", type=float)
    p.add_argument("--sample-size", type=_positive_int, help="n for the fixed-k estimator")
    p.add_argument("--n", dest="replicates", type=_positive_int, default=100_000, help="replicates")
    p.add_argument("--seed", type=_positive_int)
    p.add_argument("--parallel", type=_positive_int, default=1)
    p.add_argument("--alpha", type=float, help="KS significance (default 1e-3)")
    p.add_argument("--budget", type=_positive_int)
    p.add_argument("--format", choices=harness.FORMATS, default="json")
    p.add_argument("--out", help=f"output path ('-' for stdout); default under ${OUTPUT_DIR_ENV} or .")
    p.add_argument("--records", action="store_true", help="include per-replicate records in suite JSON")
    common(p)
    p.set_defaults(func=cmd_experiment)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    if getattr(args, "alpha", 1.0) is None:
        args.alpha = 1e-3
    try:
        return args.func(args)
    except BudgetExhausted as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (DataError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (DomainError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def run():
    sys.exit(main())
