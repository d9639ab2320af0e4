import argparse
import logging
import sys

from modules.cli import (
    EVAL_KINDS,
    cmd_estimate,
    cmd_eval,
    cmd_figure,
    cmd_simulate,
    cmd_study,
    cmd_validate,
)
from modules.mcstudy import default_seed
from modules.utils import ConvergenceError, DomainError, NoSolutionError, configure_logging

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_NUMERICAL = 3


def _kmax(text):
    if text == "auto":
        return text
    try:
        return int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected an integer or 'auto', got {text!r}") from exc


def add_model_flags(parser):
    parser.add_argument("--model", choices=["gen1", "gen2"], required=True)
    parser.add_argument("--nu", type=float, required=True)
    parser.add_argument("--delta", type=float, help="gen1 shape (default 1)")
    parser.add_argument("--gamma", type=float, help="gen2 exponent")
    parser.add_argument("--lambda", dest="lam", type=float, required=True)


def add_output_flags(parser):
    parser.add_argument("--format", choices=["csv", "json"], default="csv")
    parser.add_argument("--out", help="write here instead of stdout")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="main.py",
        description="Fractional Poisson renewal processes: evaluate, simulate, estimate, validate.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate densities, probabilities, transforms, moments")
    p.add_argument("kind", choices=EVAL_KINDS)
    add_model_flags(p)
    p.add_argument("--t", type=float, nargs="+")
    p.add_argument("--s", type=float, nargs="+")
    p.add_argument("--q", type=float, nargs="+")
    p.add_argument("--kmax", type=_kmax, default="auto")
    p.add_argument("--paths", type=int, default=10_000, help="gen2 pmf paths")
    p.add_argument("--seed", type=int)
    add_output_flags(p)

    p = sub.add_parser("simulate", help="simulate renewal paths")
    add_model_flags(p)
    p.add_argument("--paths", type=int, default=1)
    stop = p.add_mutually_exclusive_group(required=True)
    stop.add_argument("--horizon", type=float)
    stop.add_argument("--events", type=int)
    p.add_argument("--seed", type=int)
    add_output_flags(p)

    p = sub.add_parser("estimate", help="method-of-moments fit of waiting times")
    p.add_argument("--model", choices=["gen1", "gen2"], required=True)
    p.add_argument("--input", default="-", help="CSV of waiting times, '-' for stdin")
    add_output_flags(p)

    p = sub.add_parser("validate", help="run the numerical self-checks")
    p.add_argument("--suite", choices=["specfun", "dist", "process", "all"], default="all")
    add_output_flags(p)

    p = sub.add_parser("study", help="Monte Carlo bias/RMSE study")
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--threads", dest="workers", type=int, help="worker processes")
    p.add_argument("--seed", type=int)
    p.add_argument("--format", choices=["csv", "json"], default="csv")

    p = sub.add_parser("figure", help="density grids of the two waiting-time families")
    p.add_argument("--which", type=int, choices=[1, 2], required=True)
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int)
    add_output_flags(p)
    return parser


def dispatch(args):
    seed = default_seed() if getattr(args, "seed", None) is None else args.seed
    model = {
        "model": getattr(args, "model", None), "nu": getattr(args, "nu", None),
        "lam": getattr(args, "lam", None), "delta": getattr(args, "delta", None),
        "gamma": getattr(args, "gamma", None),
    }
    if args.command == "eval":
        return cmd_eval(args.kind, t=args.t, s=args.s, q=args.q, kmax=args.kmax,
                        paths=args.paths, seed=seed, **model)
    if args.command == "simulate":
        return cmd_simulate(paths=args.paths, horizon=args.horizon, events=args.events,
                            seed=seed, **model)
    if args.command == "estimate":
        if args.input == "-":
            return cmd_estimate(args.model, sys.stdin)
        with open(args.input, newline="") as stream:
            return cmd_estimate(args.model, stream)
    if args.command == "validate":
        return cmd_validate(args.suite)
    if args.command == "study":
        return cmd_study(args.config, args.out, workers=args.workers, seed=args.seed)
    return cmd_figure(args.which, seed=seed, samples=args.samples)


def emit(record, args):
    target = getattr(args, "out", None)
    if args.command == "study" or target is None:
        record.write(sys.stdout, args.format)
        return
    with open(target, "w", newline="", encoding="utf-8") as stream:
        record.write(stream, args.format)


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code

    configure_logging(logging.DEBUG if args.verbose else logging.INFO)
    try:
        record = dispatch(args)
    except (DomainError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (ConvergenceError, NoSolutionError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL

    emit(record, args)
    if record.extra.get("passed") is False:
        return EXIT_NUMERICAL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
