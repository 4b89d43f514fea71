"""Argument parsing and the ``wabc`` entry point."""

from __future__ import annotations

__all__: tuple[str, ...] = ()

import argparse
import json
import logging
import sys
from typing import TYPE_CHECKING, Any

from wabc.cli._commands import (
    BENCH_METHODS,
    cmd_bench,
    cmd_distance,
    cmd_evaluate,
    cmd_mh,
    cmd_simulate,
    cmd_smc,
)
from wabc.cli._config import ConfigError, config_errors, parse_floats
from wabc.metric import GroundMetric
from wabc.models import MODEL_REGISTRY
from wabc.setup_package import DEFAULT_SEED, WORKERS_ENV
from wabc.smc import METHODS, DistanceSpec
from wabc.timeseries import EmbeddingSpec

if TYPE_CHECKING:
    from collections.abc import Sequence

logger = logging.getLogger("wabc")

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


def _options(pairs: Sequence[str]) -> dict[str, Any]:
    """``KEY=VALUE`` pairs; values are read as JSON when possible."""
    options: dict[str, Any] = {}
    for pair in pairs:
        key, sep, raw = pair.partition("=")
        if not sep or not key:
            msg = f"options must look like KEY=VALUE, got {pair!r}"
            raise ConfigError(msg)
        try:
            options[key] = json.loads(raw)
        except json.JSONDecodeError:
            options[key] = raw
    return options


def _ints(text: str) -> tuple[int, ...]:
    values = parse_floats(text, "sizes")
    if any(v != int(v) for v in values):
        msg = f"expected comma-separated integers, got {text!r}"
        raise ConfigError(msg)
    return tuple(int(v) for v in values)


#####################################################################
# Handlers


def _run_simulate(args: argparse.Namespace) -> None:
    cmd_simulate(
        args.model,
        parse_floats(args.theta, "theta"),
        args.n,
        args.out,
        seed=args.seed,
        options=_options(args.option),
    )


def _distance_spec(args: argparse.Namespace) -> DistanceSpec:
    with config_errors("distance options"):
        embedding = EmbeddingSpec(
            args.embedding,
            lam=args.lam,
            aspect=parse_floats(args.aspect, "aspect"),  # type: ignore[arg-type]
            lags=_ints(args.lags),
            stride=args.stride,
            model=args.residual_model,
        )
        metric = GroundMetric(args.metric, p=args.p)
        extra = {
            k: getattr(args, k)
            for k in ("subsample", "summary", "zeta", "bandwidth", "bits")
            if getattr(args, k) is not None
        }
        return DistanceSpec(
            args.method,
            embedding=embedding,
            metric=metric,
            max_sweeps=args.max_sweeps,
            **extra,
        )


def _run_distance(args: argparse.Namespace) -> None:
    spec = _distance_spec(args)
    theta = None if args.theta is None else parse_floats(args.theta, "theta")
    value = cmd_distance(
        args.x, args.y, spec, theta=theta, seed=args.seed, record=args.record
    )
    print(f"{value:.17g}")


def _run_smc(args: argparse.Namespace) -> None:
    meta = cmd_smc(args.config, workers=args.workers, output=args.out)
    print(json.dumps(meta, sort_keys=True))


def _run_mh(args: argparse.Namespace) -> None:
    meta = cmd_mh(args.config, workers=args.workers, output=args.out)
    print(json.dumps(meta, sort_keys=True))


def _run_evaluate(args: argparse.Namespace) -> None:
    report = cmd_evaluate(
        args.reference,
        args.particles,
        trace_dir=args.trace_dir,
        seed=args.seed,
        out=args.out,
    )
    print(json.dumps(report, sort_keys=True))


def _run_bench(args: argparse.Namespace) -> None:
    table = cmd_bench(
        args.method,
        _ints(args.sizes),
        args.d,
        repetitions=args.repetitions,
        seed=args.seed,
        out=args.out,
    )
    for n, seconds, ratio in table:
        print(f"n={int(n)} seconds={seconds:.6g} ratio={ratio:.3g}")


#####################################################################
# Parser


def build_parser() -> argparse.ArgumentParser:
    """The ``wabc`` argument parser."""
    parser = argparse.ArgumentParser(
        prog="wabc",
        description="Approximate Bayesian computation with transport distances.",
    )
    parser.add_argument(
        "--log-level",
        default="WARNING",
        choices=("DEBUG", "INFO", "WARNING", "ERROR"),
        help="Logging level (default: %(default)s).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="Simulate a data set from a model.")
    p.add_argument("--model", required=True, choices=sorted(MODEL_REGISTRY))
    p.add_argument("--theta", required=True, help="Comma-separated parameters.")
    p.add_argument("--n", type=int, required=True, help="Number of observations.")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--out", required=True, help="Output CSV file.")
    p.add_argument(
        "--option",
        action="append",
        default=[],
        metavar="KEY=VALUE",
        help="Model option, e.g. T=300. May be repeated.",
    )
    p.set_defaults(handler=_run_simulate)

    p = sub.add_parser("distance", help="Distance between two data files.")
    p.add_argument("x", help="Reference (observed) data file.")
    p.add_argument("y", help="Compared data file.")
    p.add_argument("--method", default="wasserstein", help=f"One of {METHODS}.")
    p.add_argument("--embedding", default="none")
    p.add_argument("--lam", type=float, default=None, help="Curve time weight.")
    p.add_argument("--aspect", default="1,1", help="H,V aspect ratio.")
    p.add_argument("--lags", default="1", help="Comma-separated delay lags.")
    p.add_argument("--stride", type=int, default=1)
    p.add_argument("--residual-model", default=None)
    p.add_argument("--theta", default=None, help="Parameters for residuals.")
    p.add_argument("--metric", default="euclidean")
    p.add_argument("--p", type=float, default=1.0, help="Transport order.")
    p.add_argument("--subsample", type=int, default=None)
    p.add_argument("--summary", default=None)
    p.add_argument("--zeta", type=float, default=None)
    p.add_argument("--bandwidth", type=float, default=None)
    p.add_argument("--bits", type=int, default=None)
    p.add_argument("--max-sweeps", type=int, default=100)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--record", default=None, help="Write a JSON record here.")
    p.set_defaults(handler=_run_distance)

    for name, handler, text in (
        ("smc", _run_smc, "Run adaptive ABC-SMC from a JSON configuration."),
        ("mh", _run_mh, "Run Metropolis-Hastings from a JSON configuration."),
    ):
        p = sub.add_parser(name, help=text)
        p.add_argument("config", help="JSON run configuration.")
        p.add_argument(
            "--workers",
            type=int,
            default=None,
            help=f"Worker threads (default: ${WORKERS_ENV}, else 1).",
        )
        p.add_argument("--out", default=None, help="Override the output directory.")
        p.set_defaults(handler=handler)

    p = sub.add_parser("evaluate", help="W1 of particles against reference draws.")
    p.add_argument("reference", help="Reference draws (chain or particle CSV).")
    p.add_argument("particles", nargs="?", default=None)
    p.add_argument("--trace-dir", default=None, help="Run directory with history/.")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--out", default=None, help="Per-step CSV (with --trace-dir).")
    p.set_defaults(handler=_run_evaluate)

    p = sub.add_parser("bench", help="Time a distance over a grid of sizes.")
    p.add_argument("--method", default="hilbert", choices=BENCH_METHODS)
    p.add_argument("--sizes", default="256,512,1024", help="Comma-separated n.")
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--repetitions", type=int, default=3)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--out", required=True, help="Timing CSV.")
    p.set_defaults(handler=_run_bench)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    """Run the ``wabc`` command line.

    Returns
    -------
    int
        0 on success, 1 on a runtime failure, 2 on a usage or configuration
        error.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE

    logging.basicConfig(
        level=args.log_level,
        format="%(asctime)s %(name)s %(levelname)s: %(message)s",
    )
    try:
        args.handler(args)
    except ConfigError as exc:
        print(f"wabc {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # noqa: BLE001
        logger.debug("command failed", exc_info=True)
        print(f"wabc {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    return EXIT_OK
