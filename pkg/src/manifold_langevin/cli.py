"""Command-line front end: generate data, run benchmarks, self-check.

Exit codes: 0 success, 1 input or configuration error, 2 numeric failure,
3 check-suite failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .bench import load_config, run_experiment, write_dataset
from .checks import run_checks
from .errors import InputError, NumericError

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_NUMERIC = 2
EXIT_CHECK = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def _build_parser() -> _Parser:
    parser = _Parser(
        prog="manifold-langevin",
        description="Fisher-metric Langevin and Hamiltonian MCMC benchmark runner.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="write a synthetic observation CSV")
    gen.add_argument("--model", required=True,
                     choices=["rayleigh", "banana", "weibull", "gaussian", "logreg"])
    gen.add_argument("--params", required=True,
                     help="comma-separated true parameters (flat layout for gaussian)")
    gen.add_argument("--n", required=True, type=int, help="observation count")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", required=True, help="output CSV path")
    gen.add_argument("--feature-low", type=float, default=-1.0,
                     help="logreg feature lower bound")
    gen.add_argument("--feature-high", type=float, default=1.0,
                     help="logreg feature upper bound")

    run = sub.add_parser("run", help="run a benchmark experiment from a config")
    run.add_argument("--config", required=True, help="experiment JSON path")
    run.add_argument("--out", default=None, help="output directory (overrides config)")
    run.add_argument("--seed", type=int, default=None, help="master seed override")
    run.add_argument("--chains", type=int, default=None, help="chain count override")
    run.add_argument("--threads", type=int, default=None,
                     help="worker threads (default: MANIFOLD_LANGEVIN_THREADS or 1)")
    run.add_argument("--no-plots", action="store_true", help="skip trace figures")

    chk = sub.add_parser("check", help="run the oracle self-check suite")
    chk.add_argument("--mc-draws", type=int, default=20000,
                     help="draws for the Monte-Carlo metric checks")
    chk.add_argument("--corrupt", action="store_true",
                     help="negative control: corrupt a metric derivative and expect failure")
    return parser


def _cmd_generate(args) -> int:
    try:
        params = [float(v) for v in args.params.split(",") if v.strip() != ""]
    except ValueError as exc:
        raise InputError(f"--params: {exc}") from exc
    if not params:
        raise InputError("--params: at least one value is required")
    extras = {}
    if args.model == "logreg":
        extras = {"feature_low": args.feature_low, "feature_high": args.feature_high}
    table = write_dataset(
        args.model, args.out, true_parameters=params, n=args.n, seed=args.seed, **extras
    )
    print(f"wrote {table.shape[0]} observations x {table.shape[1]} columns to {args.out}")
    for j in range(table.shape[1]):
        col = table[:, j]
        print(f"  column {j + 1}: mean {col.mean():.6g}  variance {col.var(ddof=1) if col.size > 1 else 0.0:.6g}")
    return EXIT_OK


def _cmd_run(args) -> int:
    cfg = load_config(args.config)
    if args.seed is not None:
        from dataclasses import replace

        cfg = replace(cfg, seed=args.seed)
    if args.chains is not None:
        from dataclasses import replace

        cfg = replace(cfg, chains=args.chains)
    out_dir = args.out or cfg.out_dir
    if out_dir is None:
        raise InputError("no output directory: pass --out or set out_dir in the config")
    threads = args.threads
    if threads is None:
        threads = int(os.environ.get("MANIFOLD_LANGEVIN_THREADS", "1"))
    report, _ = run_experiment(
        cfg,
        out_dir=out_dir,
        threads=max(1, threads),
        render_plots=not args.no_plots,
        base_dir=Path(args.config).resolve().parent,
    )
    print(f"model {report['model']['kind']}  chains {report['chains']}  length {report['chain_length']}")
    for method in report["methods"]:
        agg = method["aggregate"]
        warm = agg["warmup"]
        warm_txt = (
            f"{warm['min']},{warm['median']},{warm['max']}" if warm else "not reached"
        )
        acc = agg["acceptance_pct"]
        print(
            f"  {method['name']:8s} warmup {warm_txt:22s} "
            f"acceptance % {acc['min']:.2f},{acc['median']:.2f},{acc['max']:.2f} "
            f"failed {agg['chains_failed']}/{agg['chains_total']}"
        )
    print(f"report written to {Path(out_dir) / 'report.json'}")
    return EXIT_OK


def _cmd_check(args) -> int:
    results = run_checks(corrupt=args.corrupt, mc_draws=args.mc_draws)
    width = max(len(r.name) for r in results)
    failures = 0
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        failures += 0 if r.passed else 1
        print(f"[{status}] {r.name:<{width}}  {r.detail}")
    if failures:
        print(f"{failures} check(s) failed")
        return EXIT_CHECK
    print(f"all {len(results)} checks passed")
    return EXIT_OK


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "generate":
            return _cmd_generate(args)
        if args.command == "run":
            return _cmd_run(args)
        if args.command == "check":
            return _cmd_check(args)
        raise InputError(f"unknown command {args.command!r}")
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NumericError as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
