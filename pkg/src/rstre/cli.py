"""``rstre`` command-line entry point.

Subcommands::

    rstre sweep-diameter  [--config FILE] [--gamma G] [--n-grid N,N,..] ...
    rstre sweep-repeat    ...
    rstre component-stats ...
    rstre verify {oracles,lemmas,scaling} [--seed S] [--budget B]

Exit codes: 0 success, 1 failed check, 2 usage or configuration error,
3 I/O error.
"""
from __future__ import annotations

import argparse
import os
import sys

from .config import parse_config, serialize_config, config_hash
from .errors import ConfigError, InvalidArgumentError
from .experiments import (
    BASE_FIELDS,
    COMPONENT_STATS_FIELDS,
    extra_fields,
    run_component_stats,
    run_diameter_sweep,
    run_repeat_sweep,
)
from .records import FORMATS, render_records, write_records

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_IO = 3

SWEEPS = {
    "sweep-diameter": ("diameter", run_diameter_sweep),
    "sweep-repeat": ("repeat", run_repeat_sweep),
    "component-stats": ("component-stats", run_component_stats),
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_output(p):
    p.add_argument("--out", help="data file to write (default: stdout)")
    p.add_argument("--format", choices=FORMATS, default="csv")
    p.add_argument("--threads", help="worker threads (default: $RSTRE_THREADS or 1)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rstre", description="Spanning trees in a two-point random environment.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in SWEEPS:
        p = sub.add_parser(name)
        p.add_argument("--config", help="flat TOML config file")
        p.add_argument("--mode", help="must agree with the subcommand if given")
        p.add_argument("--gamma")
        grid = p.add_mutually_exclusive_group()
        grid.add_argument("--n", help="single system size")
        grid.add_argument("--n-grid", help="comma-separated increasing sizes")
        p.add_argument("--trials")
        p.add_argument("--seed")
        p.add_argument("--sampler")
        _add_output(p)
    p = sub.add_parser("verify")
    p.add_argument("suite", choices=("oracles", "lemmas", "scaling"))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=float, default=1.0,
                   help="fraction of the full Monte Carlo budget (below 1 runs reduced checks)")
    _add_output(p)
    return parser


def _threads(args):
    value = args.threads if args.threads is not None else os.environ.get("RSTRE_THREADS")
    return value


def _sweep(args) -> int:
    mode, runner = SWEEPS[args.command]
    if args.mode is not None and args.mode != mode:
        raise ConfigError(f"mode {args.mode!r} conflicts with subcommand {args.command}", "--mode")
    flags = {"mode": mode, "gamma": args.gamma, "n": args.n, "n_grid": args.n_grid,
             "trials": args.trials, "seed": args.seed, "sampler": args.sampler,
             "threads": _threads(args)}
    cfg = parse_config(args.config, flags)
    rows = runner(cfg)
    if mode == "component-stats":
        header = list(COMPONENT_STATS_FIELDS)
    else:
        header = list(BASE_FIELDS) + list(extra_fields(cfg))
    if args.out is None:
        sys.stdout.write(render_records(rows, args.format, header))
    else:
        # thread count changes nothing in the output, so it stays out of the hash
        meta = {"config_hash": config_hash(cfg.replace(threads=1)),
                "config": serialize_config(cfg.replace(threads=1)),
                "subcommand": args.command}
        write_records(rows, args.format, args.out, header, meta)
    return EXIT_OK


def _verify(args) -> int:
    from .verification import run_suite

    if args.budget <= 0:
        raise ConfigError("budget must be positive", "--budget")
    threads = _threads(args)
    try:
        threads = int(threads) if threads is not None else 1
    except ValueError as exc:
        raise ConfigError(f"malformed value {threads!r} for threads", "--threads") from exc
    lines = []

    def emit(line):
        lines.append(line)
        print(line, flush=True)

    results = run_suite(args.suite, seed=args.seed, budget=args.budget, emit=emit, threads=threads)
    failed = [r.name for r in results if not r.passed]
    emit(f"{len(results) - len(failed)}/{len(results)} checks passed")
    if args.out is not None:
        rows = [{"check": r.name, "passed": r.passed, "measured": str(r.measured),
                 "threshold": r.threshold} for r in results]
        write_records(rows, args.format, args.out, ["check", "passed", "measured", "threshold"],
                      {"suite": args.suite, "seed": args.seed, "budget": args.budget})
    return EXIT_CHECK_FAILED if failed else EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "verify":
            return _verify(args)
        return _sweep(args)
    except (ConfigError, InvalidArgumentError) as exc:
        print(f"rstre: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"rstre: error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
