"""Command-line entry point.

    lab <experiment> --config FILE [--seed S] [--out DIR] [--workers W]

Experiments: params, simulate, lemma1, theorem1, theorem2, collapse,
variance-curve, hurst.  Flags override file keys.  Exit codes: 0 when the
experiment passes (or has no pass rule), 1 when a declared pass rule
fails, 2 on configuration errors.
"""

from __future__ import annotations

import argparse
import sys

from .config import EXPERIMENTS, ConfigError, load_config
from .experiments import run, write_artifacts


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lab",
        description="Heavy-traffic limit laboratory for Poisson ON/OFF queues.",
    )
    sub = parser.add_subparsers(dest="experiment", required=True, metavar="experiment")
    for name in EXPERIMENTS:
        p = sub.add_parser(name, help=f"run the {name} experiment")
        p.add_argument("--config", required=True, help="JSON config file")
        p.add_argument("--seed", type=int, default=None, help="override the root seed")
        p.add_argument("--out", default=None, help="override the output directory")
        p.add_argument("--workers", type=int, default=None, help="override the worker count")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    overrides = {
        "experiment": args.experiment,
        "seed": args.seed,
        "out_dir": args.out,
        "workers": args.workers,
    }
    try:
        cfg = load_config(args.config, overrides)
        result = run(cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    write_artifacts(result, cfg.out_dir)
    print("\n".join(result.summary))
    print(f"artifacts written to {cfg.out_dir}/")
    if result.passed is None:
        return 0
    return 0 if result.passed else 1


if __name__ == "__main__":
    sys.exit(main())
