#!/usr/bin/env python3
"""Run a stability sweep over truncation N and noise level and write the
CSV report plus diagnostic plots.

Usage:
    python3 scripts/run_sweep.py [--config CONFIG.json] [--out DIR] [--seed S]

Without a config this runs the default 2D elastic experiment (unit Lame
constants, canonical bump source, N in {2, 4, 8}, noise in {0, 1%}).
"""

import argparse
import sys

from wavesource.experiment import (ExperimentConfig, load_config,
                                   run_stability_sweep, emit_outputs,
                                   report_to_csv, ConfigError)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--config", help="JSON experiment configuration")
    parser.add_argument("--out", default="out/sweep", help="output directory")
    parser.add_argument("--seed", type=int, help="override the config seed")
    args = parser.parse_args(argv)
    try:
        cfg = load_config(args.config) if args.config else ExperimentConfig()
        if args.seed is not None:
            cfg.seed = args.seed
        report = run_stability_sweep(cfg)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    print(report_to_csv(report), end="")
    for path in emit_outputs(report, args.out):
        print(f"wrote {path}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
