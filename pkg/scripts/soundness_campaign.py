#!/usr/bin/env python3
"""Run a large seeded soundness campaign and write the JSON summary.

Usage:
    python3 scripts/soundness_campaign.py --trials 5000 --seed 0 \
        --out campaign.json
"""

import argparse
import json
import sys
import time

from quadbound.campaign import FAMILIES, run_verify


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--trials", type=int, default=5000)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--family", choices=FAMILIES, default="mixed")
    parser.add_argument("--out", default=None, help="write the summary here")
    args = parser.parse_args()

    start = time.monotonic()
    summary = run_verify(args.trials, seed=args.seed, family=args.family)
    elapsed = time.monotonic() - start

    text = json.dumps(summary, indent=2)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    print(f"{args.trials} trials, {summary['paths_checked']} bound checks, "
          f"{len(summary['violations'])} violations, "
          f"min slack {summary['min_slack']}, {elapsed:.1f}s", file=sys.stderr)
    return 0 if not summary["violations"] else 1


if __name__ == "__main__":
    sys.exit(main())
