#!/usr/bin/env python3
"""Sweep the symmetric rule family (lam, 1 - lam) for one instance, write the
deficit and the bound per grid point to CSV, and report the coordinate-descent
optimum for comparison.

Usage:
    python3 scripts/rule_family_sweep.py --f "x^2" --a 1 --b 2 --q 1 \
        --steps 101 --out sweep.csv
"""

import argparse
import sys

import numpy as np

from quadbound.bounds import DerivEndpoints, bound_p1, bound_q1, optimize_rule
from quadbound.expr import as_function, differentiate, parse
from quadbound.oracle import Interval, average_value
from quadbound.rules import RuleParams, lhs_value


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--f", default="x^2")
    parser.add_argument("--a", type=float, default=1.0)
    parser.add_argument("--b", type=float, default=2.0)
    parser.add_argument("--q", type=float, default=1.0)
    parser.add_argument("--steps", type=int, default=101)
    parser.add_argument("--out", default=None)
    args = parser.parse_args()

    ast = parse(args.f)
    deriv = differentiate(ast)
    iv = Interval(args.a, args.b)
    fp = as_function(deriv)
    d = DerivEndpoints(abs(float(fp(args.a))), abs(float(fp(args.b))))
    mean = average_value(as_function(ast), iv)

    lines = ["lambda,lhs_abs,rhs,slack"]
    for lam in np.linspace(0.0, 0.5, args.steps):
        rule = RuleParams(float(lam), float(1 - lam))
        lhs = abs(float(lhs_value(rule, ast, iv, mean)))
        rhs = float(bound_q1(rule, d, iv) if args.q == 1
                    else bound_p1(rule, args.q, d, iv))
        lines.append(f"{rule.lam!r},{lhs!r},{rhs!r},{rhs - lhs!r}")
    text = "\n".join(lines)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)

    mode = "q1" if args.q == 1 else "p1"
    best_rule, best = optimize_rule(args.q, mode, d, iv)
    print(f"optimizer: lam={best_rule.lam:.6f} mu={best_rule.mu:.6f} "
          f"rhs={best:.6g}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
