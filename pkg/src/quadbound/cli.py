"""Command-line front end.

Subcommands::

    bound     evaluate one bound instance, emit a JSON/text report
    verify    seeded randomized soundness campaign
    sweep     sweep one axis (lambda, mu, p, q, s) to CSV
    means     check a special-means inequality
    optimize  minimize the bound over p or over the rule weights

Exit codes: 0 success (slack >= 0, certificate valid / no violations),
2 certificate invalid (bound not asserted), 1 anything else.  Output is
byte-identical for identical configuration and seed; the ``timings`` block
therefore reports deterministic work counters, not wall-clock times.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np

from . import bounds, campaign, means
from .convexity import certify_convex
from .expr import ExprError, as_function, differentiate, domain_check, parse
from .oracle import Interval, IntegrationError, integrate
from .rules import LMRule, NAMED_RULES, RuleParams, lhs_value, named_rule, rule_from_lm

__all__ = ["main", "RunConfig"]

SCHEMA = 1


class CliError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    f: Optional[str] = None
    a: Optional[float] = None
    b: Optional[float] = None
    rule: Optional[str] = None
    lam: Optional[float] = None
    mu: Optional[float] = None
    m: Optional[float] = None
    ell: Optional[float] = None
    q: float = 1.0
    p: Optional[float] = None
    trials: int = 1000
    seed: int = 0
    family: str = "mixed"
    axis: Optional[str] = None
    start: Optional[float] = None
    stop: Optional[float] = None
    step: Optional[float] = None
    fmt: str = "json"
    tol: float = 1e-11
    cert_samples: int = 4096
    cert_tol: float = 1e-10
    theorem: Optional[str] = None
    s: Optional[float] = None
    what: str = "p"
    mode: str = "auto"


_CONFIG_KEYS = {
    "bound": ("command", "f", "a", "b", "rule", "lam", "mu", "m", "ell", "q",
              "p", "seed", "tol", "cert_samples", "cert_tol", "fmt"),
    "verify": ("command", "trials", "seed", "family", "tol", "cert_samples",
               "cert_tol", "fmt"),
    "sweep": ("command", "f", "a", "b", "rule", "lam", "mu", "m", "ell", "q",
              "p", "axis", "start", "stop", "step", "tol", "fmt"),
    "means": ("command", "theorem", "m", "ell", "s", "a", "b", "q", "p", "fmt"),
    "optimize": ("command", "f", "a", "b", "rule", "lam", "mu", "m", "ell",
                 "q", "p", "what", "mode", "tol", "fmt"),
}


def _config_dict(cfg: RunConfig) -> dict:
    keys = _CONFIG_KEYS[cfg.command]
    return {k: v for k, v in asdict(cfg).items() if k in keys and v is not None}


def _resolve_rule(cfg: RunConfig, require: bool = True,
                  ) -> tuple[Optional[RuleParams], Optional[str], Optional[LMRule]]:
    """Enforce that exactly one rule spec form was provided."""
    forms = []
    if cfg.rule is not None:
        forms.append("named")
    if cfg.lam is not None or cfg.mu is not None:
        forms.append("lambda/mu")
    if cfg.m is not None or cfg.ell is not None:
        forms.append("m/ell")
    if len(forms) > 1:
        raise CliError(f"give exactly one rule spec form, got {' and '.join(forms)}")
    if not forms:
        if require:
            raise CliError("a rule spec is required: --rule, --lambda/--mu, or --m/--ell")
        return None, None, None
    if cfg.rule is not None:
        lm = named_rule(cfg.rule)
        return rule_from_lm(lm), cfg.rule, None
    if cfg.lam is not None or cfg.mu is not None:
        if cfg.lam is None or cfg.mu is None:
            raise CliError("--lambda and --mu must be given together")
        return RuleParams(cfg.lam, cfg.mu), None, None
    if cfg.m is None or cfg.ell is None:
        raise CliError("--m and --ell must be given together")
    lm = LMRule(cfg.m, cfg.ell)
    return rule_from_lm(lm), None, lm


def _parse_function(cfg: RunConfig):
    if cfg.f is None:
        raise CliError("--f is required")
    if cfg.a is None or cfg.b is None:
        raise CliError("--a and --b are required")
    ast = parse(cfg.f)
    interval = Interval(cfg.a, cfg.b)
    report = domain_check(ast, interval)
    if not report.ok:
        msgs = "; ".join(f"{v.node_source}: {v.reason}" for v in report.violations)
        raise CliError(f"domain error for f on [{cfg.a}, {cfg.b}]: {msgs}")
    # f' needs only the endpoints and the certificate samples (an interior
    # abs kink is fine: |f'| convex covers V-shaped derivatives), so it is
    # checked where it is used rather than over the whole interval.
    deriv = differentiate(ast)
    return ast, deriv, interval


def _endpoint_derivs(deriv, interval: Interval) -> bounds.DerivEndpoints:
    fp = as_function(deriv)
    try:
        return bounds.DerivEndpoints(abs(float(fp(float(interval.a)))),
                                     abs(float(fp(float(interval.b)))))
    except ExprError as exc:
        raise CliError(f"f' is not evaluable at the interval endpoints: {exc}")


def _emit(payload: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(payload, indent=2))
    elif fmt == "text":
        for key, value in payload.items():
            if key in ("schema", "config"):
                continue
            print(f"{key}: {value}")
    else:
        raise CliError(f"unsupported format {fmt!r} for this command")


def _rhs_for(cfg: RunConfig, rule: RuleParams, d: bounds.DerivEndpoints,
             interval: Interval, q: float, p: Optional[float],
             name: Optional[str], lm: Optional[LMRule],
             ) -> tuple[float, Optional[float], str]:
    """Route (q, p) to the right bound formula.  Returns (rhs, effective p,
    formula id); p is chosen by optimize_p when q > 1 and no p was given."""
    if q < 1:
        raise CliError(f"--q must be >= 1, got {q}")
    if q == 1:
        return float(bounds.bound_q1(rule, d, interval)), None, bounds.formula_id(1, None, name, lm)
    if p is None:
        p_star, rhs = bounds.optimize_p(rule, q, d, interval)
        return rhs, p_star, bounds.formula_id(q, p_star, name, lm)
    if not 0 < p <= q:
        raise CliError(f"--p must satisfy 0 < p <= q, got p={p}, q={q}")
    rhs = bounds.bound_pq(rule, bounds.HolderParams(p, q), d, interval)
    return rhs, p, bounds.formula_id(q, p, name, lm)


def cmd_bound(cfg: RunConfig) -> int:
    rule, name, lm = _resolve_rule(cfg)
    ast, deriv, interval = _parse_function(cfg)
    if not rule.bound_admissible:
        raise CliError(
            f"rule (lam={rule.lam}, mu={rule.mu}) is not bound-admissible"
        )
    fp = as_function(deriv)
    d = _endpoint_derivs(deriv, interval)
    cert = certify_convex(lambda x: np.abs(fp(x)) ** cfg.q, interval,
                          samples=cfg.cert_samples, tol=cfg.cert_tol,
                          seed=cfg.seed, function_id=cfg.f, q=cfg.q)
    quad = integrate(as_function(ast), interval, cfg.tol)
    mean = quad.value / (interval.b - interval.a)
    lhs = float(lhs_value(rule, ast, interval, mean))
    rhs, p_eff, fid = _rhs_for(cfg, rule, d, interval, cfg.q, cfg.p, name, lm)
    report = bounds.BoundReport(
        rule=rule, interval=interval, q=cfg.q, p=p_eff, lhs=lhs,
        lhs_abs=abs(lhs), rhs=rhs, slack=rhs - abs(lhs), formula_id=fid,
        certificate=cert,
    )
    payload = {
        "schema": SCHEMA,
        "config": _config_dict(cfg),
        "lhs": report.lhs,
        "lhs_abs": report.lhs_abs,
        "rhs": report.rhs,
        "slack": report.slack,
        "formula_id": report.formula_id,
        "p": report.p,
        "certificate": {
            "valid": cert.valid,
            "samples": cert.samples,
            "max_violation": cert.max_violation,
        },
        "timings": {
            "integrand_evaluations": quad.evaluations,
            "certificate_evaluations": 3 * cert.samples,
        },
    }
    _emit(payload, cfg.fmt)
    if not cert.valid:
        return 2
    return 0 if report.slack >= 0 else 1


def cmd_verify(cfg: RunConfig) -> int:
    if cfg.trials < 1:
        raise CliError(f"--trials must be >= 1, got {cfg.trials}")
    if cfg.family not in campaign.FAMILIES:
        raise CliError(f"--family must be one of {', '.join(campaign.FAMILIES)}")
    summary = campaign.run_verify(cfg.trials, seed=cfg.seed, family=cfg.family,
                                  tol=cfg.tol, cert_samples=cfg.cert_samples,
                                  cert_tol=cfg.cert_tol)
    _emit(summary, cfg.fmt)
    return 0 if not summary["violations"] else 1


_SWEEP_AXES = ("lambda", "mu", "p", "q", "s")
CSV_HEADER = "axis,value,lhs_abs,rhs,slack,formula_id"


def _sweep_grid(cfg: RunConfig) -> list[float]:
    if cfg.start is None or cfg.stop is None or cfg.step is None:
        raise CliError("--from, --to, and --step are required for sweep")
    if cfg.step <= 0:
        raise CliError(f"--step must be positive, got {cfg.step}")
    grid = []
    v = cfg.start
    k = 0
    while v <= cfg.stop + 1e-12 * max(1.0, abs(cfg.stop)):
        grid.append(v)
        k += 1
        v = cfg.start + k * cfg.step
    if not grid:
        raise CliError(f"empty sweep grid: from={cfg.start}, to={cfg.stop}, step={cfg.step}")
    return grid


def cmd_sweep(cfg: RunConfig) -> int:
    if cfg.axis not in _SWEEP_AXES:
        raise CliError(f"--axis must be one of {', '.join(_SWEEP_AXES)}")
    grid = _sweep_grid(cfg)

    if cfg.axis == "s":
        if cfg.f is not None:
            raise CliError("axis 's' sweeps f = x^s; do not pass --f")
        if cfg.a is None or cfg.b is None or cfg.a <= 0:
            raise CliError("axis 's' needs a positive interval: --a > 0 and --b")
        rule, name, lm = _resolve_rule(cfg)
    elif cfg.axis in ("lambda", "mu"):
        if cfg.rule is not None or cfg.m is not None or cfg.ell is not None:
            raise CliError(f"axis {cfg.axis!r} sweeps the rule weights; "
                           "give at most the complementary --lambda/--mu")
        swept_given = cfg.lam if cfg.axis == "lambda" else cfg.mu
        if swept_given is not None:
            raise CliError(f"--{cfg.axis} cannot be fixed while sweeping it")
        name, lm = None, None
        rule = None
    else:
        rule, name, lm = _resolve_rule(cfg)

    rows = []
    if cfg.axis == "s":
        for v in grid:
            if v == 0:
                raise CliError("s = 0 is not a power function; exclude it from the grid")
            scfg = RunConfig(command="bound", f=f"x^{repr(float(v))}",
                             a=cfg.a, b=cfg.b, q=cfg.q, p=cfg.p, tol=cfg.tol)
            ast, deriv, interval = _parse_function(scfg)
            d = _endpoint_derivs(deriv, interval)
            mean = integrate(as_function(ast), interval, cfg.tol).value / interval.width
            lhs = float(lhs_value(rule, ast, interval, mean))
            rhs, _, fid = _rhs_for(cfg, rule, d, interval, cfg.q, cfg.p, name, lm)
            rows.append((v, abs(lhs), rhs, rhs - abs(lhs), fid))
    else:
        ast, deriv, interval = _parse_function(cfg)
        d = _endpoint_derivs(deriv, interval)
        mean = integrate(as_function(ast), interval, cfg.tol).value / interval.width
        for v in grid:
            if cfg.axis == "lambda":
                point_rule = RuleParams(v, cfg.mu if cfg.mu is not None else 1 - v)
                q, p = cfg.q, cfg.p
            elif cfg.axis == "mu":
                point_rule = RuleParams(cfg.lam if cfg.lam is not None else 1 - v, v)
                q, p = cfg.q, cfg.p
            elif cfg.axis == "p":
                point_rule, q, p = rule, cfg.q, v
            else:
                point_rule, q, p = rule, v, cfg.p
            lhs = float(lhs_value(point_rule, ast, interval, mean))
            rhs, _, fid = _rhs_for(cfg, point_rule, d, interval, q, p, name, lm)
            rows.append((v, abs(lhs), rhs, rhs - abs(lhs), fid))

    if cfg.fmt == "csv":
        print(CSV_HEADER)
        for v, lhs_abs, rhs, slack, fid in rows:
            print(f"{cfg.axis},{repr(float(v))},{repr(float(lhs_abs))},"
                  f"{repr(float(rhs))},{repr(float(slack))},{fid}")
    elif cfg.fmt == "json":
        payload = {
            "schema": SCHEMA,
            "config": _config_dict(cfg),
            "rows": [
                {"axis": cfg.axis, "value": float(v), "lhs_abs": float(la),
                 "rhs": float(r), "slack": float(sl), "formula_id": fid}
                for v, la, r, sl, fid in rows
            ],
        }
        print(json.dumps(payload, indent=2))
    else:
        raise CliError(f"unsupported format {cfg.fmt!r} for sweep")
    return 0


_PARTICULAR = {"4.2-particular": "4.2-p1", "4.3-particular": "4.3-p1",
               "4.5-particular": "4.5-p1"}


def cmd_means(cfg: RunConfig) -> int:
    if cfg.theorem is None:
        raise CliError("--theorem is required")
    theorem, q = cfg.theorem, cfg.q
    if theorem in _PARTICULAR:
        theorem, q = _PARTICULAR[theorem], 1.0
    if theorem not in means.MEANS_THEOREMS:
        raise CliError(f"unknown theorem {cfg.theorem!r}; expected one of "
                       f"{', '.join(list(means.MEANS_THEOREMS) + list(_PARTICULAR))}")
    if cfg.m is None or cfg.ell is None:
        raise CliError("--m and --ell are required for means")
    if cfg.a is None or cfg.b is None:
        raise CliError("--a and --b are required")
    gap = means.means_gap(theorem, cfg.m, cfg.ell, cfg.a, cfg.b, s=cfg.s)
    rhs = means.means_bound(theorem, cfg.m, cfg.ell, cfg.a, cfg.b,
                            s=cfg.s, p=cfg.p, q=q)
    slack = rhs - abs(gap)
    payload = {
        "schema": SCHEMA,
        "config": _config_dict(cfg),
        "gap": float(gap),
        "gap_abs": abs(float(gap)),
        "rhs": float(rhs),
        "slack": float(slack),
        "formula_id": f"thm{theorem}",
    }
    _emit(payload, cfg.fmt)
    return 0 if slack >= 0 else 1


def cmd_optimize(cfg: RunConfig) -> int:
    rule, name, lm = _resolve_rule(cfg, require=cfg.what == "p")
    ast, deriv, interval = _parse_function(cfg)
    d = _endpoint_derivs(deriv, interval)
    if cfg.what == "p":
        if not cfg.q > 1:
            raise CliError(f"optimizing p requires --q > 1, got {cfg.q}")
        p_star, rhs_star = bounds.optimize_p(rule, cfg.q, d, interval)
        payload = {
            "schema": SCHEMA,
            "config": _config_dict(cfg),
            "what": "p",
            "p_star": float(p_star),
            "rhs_star": float(rhs_star),
            "formula_id": bounds.formula_id(cfg.q, p_star, name, lm),
        }
    elif cfg.what == "rule":
        mode = cfg.mode
        if mode == "auto":
            if cfg.q == 1:
                mode = "q1"
            elif cfg.p is not None:
                mode = "general"
            else:
                mode = "pq"
        rule_star, rhs_star = bounds.optimize_rule(cfg.q, mode, d, interval, p=cfg.p)
        payload = {
            "schema": SCHEMA,
            "config": _config_dict(cfg),
            "what": "rule",
            "mode": mode,
            "lambda_star": float(rule_star.lam),
            "mu_star": float(rule_star.mu),
            "rhs_star": float(rhs_star),
        }
    else:
        raise CliError(f"--what must be 'p' or 'rule', got {cfg.what!r}")
    _emit(payload, cfg.fmt)
    return 0


def _add_common(sp: argparse.ArgumentParser, with_rule: bool = True) -> None:
    sp.add_argument("--f", help="function source, e.g. 'x^2' or 'ln(x)'")
    sp.add_argument("--a", type=float, help="interval left endpoint")
    sp.add_argument("--b", type=float, help="interval right endpoint")
    if with_rule:
        sp.add_argument("--rule", choices=sorted(NAMED_RULES),
                        help="named rule (one rule spec form only)")
        sp.add_argument("--lambda", dest="lam", type=float, help="rule weight lambda")
        sp.add_argument("--mu", type=float, help="rule weight mu")
        sp.add_argument("--m", type=float, help="rule family parameter m")
        sp.add_argument("--ell", type=float, help="rule family parameter ell")
    sp.add_argument("--q", type=float, default=1.0, help="convexity exponent q >= 1")
    sp.add_argument("--p", type=float, help="Hoelder parameter 0 < p <= q "
                    "(default: optimized when q > 1)")
    sp.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
    sp.add_argument("--tol", type=float, default=1e-11, help="integration tolerance")
    sp.add_argument("--cert-samples", dest="cert_samples", type=int, default=4096)
    sp.add_argument("--cert-tol", dest="cert_tol", type=float, default=1e-10)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quadbound",
        description="Certified error bounds for three-point quadrature rules "
                    "under convex-derivative hypotheses.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("bound", help="evaluate one bound instance")
    _add_common(sp)
    sp.add_argument("--format", dest="fmt", choices=("json", "text"), default="json")

    sp = sub.add_parser("verify", help="seeded randomized soundness campaign")
    sp.add_argument("--trials", type=int, default=1000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--family", choices=campaign.FAMILIES, default="mixed")
    sp.add_argument("--tol", type=float, default=1e-11)
    sp.add_argument("--cert-samples", dest="cert_samples", type=int, default=4096)
    sp.add_argument("--cert-tol", dest="cert_tol", type=float, default=1e-10)
    sp.add_argument("--format", dest="fmt", choices=("json", "text"), default="json")

    sp = sub.add_parser("sweep", help="sweep one axis to CSV")
    _add_common(sp)
    sp.add_argument("--axis", choices=_SWEEP_AXES, required=True)
    sp.add_argument("--from", dest="start", type=float, required=True)
    sp.add_argument("--to", dest="stop", type=float, required=True)
    sp.add_argument("--step", type=float, required=True)
    sp.add_argument("--format", dest="fmt", choices=("csv", "json"), default="csv")

    sp = sub.add_parser("means", help="check a special-means inequality")
    sp.add_argument("--theorem", required=True,
                    help="4.1 | 4.2-p1 | 4.2-pq | 4.2-particular | 4.3-p1 | "
                         "4.3-pq | 4.3-particular | 4.4 | 4.5-p1 | 4.5-pq | "
                         "4.5-particular")
    sp.add_argument("--m", type=float)
    sp.add_argument("--ell", type=float)
    sp.add_argument("--s", type=float)
    sp.add_argument("--a", type=float)
    sp.add_argument("--b", type=float)
    sp.add_argument("--q", type=float, default=1.0)
    sp.add_argument("--p", type=float)
    sp.add_argument("--format", dest="fmt", choices=("json", "text"), default="json")

    sp = sub.add_parser("optimize", help="minimize the bound over p or the rule")
    _add_common(sp)
    sp.add_argument("--what", choices=("p", "rule"), default="p")
    sp.add_argument("--mode", choices=("auto", "q1", "p1", "pq", "general"),
                    default="auto", help="bound formula for --what rule")
    sp.add_argument("--format", dest="fmt", choices=("json", "text"), default="json")

    return parser


_COMMANDS = {
    "bound": cmd_bound,
    "verify": cmd_verify,
    "sweep": cmd_sweep,
    "means": cmd_means,
    "optimize": cmd_optimize,
}


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    fields = {f for f in RunConfig.__dataclass_fields__}
    cfg = RunConfig(**{k: v for k, v in vars(ns).items() if k in fields})
    try:
        return _COMMANDS[cfg.command](cfg)
    except (CliError, ExprError, IntegrationError, campaign.GeneratorExhausted,
            ValueError, OverflowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
