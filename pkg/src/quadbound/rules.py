"""The three-point quadrature rule family and its integral identities.

A rule Q(lam, mu) approximates the mean integral of f over [a, b] by

    (1 - mu) f(a) + lam f(b) + (mu - lam) f((a+b)/2),

and ``lhs_value`` returns the signed deficit Q - mean integral.  The deficit
equals two half-interval integrals of (weight - t) f'(ta + (1-t)b) --
``identity_rhs_half`` -- and, in a second parametrization, a single-interval
integral ``identity_rhs_folded``; both right-hand sides are computed numerically
so each identity is a testable equality.

Note the substitution orientation: t = 0 maps to b and t = 1 to a.  This is
deliberate; do not "fix" it.
"""

from __future__ import annotations

from dataclasses import dataclass

from .expr import ExprNode, as_function, evaluate
from .oracle import DEFAULT_TOL, Interval, integrate

__all__ = [
    "RuleParams",
    "LMRule",
    "NAMED_RULES",
    "named_rule",
    "rule_from_lm",
    "lhs_value",
    "lhs_value_folded",
    "identity_rhs_half",
    "identity_rhs_folded",
    "rule_for_folded",
    "folded_params_for_rule",
]


@dataclass(frozen=True)
class RuleParams:
    """Rule weights (lam, mu).  Any reals satisfy the integral identity; the
    error bounds additionally require 0 <= lam <= 1/2 <= mu <= 1."""

    lam: float
    mu: float

    @property
    def bound_admissible(self) -> bool:
        return 0 <= self.lam <= 0.5 <= self.mu <= 1


@dataclass(frozen=True)
class LMRule:
    """(m, ell) parametrization: lam = ell/m, mu = 1 - ell/m."""

    m: float
    ell: float

    def __post_init__(self):
        if self.m == 0:
            raise ValueError("m must be nonzero")

    @property
    def bound_admissible(self) -> bool:
        return self.m > 0 and self.m >= 2 * self.ell >= 0


NAMED_RULES = {
    "midpoint": LMRule(1, 0),
    "trapezoid": LMRule(2, 1),
    "avg3": LMRule(3, 1),
    "avg-mid": LMRule(4, 1),
    "fifth-13": LMRule(5, 1),
    "fifth-221": LMRule(5, 2),
    "simpson": LMRule(6, 1),
}


def named_rule(name: str) -> LMRule:
    try:
        return NAMED_RULES[name]
    except KeyError:
        raise ValueError(
            f"unknown rule {name!r}; expected one of {', '.join(NAMED_RULES)}"
        )


def rule_from_lm(lm: LMRule) -> RuleParams:
    lam = lm.ell / lm.m
    return RuleParams(lam, 1 - lam)


def lhs_value(rule: RuleParams, f: ExprNode, interval: Interval,
              mean_integral: float) -> float:
    """Signed deficit (1-mu) f(a) + lam f(b) + (mu-lam) f(mid) - mean_integral."""
    fa = evaluate(f, float(interval.a))
    fb = evaluate(f, float(interval.b))
    fm = evaluate(f, float(interval.midpoint))
    return (1 - rule.mu) * fa + rule.lam * fb + (rule.mu - rule.lam) * fm - mean_integral


def identity_rhs_half(rule: RuleParams, fprime: ExprNode, interval: Interval,
                    tol: float = DEFAULT_TOL) -> float:
    """Half-interval identity right-hand side for the deficit of ``rule``."""
    a, b = float(interval.a), float(interval.b)
    fp = as_function(fprime)

    def left(t):
        return (rule.lam - t) * fp(t * a + (1 - t) * b)

    def right(t):
        return (rule.mu - t) * fp(t * a + (1 - t) * b)

    li = integrate(left, Interval(0.0, 0.5), tol)
    ri = integrate(right, Interval(0.5, 1.0), tol)
    return (b - a) * (li.value + ri.value)


def lhs_value_folded(lam: float, mu: float, f: ExprNode, interval: Interval,
                 mean_integral: float) -> float:
    """Deficit in the second parametrization:
    (lam f(a) + mu f(b))/2 + ((2-lam-mu)/2) f(mid) - mean_integral."""
    fa = evaluate(f, float(interval.a))
    fb = evaluate(f, float(interval.b))
    fm = evaluate(f, float(interval.midpoint))
    return (lam * fa + mu * fb) / 2 + (2 - lam - mu) / 2 * fm - mean_integral


def identity_rhs_folded(lam: float, mu: float, fprime: ExprNode, interval: Interval,
                    tol: float = DEFAULT_TOL) -> float:
    """Single-interval identity right-hand side matching ``lhs_value_folded``."""
    a, b = float(interval.a), float(interval.b)
    mid = (a + b) / 2
    fp = as_function(fprime)

    def integrand(t):
        return ((1 - lam - t) * fp(t * a + (1 - t) * mid)
                + (mu - t) * fp(t * mid + (1 - t) * b))

    r = integrate(integrand, Interval(0.0, 1.0), tol)
    return (b - a) / 4 * r.value


def rule_for_folded(lam: float, mu: float) -> RuleParams:
    """The half-interval rule whose deficit equals the (lam, mu) deficit of
    the second parametrization (substitute lam -> mu/2, mu -> 1 - lam/2)."""
    return RuleParams(mu / 2, 1 - lam / 2)


def folded_params_for_rule(rule: RuleParams) -> tuple[float, float]:
    """Inverse of :func:`rule_for_folded`."""
    return 2 * (1 - rule.mu), 2 * rule.lam
