"""Closed-form error bounds for the three-point rule family.

Two master formulas are implemented and everything else dispatches to them:

* ``bound_q1`` -- the |f'|-convex bound, a pair of cubic polynomials in
  (lam, mu).  Written in plain rational arithmetic so Fraction inputs stay
  exact.
* ``bound_pq`` -- the Hoelder (p, q) bound for q > 1, 0 < p <= q, assembled
  per half-interval from the closed-form kernel moments
  ``kernel_moments_closed``.

The specializations (p = 1, p = q, the (m, ell) family, the seven named
rules) are not reimplemented: they route through the master formulas, and
their fully expanded closed forms live in the test suite as golden fixtures
asserting equality with this dispatch.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

from .convexity import ConvexityCertificate
from .oracle import Interval
from .rules import LMRule, RuleParams, named_rule, rule_from_lm

__all__ = [
    "HolderParams",
    "DerivEndpoints",
    "KernelMoments",
    "BoundReport",
    "q1_coefficients",
    "bound_q1",
    "kernel_moments_closed",
    "bound_pq",
    "bound_p1",
    "bound_p_eq_q",
    "bound_named",
    "formula_id",
    "optimize_p",
    "optimize_rule",
]


@dataclass(frozen=True)
class HolderParams:
    """Hoelder exponent pair: q > 1 and q >= p > 0."""

    p: float
    q: float

    def __post_init__(self):
        if not self.q > 1:
            raise ValueError(f"q must be > 1, got {self.q}")
        if not 0 < self.p <= self.q:
            raise ValueError(f"p must satisfy 0 < p <= q, got p={self.p}, q={self.q}")


@dataclass(frozen=True)
class DerivEndpoints:
    """Endpoint derivative magnitudes |f'(a)|, |f'(b)|."""

    da: float
    db: float

    def __post_init__(self):
        if self.da < 0 or self.db < 0:
            raise ValueError("derivative magnitudes must be nonnegative")


@dataclass(frozen=True)
class BoundReport:
    """One evaluated bound instance (slack = rhs - lhs_abs)."""

    rule: RuleParams
    interval: Interval
    q: float
    p: Optional[float]
    lhs: float
    lhs_abs: float
    rhs: float
    slack: float
    formula_id: str
    certificate: Optional[ConvexityCertificate] = field(default=None)


def _require_bound_admissible(rule: RuleParams) -> None:
    if not rule.bound_admissible:
        raise ValueError(
            f"rule (lam={rule.lam}, mu={rule.mu}) is not bound-admissible: "
            "need 0 <= lam <= 1/2 <= mu <= 1"
        )


def q1_coefficients(lam, mu):
    """The two cubics multiplying |f'(a)| and |f'(b)| in the q = 1 bound."""
    ca = 10 - 3 * lam + 8 * lam**3 - 15 * mu + 8 * mu**3
    cb = 8 - 9 * lam + 24 * lam**2 - 8 * lam**3 - 21 * mu + 24 * mu**2 - 8 * mu**3
    return ca, cb


def bound_q1(rule: RuleParams, d: DerivEndpoints, interval: Interval):
    """|f'|-convex bound.  Exact under Fraction inputs."""
    _require_bound_admissible(rule)
    ca, cb = q1_coefficients(rule.lam, rule.mu)
    return (interval.b - interval.a) * (ca * d.da + cb * d.db) / 24


class KernelMoments(NamedTuple):
    hoelder_factor: float
    weight_a: float
    weight_b: float


def kernel_moments_closed(shift: float, side: str, hp: HolderParams) -> KernelMoments:
    """Closed forms of the three half-interval kernel moments.

    ``hoelder_factor`` is the integral of |shift - t|**((q-p)/(q-1)) over the
    half-interval; ``weight_a``/``weight_b`` are the coefficients of
    |f'(a)|**q and |f'(b)|**q in the integral of |shift - t|**p * (t, 1-t)
    weights, already divided by (p+1)(p+2).
    """
    p, q = hp.p, hp.q
    expo = (2 * q - p - 1) / (q - 1)
    if not math.isfinite(expo):
        raise OverflowError(f"Hoelder exponent overflow for q={q}, p={p}")
    denom = (p + 1) * (p + 2)
    if side == "left":
        lam = shift
        if not 0 <= lam <= 0.5:
            raise ValueError(f"left shift must lie in [0, 1/2], got {lam}")
        h = (q - 1) / (2 * q - p - 1) * ((0.5 - lam) ** expo + lam**expo)
        wa = (0.5 * (p + 1 + 2 * lam) * (0.5 - lam) ** (p + 1) + lam ** (p + 2)) / denom
        wb = (0.5 * (p + 3 - 2 * lam) * (0.5 - lam) ** (p + 1)
              + (p + 2 - lam) * lam ** (p + 1)) / denom
    elif side == "right":
        mu = shift
        if not 0.5 <= mu <= 1:
            raise ValueError(f"right shift must lie in [1/2, 1], got {mu}")
        h = (q - 1) / (2 * q - p - 1) * ((mu - 0.5) ** expo + (1 - mu) ** expo)
        wa = (0.5 * (p + 1 + 2 * mu) * (mu - 0.5) ** (p + 1)
              + (p + 1 + mu) * (1 - mu) ** (p + 1)) / denom
        wb = (0.5 * (p + 3 - 2 * mu) * (mu - 0.5) ** (p + 1) + (1 - mu) ** (p + 2)) / denom
    else:
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    if h == 0:
        # The factor is strictly positive mathematically; an exact zero means
        # base**expo underflowed (q extremely close to 1), and powering it by
        # 1 - 1/q downstream would silently collapse the bound.
        raise OverflowError(
            f"Hoelder factor underflow for q={q}, p={p} (q too close to 1)"
        )
    return KernelMoments(h, wa, wb)


def bound_pq(rule: RuleParams, hp: HolderParams, d: DerivEndpoints,
             interval: Interval) -> float:
    """General Hoelder bound, assembled per half-interval as

    (b-a) * sum_side hoelder_factor**(1-1/q) * (wa |f'(a)|^q + wb |f'(b)|^q)**(1/q).
    """
    _require_bound_admissible(rule)
    q = hp.q
    left = kernel_moments_closed(rule.lam, "left", hp)
    right = kernel_moments_closed(rule.mu, "right", hp)
    daq = d.da**q
    dbq = d.db**q
    total = 0.0
    for mom in (left, right):
        total += (mom.hoelder_factor ** (1 - 1 / q)
                  * (mom.weight_a * daq + mom.weight_b * dbq) ** (1 / q))
    return (interval.b - interval.a) * total


def bound_p1(rule: RuleParams, q: float, d: DerivEndpoints,
             interval: Interval) -> float:
    """p = 1 bound for q >= 1.  At q = 1 the power-mean structure collapses
    to ``bound_q1``, so that is where q = 1 requests are routed."""
    if q < 1:
        raise ValueError(f"q must be >= 1, got {q}")
    if q == 1:
        return bound_q1(rule, d, interval)
    return bound_pq(rule, HolderParams(1.0, q), d, interval)


def bound_p_eq_q(rule: RuleParams, q: float, d: DerivEndpoints,
                 interval: Interval) -> float:
    """p = q bound for q >= 1; q = 1 routes to ``bound_q1``."""
    if q < 1:
        raise ValueError(f"q must be >= 1, got {q}")
    if q == 1:
        return bound_q1(rule, d, interval)
    return bound_pq(rule, HolderParams(q, q), d, interval)


def bound_named(name: str, mode: str, d: DerivEndpoints, interval: Interval,
                q: float = 1.0, p: Optional[float] = None) -> float:
    """Named-rule bound; dispatches to the general formulas.

    mode is one of 'q1', 'p1', 'pq', 'general' (the last needs p).
    """
    rule = rule_from_lm(named_rule(name))
    if mode == "q1":
        return bound_q1(rule, d, interval)
    if mode == "p1":
        return bound_p1(rule, q, d, interval)
    if mode == "pq":
        return bound_p_eq_q(rule, q, d, interval)
    if mode == "general":
        if p is None:
            raise ValueError("mode 'general' requires p")
        return bound_pq(rule, HolderParams(p, q), d, interval)
    raise ValueError(f"mode must be one of q1, p1, pq, general; got {mode!r}")


def formula_id(q: float, p: Optional[float], name: Optional[str] = None,
               lm: Optional[LMRule] = None) -> str:
    """Identifier of the theorem/corollary a bound instance was produced by."""
    if name is not None:
        if q == 1:
            return f"cor3.7-{name}"
        if p == 1:
            return f"cor3.6-{name}"
        if p == q:
            return f"cor3.5-{name}"
        return f"cor3.4-{name}"
    if lm is not None:
        if q == 1:
            return "thm3.1"
        if p == 1:
            return "cor3.3-p1"
        if p == q:
            return "cor3.3-pq"
        return "cor3.2"
    if q == 1:
        return "thm3.1"
    if p == 1:
        return "cor3.1-p1"
    if p == q:
        return "cor3.1-pq"
    return "thm3.2"


def _golden_min(f, lo: float, hi: float, tol: float, max_iter: int = 200):
    """Golden-section search for the minimum of f on [lo, hi]."""
    invphi = (math.sqrt(5.0) - 1) / 2
    x1 = hi - invphi * (hi - lo)
    x2 = lo + invphi * (hi - lo)
    f1, f2 = f(x1), f(x2)
    for _ in range(max_iter):
        if hi - lo <= tol:
            break
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - invphi * (hi - lo)
            f1 = f(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + invphi * (hi - lo)
            f2 = f(x2)
    x = (lo + hi) / 2
    return x, f(x)


def optimize_p(rule: RuleParams, q: float, d: DerivEndpoints, interval: Interval,
               grid_points: int = 64) -> tuple[float, float]:
    """Minimize ``bound_pq`` over p in (0, q].

    Brackets the minimum on a log-spaced grid (p = 1 and p = q are always
    included), then refines by golden-section search.
    """
    if not q > 1:
        raise ValueError(f"optimize_p requires q > 1, got {q}")

    def f(p):
        return bound_pq(rule, HolderParams(p, q), d, interval)

    grid = sorted({q * 10 ** (-6 * (1 - i / (grid_points - 1)))
                   for i in range(grid_points)} | {1.0, q})
    values = [f(p) for p in grid]
    i = min(range(len(grid)), key=values.__getitem__)
    lo = grid[i - 1] if i > 0 else grid[i]
    hi = grid[i + 1] if i + 1 < len(grid) else grid[i]
    p_star, v_star = _golden_min(f, lo, hi, tol=1e-9 * q)
    if values[i] < v_star:
        p_star, v_star = grid[i], values[i]
    return p_star, v_star


def optimize_rule(q: float, mode: str, d: DerivEndpoints, interval: Interval,
                  p: Optional[float] = None, param_tol: float = 1e-6,
                  ) -> tuple[RuleParams, float]:
    """Coordinate descent on (lam, mu) over [0, 1/2] x [1/2, 1] from a 3x3
    grid of starts.  Returns the best local optimum found (no global
    certificate)."""
    if mode == "q1":
        def f(lam, mu):
            return bound_q1(RuleParams(lam, mu), d, interval)
    elif mode == "p1":
        def f(lam, mu):
            return bound_p1(RuleParams(lam, mu), q, d, interval)
    elif mode == "pq":
        def f(lam, mu):
            return bound_p_eq_q(RuleParams(lam, mu), q, d, interval)
    elif mode == "general":
        if p is None:
            raise ValueError("mode 'general' requires p")
        hp = HolderParams(p, q)

        def f(lam, mu):
            return bound_pq(RuleParams(lam, mu), hp, d, interval)
    else:
        raise ValueError(f"mode must be one of q1, p1, pq, general; got {mode!r}")

    best: Optional[tuple[float, float, float]] = None
    for lam0 in (0.0, 0.25, 0.5):
        for mu0 in (0.5, 0.75, 1.0):
            lam, mu = lam0, mu0
            for _ in range(100):
                new_lam, _ = _golden_min(lambda t: f(t, mu), 0.0, 0.5, tol=param_tol / 8)
                new_mu, _ = _golden_min(lambda t: f(new_lam, t), 0.5, 1.0, tol=param_tol / 8)
                moved = abs(new_lam - lam) + abs(new_mu - mu)
                lam, mu = new_lam, new_mu
                if moved < param_tol:
                    break
            value = f(lam, mu)
            if best is None or value < best[2]:
                best = (lam, mu, value)
    assert best is not None
    return RuleParams(best[0], best[1]), best[2]
