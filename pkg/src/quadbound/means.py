"""Special means of two positive numbers and the inequalities they satisfy.

Means: A (arithmetic), G (geometric), H (harmonic), L (logarithmic),
I (identric/exponential), and the generalized logarithmic family Ls, with
the usual dispatch Ls -> L at s = -1 and Ls -> I at s = 0.  All means return
``a`` when a == b.

``means_gap_power`` / ``means_gap_log`` are the signed mean-combination gaps
whose absolute values the bound theorems control; ``means_bound`` produces
those bounds by routing f(x) = x**s or f(x) = ln x (via their endpoint
derivative magnitudes) into the generic bounds module, so the mean
inequalities are never a second copy of the algebra.
"""

from __future__ import annotations

import math
from typing import Optional

from . import bounds
from .convexity import admissible_power
from .oracle import Interval
from .rules import LMRule, rule_from_lm

__all__ = [
    "MEAN_KINDS",
    "compute_mean",
    "means_gap_power",
    "means_gap_log",
    "means_bound",
    "means_gap",
    "MEANS_THEOREMS",
]

MEAN_KINDS = ("A", "G", "H", "L", "I", "Ls")


def _check_positive(a: float, b: float) -> None:
    if a <= 0 or b <= 0:
        raise ValueError(f"means are defined for positive numbers, got a={a}, b={b}")


def _log_identric(a: float, b: float) -> float:
    # ln I = (b ln b - a ln a)/(b - a) - 1, rewritten to avoid cancellation:
    # b ln b - a ln a = a*log1p((b-a)/a) + (b-a) ln b.
    if a == b:
        return math.log(a)
    w = b - a
    return a * math.log1p(w / a) / w + math.log(b) - 1.0


def _ls_power(s: float, a: float, b: float) -> float:
    """[Ls(a, b)]**s computed directly (the mean value of x**s on [a, b])."""
    if s == 0:
        raise ValueError("s must be nonzero")
    if a == b:
        return a**s
    if s == -1:
        return math.log1p((b - a) / a) / (b - a)
    u = s + 1
    la, lb = math.log(a), math.log(b)
    if abs(u) < 0.5:
        num = math.expm1(u * lb) - math.expm1(u * la)
    else:
        num = b**u - a**u
    return num / (u * (b - a))


def compute_mean(kind: str, a: float, b: float, s: Optional[float] = None) -> float:
    _check_positive(a, b)
    if kind == "A":
        return (a + b) / 2
    if kind == "G":
        return math.sqrt(a) * math.sqrt(b)
    if kind == "H":
        return 2 * a * b / (a + b)
    if kind == "L":
        if a == b:
            return a
        return (b - a) / math.log1p((b - a) / a)
    if kind == "I":
        return math.exp(_log_identric(a, b))
    if kind == "Ls":
        if s is None:
            raise ValueError("Ls requires the parameter s")
        if a == b:
            return a
        if s == -1:
            return compute_mean("L", a, b)
        if s == 0:
            return compute_mean("I", a, b)
        return _ls_power(s, a, b) ** (1 / s)
    raise ValueError(f"kind must be one of {MEAN_KINDS}, got {kind!r}")


def _check_lm(m: float, ell: float) -> None:
    if not (m > 0 and m >= 2 * ell >= 0):
        raise ValueError(f"need m > 0 and m >= 2*ell >= 0, got m={m}, ell={ell}")


def means_gap_power(m: float, ell: float, s: float, a: float, b: float) -> float:
    """Signed gap (2l A(a^s,b^s) + (m-2l) A(a,b)^s)/m - Ls(a,b)^s."""
    _check_positive(a, b)
    _check_lm(m, ell)
    if s == 0:
        raise ValueError("s must be nonzero")
    combo = (2 * ell * compute_mean("A", a**s, b**s)
             + (m - 2 * ell) * compute_mean("A", a, b) ** s) / m
    return combo - _ls_power(s, a, b)


def means_gap_log(m: float, ell: float, a: float, b: float) -> float:
    """Signed gap (2l ln G + (m-2l) ln A)/m - ln I."""
    _check_positive(a, b)
    _check_lm(m, ell)
    combo = (2 * ell * (math.log(a) + math.log(b)) / 2
             + (m - 2 * ell) * math.log((a + b) / 2)) / m
    return combo - _log_identric(a, b)


# theorem id -> (gap family, bound mode, needs q > 1)
MEANS_THEOREMS = {
    "4.1": ("power", "general", True),
    "4.2-p1": ("power", "p1", False),
    "4.2-pq": ("power", "pq", False),
    "4.3-p1": ("harmonic", "p1", False),
    "4.3-pq": ("harmonic", "pq", False),
    "4.4": ("log", "general", True),
    "4.5-p1": ("log", "p1", False),
    "4.5-pq": ("log", "pq", False),
}


def _endpoint_derivs(family: str, s: Optional[float], a: float, b: float,
                     ) -> bounds.DerivEndpoints:
    if family == "power":
        assert s is not None
        return bounds.DerivEndpoints(abs(s) * a ** (s - 1), abs(s) * b ** (s - 1))
    if family == "harmonic":
        return bounds.DerivEndpoints(a**-2, b**-2)
    return bounds.DerivEndpoints(1 / a, 1 / b)


def means_bound(theorem: str, m: float, ell: float, a: float, b: float,
                s: Optional[float] = None, p: Optional[float] = None,
                q: float = 1.0) -> float:
    """Bound on |means_gap| for the given theorem, routed through bounds."""
    _check_positive(a, b)
    if a > b:
        raise ValueError(f"need a <= b, got a={a}, b={b}")
    _check_lm(m, ell)
    try:
        family, mode, needs_q_gt_1 = MEANS_THEOREMS[theorem]
    except KeyError:
        raise ValueError(
            f"unknown theorem {theorem!r}; expected one of {', '.join(MEANS_THEOREMS)}"
        )
    if family == "harmonic":
        s = -1.0
    if family == "power":
        if s is None:
            raise ValueError(f"theorem {theorem} requires s")
        if not admissible_power(s, max(q, 1.0)):
            raise ValueError(
                f"(s={s}, q={q}) inadmissible: |s x^(s-1)|^q is convex only for "
                "s > 1 with (s-1)q >= 1, or s < 1 with s != 0"
            )
    if needs_q_gt_1:
        if not q > 1:
            raise ValueError(f"theorem {theorem} requires q > 1, got q={q}")
        if p is None:
            raise ValueError(f"theorem {theorem} requires p")
    elif q < 1:
        raise ValueError(f"theorem {theorem} requires q >= 1, got q={q}")
    if a == b:
        return 0.0

    rule = rule_from_lm(LMRule(m, ell))
    interval = Interval(a, b)
    d = _endpoint_derivs(family, s, a, b)
    if mode == "general":
        return bounds.bound_pq(rule, bounds.HolderParams(p, q), d, interval)
    if mode == "p1":
        return bounds.bound_p1(rule, q, d, interval)
    return bounds.bound_p_eq_q(rule, q, d, interval)


def means_gap(theorem: str, m: float, ell: float, a: float, b: float,
              s: Optional[float] = None) -> float:
    """The signed gap matching ``means_bound`` for the given theorem."""
    try:
        family, _, _ = MEANS_THEOREMS[theorem]
    except KeyError:
        raise ValueError(
            f"unknown theorem {theorem!r}; expected one of {', '.join(MEANS_THEOREMS)}"
        )
    if family == "power":
        if s is None:
            raise ValueError(f"theorem {theorem} requires s")
        return means_gap_power(m, ell, s, a, b)
    if family == "harmonic":
        return means_gap_power(m, ell, -1.0, a, b)
    return means_gap_log(m, ell, a, b)
