"""Golden fixtures: the specialized closed forms of the rule-family bounds.

These are independent transcriptions of the specialized display formulas
(p = 1, p = q, the (m, ell) family, and the seven named rules).  They are
deliberately NOT part of the library: the library computes every bound
through its general assembly, and these fixtures pin the specializations.

Two displays are knowingly misprinted in their source and are therefore not
transcribed here; the tests assert those two cases against the general
dispatch with the obvious correction instead (see test_bounds.py).
"""

import math
from fractions import Fraction


def rule_p1(lam, mu, q, da, db, w):
    """p = 1 bound for arbitrary admissible (lam, mu), q >= 1."""
    t1 = ((0.5 - lam) ** 2 + lam**2) ** (1 - 1 / q) * (
        ((1 + lam) * (0.5 - lam) ** 2 + lam**3) * da**q
        + ((2 - lam) * (0.5 - lam) ** 2 + (3 - lam) * lam**2) * db**q
    ) ** (1 / q)
    t2 = ((mu - 0.5) ** 2 + (1 - mu) ** 2) ** (1 - 1 / q) * (
        ((1 + mu) * (mu - 0.5) ** 2 + (2 + mu) * (1 - mu) ** 2) * da**q
        + ((2 - mu) * (mu - 0.5) ** 2 + (1 - mu) ** 3) * db**q
    ) ** (1 / q)
    return w / 2 * (1 / 3) ** (1 / q) * (t1 + t2)


def rule_pq(lam, mu, q, da, db, w):
    """p = q bound for arbitrary admissible (lam, mu), q >= 1."""
    t1 = (
        (0.5 * (q + 1 + 2 * lam) * (0.5 - lam) ** (q + 1) + lam ** (q + 2)) * da**q
        + (0.5 * (q + 3 - 2 * lam) * (0.5 - lam) ** (q + 1)
           + (q + 2 - lam) * lam ** (q + 1)) * db**q
    ) ** (1 / q)
    t2 = (
        (0.5 * (q + 1 + 2 * mu) * (mu - 0.5) ** (q + 1)
         + (q + 1 + mu) * (1 - mu) ** (q + 1)) * da**q
        + (0.5 * (q + 3 - 2 * mu) * (mu - 0.5) ** (q + 1) + (1 - mu) ** (q + 2)) * db**q
    ) ** (1 / q)
    return w / 2 * (2 / ((q + 1) * (q + 2))) ** (1 / q) * (t1 + t2)


def _mirror_sum(A, B, q, da, db):
    return (A * da**q + B * db**q) ** (1 / q) + (B * da**q + A * db**q) ** (1 / q)


def lm_general(m, l, p, q, da, db, w):
    """General (p, q) bound in the (m, ell) parametrization, q > 1."""
    E = (2 * q - p - 1) / (q - 1)
    pre = (w / (4 * m**2)
           * ((q - 1) / (2 * q - p - 1)) ** (1 - 1 / q)
           * (1 / (2 * m * (p + 1) * (p + 2))) ** (1 / q)
           * ((2 * l) ** E + (m - 2 * l) ** E) ** (1 - 1 / q))
    A = (2 * l) ** (p + 2) + (m * p + m + 2 * l) * (m - 2 * l) ** (p + 1)
    B = ((2 * m * p + 4 * m - 2 * l) * (2 * l) ** (p + 1)
         + (m * p + 3 * m - 2 * l) * (m - 2 * l) ** (p + 1))
    return pre * _mirror_sum(A, B, q, da, db)


def lm_p1(m, l, q, da, db, w):
    """p = 1 bound in the (m, ell) parametrization, q >= 1."""
    pre = (w / (8 * m**2) * (1 / (3 * m)) ** (1 / q)
           * ((m - 2 * l) ** 2 + (2 * l) ** 2) ** (1 - 1 / q))
    A = (m + l) * (m - 2 * l) ** 2 + 4 * l**3
    B = (2 * m - l) * (m - 2 * l) ** 2 + 4 * (3 * m - l) * l**2
    return pre * _mirror_sum(A, B, q, da, db)


def lm_pq(m, l, q, da, db, w):
    """p = q bound in the (m, ell) parametrization, q >= 1."""
    pre = w / (4 * m) * (1 / (2 * m**2 * (q + 1) * (q + 2))) ** (1 / q)
    A = (2 * l) ** (q + 2) + (m * q + m + 2 * l) * (m - 2 * l) ** (q + 1)
    B = ((2 * m * q + 4 * m - 2 * l) * (2 * l) ** (q + 1)
         + (m * q + 3 * m - 2 * l) * (m - 2 * l) ** (q + 1))
    return pre * _mirror_sum(A, B, q, da, db)


# -- the seven named rules, general p (q > 1) ---------------------------------

def _hoelder_pre(p, q):
    return ((q - 1) / (2 * q - p - 1)) ** (1 - 1 / q)


def midpoint_general(p, q, da, db, w):
    pre = w / 4 * _hoelder_pre(p, q) * (1 / (2 * (p + 1) * (p + 2))) ** (1 / q)
    return pre * _mirror_sum(p + 1, p + 3, q, da, db)


def trapezoid_general(p, q, da, db, w):
    pre = w / 4 * _hoelder_pre(p, q) * (1 / (2 * (p + 1) * (p + 2))) ** (1 / q)
    return pre * _mirror_sum(1, 2 * p + 3, q, da, db)


def avg3_general(p, q, da, db, w):
    E = (2 * q - p - 1) / (q - 1)
    pre = (w / 36 * _hoelder_pre(p, q) * (1 / (6 * (p + 1) * (p + 2))) ** (1 / q)
           * (1 + 2**E) ** (1 - 1 / q))
    return pre * _mirror_sum(2 ** (p + 2) + 3 * p + 5,
                             (3 * p + 5) * 2 ** (p + 2) + 3 * p + 7, q, da, db)


def avgmid_general(p, q, da, db, w):
    pre = w / 8 * _hoelder_pre(p, q) * (1 / (4 * (p + 1) * (p + 2))) ** (1 / q)
    return pre * _mirror_sum(p + 2, 3 * p + 6, q, da, db)


def fifth13_general(p, q, da, db, w):
    E = (2 * q - p - 1) / (q - 1)
    pre = (w / 100 * _hoelder_pre(p, q) * (1 / (10 * (p + 1) * (p + 2))) ** (1 / q)
           * (2**E + 3**E) ** (1 - 1 / q))
    return pre * _mirror_sum(2 ** (p + 2) + (5 * p + 7) * 3 ** (p + 1),
                             (5 * p + 9) * 2 ** (p + 2) + (5 * p + 13) * 3 ** (p + 1),
                             q, da, db)


def fifth221_general(p, q, da, db, w):
    E = (2 * q - p - 1) / (q - 1)
    pre = (w / 100 * _hoelder_pre(p, q) * (1 / (10 * (p + 1) * (p + 2))) ** (1 / q)
           * (1 + 4**E) ** (1 - 1 / q))
    return pre * _mirror_sum(4 ** (p + 2) + 5 * p + 9,
                             (5 * p + 8) * 2 ** (2 * p + 3) + 5 * p + 11, q, da, db)


def simpson_general(p, q, da, db, w):
    E = (2 * q - p - 1) / (q - 1)
    pre = (w / 36 * _hoelder_pre(p, q) * (1 / (6 * (p + 1) * (p + 2))) ** (1 / q)
           * (1 + 2**E) ** (1 - 1 / q))
    return pre * _mirror_sum((3 * p + 4) * 2 ** (p + 1) + 1,
                             (3 * p + 8) * 2 ** (p + 1) + 6 * p + 11, q, da, db)


NAMED_GENERAL = {
    "midpoint": midpoint_general,
    "trapezoid": trapezoid_general,
    "avg3": avg3_general,
    "avg-mid": avgmid_general,
    "fifth-13": fifth13_general,
    "fifth-221": fifth221_general,
    "simpson": simpson_general,
}


# -- the seven named rules, p = q (q >= 1) ------------------------------------

def midpoint_pq(q, da, db, w):
    pre = w / 4 * (1 / (2 * (q + 1) * (q + 2))) ** (1 / q)
    return pre * _mirror_sum(q + 1, q + 3, q, da, db)


def trapezoid_pq(q, da, db, w):
    pre = w / 4 * (1 / (2 * (q + 1) * (q + 2))) ** (1 / q)
    return pre * _mirror_sum(1, 2 * q + 3, q, da, db)


def avg3_pq(q, da, db, w):
    pre = w / 12 * (1 / (18 * (q + 1) * (q + 2))) ** (1 / q)
    return pre * _mirror_sum(2 ** (q + 2) + 3 * q + 5,
                             (3 * q + 5) * 2 ** (q + 2) + 3 * q + 7, q, da, db)


def fifth13_pq(q, da, db, w):
    pre = w / 20 * (1 / (50 * (q + 1) * (q + 2))) ** (1 / q)
    return pre * _mirror_sum(2 ** (q + 2) + (5 * q + 7) * 3 ** (q + 1),
                             (5 * q + 9) * 2 ** (q + 2) + (5 * q + 13) * 3 ** (q + 1),
                             q, da, db)


def fifth221_pq(q, da, db, w):
    pre = w / 20 * (1 / (50 * (q + 1) * (q + 2))) ** (1 / q)
    return pre * _mirror_sum(4 ** (q + 2) + 5 * q + 9,
                             (5 * q + 8) * 2 ** (2 * q + 3) + 5 * q + 11, q, da, db)


def simpson_pq(q, da, db, w):
    pre = w / 12 * (1 / (18 * (q + 1) * (q + 2))) ** (1 / q)
    return pre * _mirror_sum((3 * q + 4) * 2 ** (q + 1) + 1,
                             (3 * q + 8) * 2 ** (q + 1) + 6 * q + 11, q, da, db)


# avg-mid's p = q display is misprinted in its source (stray factors); the
# dispatch test asserts that rule against a corrected transcription instead.
NAMED_PQ = {
    "midpoint": midpoint_pq,
    "trapezoid": trapezoid_pq,
    "avg3": avg3_pq,
    "fifth-13": fifth13_pq,
    "fifth-221": fifth221_pq,
    "simpson": simpson_pq,
}


def avgmid_pq_corrected(q, da, db, w):
    pre = w / 8 * (1 / (4 * (q + 1) * (q + 2))) ** (1 / q)
    return pre * _mirror_sum(q + 2, 3 * q + 6, q, da, db)


# -- the seven named rules, p = 1 (q >= 1): weighted power means --------------

def _named_p1(c_num, c_den, wa, wb, denom):
    def fixture(q, da, db, w):
        return (c_num * w / c_den) * (
            ((wa * da**q + wb * db**q) / denom) ** (1 / q)
            + ((wb * da**q + wa * db**q) / denom) ** (1 / q)
        )
    return fixture


NAMED_P1 = {
    "midpoint": _named_p1(1, 8, 1, 2, 3),
    "trapezoid": _named_p1(1, 8, 1, 5, 6),
    "avg3": _named_p1(5, 72, 8, 37, 45),
    "avg-mid": _named_p1(1, 16, 1, 3, 4),
    "fifth-13": _named_p1(13, 200, 58, 137, 195),
    "fifth-221": _named_p1(17, 200, 13, 72, 85),
    "simpson": _named_p1(5, 72, 29, 61, 90),
}


# -- the seven named rules, q = 1: plain constants ----------------------------
# (avg3's display carries a stray exponent on |f'(a)| in its source; at q = 1
# it reads as |f'(a)| like the rest, which is the transcription used here.)

NAMED_Q1_CONSTANTS = {
    "midpoint": Fraction(1, 8),
    "trapezoid": Fraction(1, 8),
    "avg3": Fraction(5, 72),
    "avg-mid": Fraction(1, 16),
    "fifth-13": Fraction(13, 200),
    "fifth-221": Fraction(17, 200),
    "simpson": Fraction(5, 72),
}


def simpson_weighted_q(q, da, db, w):
    """The (29, 61)/90 weighted power-mean form of the simpson p = 1 bound
    (also the earlier-literature statement it must coincide with)."""
    return 5 * w / 72 * (((29 * da**q + 61 * db**q) / 90) ** (1 / q)
                         + ((61 * da**q + 29 * db**q) / 90) ** (1 / q))


def q1_proof_moments(lam, mu, da, db):
    """The two half-interval q = 1 moment combinations whose sum assembles
    the q = 1 bound: returns (left, right) values of
    integral |shift - t| (t da + (1-t) db) dt over the half-intervals."""
    left = ((1 - 3 * lam + 8 * lam**3) * da
            + (2 - 9 * lam + 24 * lam**2 - 8 * lam**3) * db) / 24
    right = ((9 - 15 * mu + 8 * mu**3) * da
             + (6 - 21 * mu + 24 * mu**2 - 8 * mu**3) * db) / 24
    return left, right


def relerr(got, expected):
    scale = max(abs(expected), abs(got), 1e-300)
    return abs(got - expected) / scale


def isclose_rel(got, expected, rtol):
    return relerr(got, expected) <= rtol or math.isclose(got, expected, abs_tol=1e-300)
