"""Worst-case error of the best threshold classifier in one dimension.

For a half-line S and a distribution with known mean and variance, the largest
probability any such distribution can place on S is 1 / (1 + c) with
c = (s - mu)^2 / sigma^2 when the mean lies outside S, and 1 otherwise (a
sharpened Chebyshev-Cantelli inequality). Minimizing the resulting worst-case
two-class error over the threshold location upper-bounds the supremum Bayes
error of any pair of distributions with the given moments.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from ._search import grid_golden_max
from .lowerbound import ClassSpec

GRID_POINTS = 10_001


class HalfLine(str, Enum):
    LEFT_OF_S = "LEFT_OF_S"
    RIGHT_OF_S = "RIGHT_OF_S"


@dataclass(frozen=True)
class UpperBoundResult:
    """Upper bound value, optimal threshold and whether a ceiling bound it.

    ``clipped`` is True when no interior threshold attains the infimum: the
    reported value is the limiting error of a threshold pushed to infinity
    (the opposing class prior) or the trivial ceiling of 1. ``s_star`` is
    +/-inf in that case.
    """

    value: float
    s_star: float
    clipped: bool


def worst_case_halfline_prob(mu: float, sigma2: float, s: float,
                             side: HalfLine) -> float:
    """Largest mass a (mu, sigma^2) distribution can put on a closed half-line."""
    if sigma2 < 0.0:
        raise ValueError("variance must be nonnegative")
    inside = mu <= s if side is HalfLine.LEFT_OF_S else mu >= s
    if inside:
        return 1.0
    if sigma2 == 0.0:
        return 0.0
    gap = s - mu
    return 1.0 / (1.0 + gap * gap / sigma2)


def _ordered(c1: ClassSpec, c2: ClassSpec):
    # the class with the smaller mean claims the left half-line
    return (c1, c2) if c1.gamma1 <= c2.gamma1 else (c2, c1)


def _worst_error_vec(c1: ClassSpec, c2: ClassSpec, s: np.ndarray) -> np.ndarray:
    lo, hi = _ordered(c1, c2)

    def tail(mu, sigma2, errs_right):
        inside = (mu >= s) if errs_right else (mu <= s)
        if sigma2 <= 0.0:
            return np.where(inside, 1.0, 0.0)
        gap2 = (s - mu) ** 2
        return np.where(inside, 1.0, 1.0 / (1.0 + gap2 / sigma2))

    return (lo.prior * tail(lo.gamma1, max(lo.sigma2, 0.0), True)
            + hi.prior * tail(hi.gamma1, max(hi.sigma2, 0.0), False))


def linear_boundary_worst_error(c1: ClassSpec, c2: ClassSpec, s: float) -> float:
    """Worst-case error of the threshold ``s`` over all moment-feasible pairs.

    The class with the smaller mean is assigned the left half-line, so its
    error region is [s, inf) and the other class's is (-inf, s].
    """
    lo, hi = _ordered(c1, c2)
    return (lo.prior * worst_case_halfline_prob(lo.gamma1, max(lo.sigma2, 0.0),
                                                s, HalfLine.RIGHT_OF_S)
            + hi.prior * worst_case_halfline_prob(hi.gamma1, max(hi.sigma2, 0.0),
                                                  s, HalfLine.LEFT_OF_S))


def upper_bound(c1: ClassSpec, c2: ClassSpec) -> UpperBoundResult:
    """Upper bound on the supremum Bayes error of a two-class problem.

    Takes the infimum of the worst-case threshold error over the extended
    line: a grid of 10,001 points on [mean_lo - 10 sd_lo, mean_hi + 10 sd_hi]
    refined by golden section to width 1e-10, together with the s -> -inf and
    s -> +inf limits (the class priors) and the ceiling 1. For equal
    variances and equal priors this reproduces the closed form
    min{4 sigma^2 / (4 sigma^2 + gap^2), 1/2} exactly.
    """
    if abs(c1.prior + c2.prior - 1.0) > 1e-12:
        raise ValueError("the two class priors must sum to 1")
    lo_c, hi_c = _ordered(c1, c2)
    sd_lo = math.sqrt(max(lo_c.sigma2, 0.0))
    sd_hi = math.sqrt(max(hi_c.sigma2, 0.0))
    a = lo_c.gamma1 - 10.0 * sd_lo
    b = hi_c.gamma1 + 10.0 * sd_hi
    candidates = [(lo_c.prior, -math.inf, True),
                  (hi_c.prior, math.inf, True),
                  (1.0, math.nan, True)]
    if b > a:
        midpoint = 0.5 * (lo_c.gamma1 + hi_c.gamma1)
        x, neg = grid_golden_max(lambda s: -_worst_error_vec(c1, c2, s), a, b,
                                 num=GRID_POINTS, width=1e-10, extra=[midpoint])
        candidates.insert(0, (-neg, float(x), False))
    value, s_star, clipped = min(candidates, key=lambda t: (t[0], t[2]))
    return UpperBoundResult(float(value), s_star, clipped)


def trivial_upper_bound(G: int) -> float:
    """Ceiling (G - 1) / G that holds with no moment information at all."""
    if G < 2:
        raise ValueError("need at least two classes")
    return (G - 1) / G
