"""Exact two-class Bayes error when both class conditionals are Gaussian."""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class GaussianPair:
    """Two Gaussian class conditionals with priors."""

    mu1: float
    mu2: float
    sigma1sq: float
    sigma2sq: float
    p1: float = 0.5
    p2: float = 0.5

    def __post_init__(self):
        if self.sigma1sq <= 0.0 or self.sigma2sq <= 0.0:
            raise ValueError("variances must be positive")
        if not (0.0 < self.p1 < 1.0 and 0.0 < self.p2 < 1.0):
            raise ValueError("priors must lie in (0, 1)")
        if abs(self.p1 + self.p2 - 1.0) > 1e-12:
            raise ValueError("priors must sum to 1")


def normal_cdf(x: float) -> float:
    """Standard normal CDF, accurate to well below 1e-12 absolute."""
    return 0.5 * math.erfc(-x / math.sqrt(2.0))


def _log_ratio_coeffs(g: GaussianPair) -> tuple[float, float, float]:
    # q(x) = a x^2 + b x + c with q(x) > 0 iff p1 N(x; mu1, s1) > p2 N(x; mu2, s2)
    a = 0.5 / g.sigma2sq - 0.5 / g.sigma1sq
    b = g.mu1 / g.sigma1sq - g.mu2 / g.sigma2sq
    c = (g.mu2 * g.mu2) / (2.0 * g.sigma2sq) - (g.mu1 * g.mu1) / (2.0 * g.sigma1sq) \
        + math.log(g.p1 / g.p2) + 0.5 * math.log(g.sigma2sq / g.sigma1sq)
    return a, b, c


def _crossings(g: GaussianPair) -> list[float]:
    a, b, c = _log_ratio_coeffs(g)
    if g.sigma1sq == g.sigma2sq:
        if b == 0.0:
            return []
        return [-c / b]
    disc = b * b - 4.0 * a * c
    scale = max(b * b, abs(4.0 * a * c), 1e-300)
    if disc <= 1e-12 * scale:
        # tangency or no real crossing: one class dominates everywhere
        return []
    r = math.sqrt(disc)
    q = -0.5 * (b + math.copysign(r, b)) if b != 0.0 else 0.5 * r
    return sorted((q / a, c / q))


def gaussian_pair_bayes_error(g: GaussianPair) -> float:
    """Bayes error of the optimal rule for two weighted Gaussian densities.

    Solves p1 N(x; mu1, s1^2) = p2 N(x; mu2, s2^2) (linear for equal
    variances, quadratic otherwise), assigns each interval between crossings
    to the class with the larger weighted density at a probe point (interval
    midpoints; mean +/- 50 sd for the unbounded ends), and integrates the
    winning densities with the normal CDF.
    """
    a, b, c = _log_ratio_coeffs(g)
    roots = _crossings(g)
    sd_max = math.sqrt(max(g.sigma1sq, g.sigma2sq))
    far_lo = min(g.mu1, g.mu2) - 50.0 * sd_max
    far_hi = max(g.mu1, g.mu2) + 50.0 * sd_max
    if roots:
        far_lo = min(far_lo, roots[0] - 50.0 * sd_max)
        far_hi = max(far_hi, roots[-1] + 50.0 * sd_max)
    edges = [-math.inf] + roots + [math.inf]
    winning_mass = 0.0
    for left, right in zip(edges[:-1], edges[1:]):
        if math.isinf(left) and math.isinf(right):
            probe = 0.5 * (g.mu1 + g.mu2)
        elif math.isinf(left):
            probe = far_lo
        elif math.isinf(right):
            probe = far_hi
        else:
            probe = 0.5 * (left + right)
        q = (a * probe + b) * probe + c
        if q >= 0.0:
            mu, sd, p = g.mu1, math.sqrt(g.sigma1sq), g.p1
        else:
            mu, sd, p = g.mu2, math.sqrt(g.sigma2sq), g.p2
        hi_cdf = 1.0 if math.isinf(right) else normal_cdf((right - mu) / sd)
        lo_cdf = 0.0 if math.isinf(left) else normal_cdf((left - mu) / sd)
        winning_mass += p * (hi_cdf - lo_cdf)
    return min(max(1.0 - winning_mass, 0.0), 1.0)
