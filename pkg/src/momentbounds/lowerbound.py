"""Lower bounds on the worst-case Bayes error from per-class moments.

The bound forces every class-conditional distribution to carry a common Dirac
mass at a shared location ``delta``. The largest mass class ``i`` can spare is
its overlap fraction ``f_i(delta) = sigma_i^2 / (sigma_i^2 + (delta - mean_i)^2)``
when only two (or three) moments are known, or the exact shared-mass supremum
of the shifted sequence when more moments constrain it. The certified bound is

    sum_i p_i * eps_i - max_i p_i * eps_i

maximized over the shared location. For two equally likely classes the optimal
location has a closed form; otherwise a grid plus golden-section search is used.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import moments as mm
from ._search import golden_max, grid_golden_max
from .errors import InfeasibleSequenceError

#: number of scan points for the shift search on closed-form objectives.
GRID_POINTS = 10_001

#: scan points for the n >= 4 search, where every evaluation runs one
#: feasibility bisection per class.
GRID_POINTS_HIGHER = 401

_PRIOR_SUM_TOL = 1e-12
_PRIOR_EQ_TOL = 1e-12


class BoundMethod(str, Enum):
    FIRST_MOMENT = "FIRST_MOMENT"
    CLOSED_FORM_G2 = "CLOSED_FORM_G2"
    NUMERIC = "NUMERIC"
    MIDPOINT = "MIDPOINT"


@dataclass(frozen=True)
class ClassSpec:
    """One class: prior probability plus raw moments (gamma1 [, gamma2, ...]).

    ``gamma2`` may be omitted for problems that only pin the first moments.
    ``higher`` holds gamma3 onward. Feasibility of the class's own sequence is
    checked where it matters (``lower_bound``), not at construction.
    """

    prior: float
    gamma1: float
    gamma2: float | None = None
    higher: tuple[float, ...] = ()

    def __post_init__(self):
        if not (0.0 < self.prior < 1.0):
            raise ValueError(f"prior must lie in (0, 1), got {self.prior}")
        if self.higher and self.gamma2 is None:
            raise ValueError("higher moments require gamma2")
        object.__setattr__(self, "higher", tuple(float(h) for h in self.higher))

    @classmethod
    def from_moments(cls, prior: float, moments) -> "ClassSpec":
        """Build from a prior and a list [gamma1, gamma2, ...]."""
        vals = [float(v) for v in moments]
        if not vals:
            raise ValueError("need at least the first moment")
        return cls(prior=float(prior), gamma1=vals[0],
                   gamma2=vals[1] if len(vals) > 1 else None,
                   higher=tuple(vals[2:]))

    @property
    def sigma2(self) -> float:
        """Centered second moment gamma2 - gamma1^2."""
        if self.gamma2 is None:
            raise ValueError("second moment unknown for this class")
        return self.gamma2 - self.gamma1 * self.gamma1

    @property
    def n_moments(self) -> int:
        return 1 if self.gamma2 is None else 2 + len(self.higher)

    def moment_sequence(self, n_moments: int | None = None) -> list[float]:
        """[1, gamma1, ...] truncated to ``n_moments`` raw moments."""
        n = self.n_moments if n_moments is None else n_moments
        if n < 1 or n > self.n_moments:
            raise ValueError(f"class provides {self.n_moments} moments, asked for {n}")
        seq = [1.0, self.gamma1]
        if n >= 2:
            seq.append(float(self.gamma2))
            seq.extend(self.higher[:n - 2])
        return seq


@dataclass(frozen=True)
class LowerBoundResult:
    value: float
    delta_star: float
    epsilons: tuple[float, ...]
    attained: bool
    method: BoundMethod


def overlap_fraction(c: ClassSpec, delta: float) -> float:
    """Shared mass available at ``delta`` from two moments.

    Equals sigma^2 / (sigma^2 + (delta - gamma1)^2); a zero-variance class
    contributes 1 exactly at its mean and 0 elsewhere.
    """
    s2 = max(c.sigma2, 0.0)
    if s2 == 0.0:
        return 1.0 if delta == c.gamma1 else 0.0
    gap = delta - c.gamma1
    return s2 / (s2 + gap * gap)


def _weighted_profile(classes, deltas: np.ndarray) -> np.ndarray:
    """Matrix of p_i * f_i(delta), shape (G, len(deltas))."""
    rows = []
    for c in classes:
        s2 = max(c.sigma2, 0.0)
        gap2 = (deltas - c.gamma1) ** 2
        if s2 == 0.0:
            rows.append(np.where(gap2 == 0.0, c.prior, 0.0))
        else:
            rows.append(c.prior * s2 / (s2 + gap2))
    return np.vstack(rows)


def _objective_vec(classes, deltas: np.ndarray) -> np.ndarray:
    w = _weighted_profile(classes, deltas)
    return w.sum(axis=0) - w.max(axis=0)


def objective(classes, delta: float) -> float:
    """sum_i p_i f_i(delta) - max_i p_i f_i(delta) for two-moment classes."""
    classes = list(classes)
    if len(classes) < 2:
        raise ValueError("need at least two classes")
    val = float(_objective_vec(classes, np.array([float(delta)]))[0])
    return max(val, 0.0)


def optimal_shift_two_class(c1: ClassSpec, c2: ClassSpec) -> float:
    """Closed-form optimal shared location for two equally likely classes.

    With distinct variances the optimum is the root of the quadratic obtained
    by equating the two overlap fractions that lies between the means; with
    equal variances it is the midpoint of the means.
    """
    if abs(c1.prior - c2.prior) > _PRIOR_EQ_TOL:
        raise ValueError("closed form requires equal class priors")
    m1, m2 = c1.gamma1, c2.gamma1
    if m1 == m2:
        return float(m1)
    s1, s2 = max(c1.sigma2, 0.0), max(c2.sigma2, 0.0)
    if abs(s2 - s1) <= 1e-9 * max(s1, s2):
        return 0.5 * (m1 + m2)
    root_term = math.sqrt(s1) * math.sqrt(s2) * abs(m1 - m2)
    base = -(m2 * s1 - m1 * s2)
    den = s2 - s1
    cands = [(base + root_term) / den, (base - root_term) / den]
    lo, hi = min(m1, m2), max(m1, m2)
    inside = [x for x in cands if lo <= x <= hi]
    if len(inside) == 1:
        return float(inside[0])
    if not inside:
        # roundoff pushed the interior root marginally outside the interval
        return float(min(cands, key=lambda x: max(lo - x, x - hi)))
    return float(max(inside, key=lambda x: objective([c1, c2], x)))


def optimal_shift_numeric(classes) -> float:
    """Shift maximizing the objective, located by grid scan plus refinement.

    Scans 10,001 points on [min mean - 10 max sd, max mean + 10 max sd] with
    the class means appended as candidates, then refines the best bracket by
    golden section to width 1e-10. When every class is a point mass the means
    themselves are the only informative candidates.
    """
    classes = list(classes)
    if len(classes) < 2:
        raise ValueError("need at least two classes")
    means = [c.gamma1 for c in classes]
    smax = max(math.sqrt(max(c.sigma2, 0.0)) for c in classes)
    if smax == 0.0:
        return float(max(means, key=lambda d: objective(classes, d)))
    lo = min(means) - 10.0 * smax
    hi = max(means) + 10.0 * smax
    x, _ = grid_golden_max(lambda d: _objective_vec(classes, d), lo, hi,
                           num=GRID_POINTS, width=1e-10, extra=means)
    return float(x)


def first_moment_bound(priors) -> tuple[float, bool]:
    """Bound from first moments alone: 1 - max prior, never attained.

    The shared mass can be pushed arbitrarily close to 1 (but not to 1), so
    the supremum Bayes error given only the class means is 1 - max_i p(i).
    """
    p = [float(q) for q in priors]
    if len(p) < 2:
        raise ValueError("need at least two classes")
    if any(not 0.0 < q < 1.0 for q in p) or abs(sum(p) - 1.0) > _PRIOR_SUM_TOL:
        raise ValueError("priors must lie in (0, 1) and sum to 1")
    return 1.0 - max(p), False


def equal_variance_midpoint(classes) -> float:
    """Optimal shared location when all variances and priors are equal.

    The overlap fractions are then translates of one another and the smallest
    of them is maximized at the midpoint of the extreme means.
    """
    classes = list(classes)
    if len(classes) < 2:
        raise ValueError("need at least two classes")
    priors = [c.prior for c in classes]
    if max(priors) - min(priors) > _PRIOR_EQ_TOL:
        raise ValueError("requires equal class priors")
    sig2 = [c.sigma2 for c in classes]
    if max(sig2) - min(sig2) > 1e-12 * max(1.0, max(abs(s) for s in sig2)):
        raise ValueError("requires equal class variances")
    means = [c.gamma1 for c in classes]
    return 0.5 * (min(means) + max(means))


def _validate_problem(classes, n_moments: int) -> None:
    if len(classes) < 2:
        raise ValueError("need at least two classes")
    total = sum(c.prior for c in classes)
    if abs(total - 1.0) > _PRIOR_SUM_TOL:
        raise ValueError(f"class priors must sum to 1, got {total}")
    if n_moments < 1:
        raise ValueError("n_moments must be at least 1")
    for i, c in enumerate(classes):
        if c.n_moments < n_moments:
            raise ValueError(f"class {i} provides only {c.n_moments} moments")


def lower_bound(classes, n_moments: int, tol: float = mm.DEFAULT_TOL) -> LowerBoundResult:
    """Certified lower bound on the supremum Bayes error.

    ``n_moments`` selects how much of each class's moment data is used:
    1 uses only the means (bound 1 - max prior), 2 and 3 use the overlap
    fractions (the three-moment value coincides with the two-moment one but
    the supremum is no longer attained), and 4+ evaluates the exact
    shared-mass supremum of each shifted sequence on the search grid.

    Raises InfeasibleSequenceError when some class's own moments admit no
    distribution.
    """
    classes = list(classes)
    _validate_problem(classes, n_moments)
    priors = [c.prior for c in classes]
    if n_moments == 1:
        value, _ = first_moment_bound(priors)
        eps = tuple(1.0 for _ in classes)
        return LowerBoundResult(value, 0.0, eps, False, BoundMethod.FIRST_MOMENT)
    for i, c in enumerate(classes):
        verdict = mm.is_feasible(c.moment_sequence(n_moments), tol)
        if not verdict.feasible:
            raise InfeasibleSequenceError(
                f"class {i} moment sequence is infeasible ({verdict.reason.value})")
    equal_p = max(priors) - min(priors) <= _PRIOR_EQ_TOL
    if n_moments in (2, 3):
        if len(classes) == 2 and equal_p:
            delta = optimal_shift_two_class(classes[0], classes[1])
            s1, s2 = max(classes[0].sigma2, 0.0), max(classes[1].sigma2, 0.0)
            equal_var = abs(s2 - s1) <= 1e-9 * max(s1, s2, 1e-300)
            method = BoundMethod.MIDPOINT if equal_var else BoundMethod.CLOSED_FORM_G2
        else:
            delta = optimal_shift_numeric(classes)
            method = BoundMethod.NUMERIC
        eps = tuple(overlap_fraction(c, delta) for c in classes)
        weighted = [c.prior * e for c, e in zip(classes, eps)]
        value = max(sum(weighted) - max(weighted), 0.0)
        if n_moments == 3:
            attained = False
        else:
            # the supremum fails exactly when some class must give up all its
            # mass while keeping positive variance (shifted mean zero)
            attained = all(e < 1.0 or max(c.sigma2, 0.0) == 0.0
                           for c, e in zip(classes, eps))
        return LowerBoundResult(float(value), float(delta), eps, attained, method)

    # n_moments >= 4: every candidate shift pays one bisection per class
    seqs = [c.moment_sequence(n_moments) for c in classes]

    def eps_at(delta: float, width: float) -> list[float]:
        out = []
        for c, s in zip(classes, seqs):
            if max(c.sigma2, 0.0) == 0.0:
                out.append(overlap_fraction(c, delta))
                continue
            shifted = mm.shift_moments(s, delta)
            shifted[0] = 1.0
            e, _ = mm.max_shared_mass(shifted, tol, bisect_width=width)
            out.append(e)
        return out

    def obj(delta: float, width: float = 1e-6) -> float:
        w = [c.prior * e for c, e in zip(classes, eps_at(delta, width))]
        return sum(w) - max(w)

    means = [c.gamma1 for c in classes]
    smax = max(math.sqrt(max(c.sigma2, 0.0)) for c in classes)
    if smax == 0.0:
        delta = float(max(means, key=lambda d: obj(d, 1e-12)))
    else:
        two_moment = lower_bound(classes, 2, tol)
        lo = min(means) - 10.0 * smax
        hi = max(means) + 10.0 * smax
        xs = np.linspace(lo, hi, GRID_POINTS_HIGHER)
        cands = np.unique(np.concatenate(
            [xs, np.clip(np.array(means + [two_moment.delta_star]), lo, hi)]))
        vals = [obj(float(x)) for x in cands]
        i = int(np.argmax(vals))
        a = cands[i - 1] if i > 0 else cands[0]
        b = cands[i + 1] if i + 1 < cands.size else cands[-1]
        delta, _ = golden_max(lambda d: obj(d, 1e-9), float(a), float(b), width=1e-9)
        if obj(float(cands[i])) > obj(delta, 1e-9):
            delta = float(cands[i])
    eps = tuple(eps_at(delta, mm.BISECTION_WIDTH))
    weighted = [c.prior * e for c, e in zip(classes, eps)]
    value = max(sum(weighted) - max(weighted), 0.0)
    return LowerBoundResult(float(value), float(delta), eps, False, BoundMethod.NUMERIC)
