"""One-dimensional search helpers: coarse grid scan plus golden-section refinement."""

from __future__ import annotations

import numpy as np

_INVPHI = (5.0 ** 0.5 - 1.0) / 2.0
_MAX_GOLDEN_ITER = 200


def golden_max(f, lo: float, hi: float, width: float = 1e-10):
    """Golden-section maximization of a scalar function on [lo, hi].

    Shrinks the bracket until it is narrower than ``width`` and returns
    (argmax, value). Assumes f is unimodal on the bracket; on a non-unimodal
    stretch it still returns a local maximum inside [lo, hi].
    """
    a, b = float(lo), float(hi)
    if b - a <= width:
        x = 0.5 * (a + b)
        return x, f(x)
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(_MAX_GOLDEN_ITER):
        if b - a <= width:
            break
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = f(d)
    x = 0.5 * (a + b)
    return x, f(x)


def grid_golden_max(f_vec, lo: float, hi: float, num: int = 10_001,
                    width: float = 1e-10, extra=None):
    """Maximize a vectorized function on [lo, hi].

    ``f_vec`` must accept a 1-D ndarray and return values of the same shape.
    The interval is scanned on ``num`` equispaced points (plus any ``extra``
    candidates, clipped into the interval), then the best bracket is refined
    with a golden-section search of absolute width ``width``.
    """
    lo, hi = float(lo), float(hi)
    if hi < lo:
        raise ValueError("empty search interval")
    if hi == lo:
        return lo, float(f_vec(np.array([lo]))[0])
    xs = np.linspace(lo, hi, num)
    if extra is not None:
        pts = np.clip(np.asarray(list(extra), dtype=float), lo, hi)
        if pts.size:
            xs = np.unique(np.concatenate([xs, pts]))
    vals = np.asarray(f_vec(xs), dtype=float)
    i = int(np.argmax(vals))
    a = xs[i - 1] if i > 0 else xs[0]
    b = xs[i + 1] if i + 1 < xs.size else xs[-1]

    def scalar(x):
        return float(f_vec(np.array([x]))[0])

    x_ref, f_ref = golden_max(scalar, float(a), float(b), width)
    if f_ref >= vals[i]:
        return x_ref, f_ref
    return float(xs[i]), float(vals[i])
