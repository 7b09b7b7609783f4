"""Brute-force references, deliberately independent of the closed forms they check."""

import math

import mpmath
import numpy as np

GRID_STEP = 1e-6
_GRID = np.arange(0.0, 1.0, GRID_STEP)


def _circ(v):
    r = v - np.floor(v)
    return np.minimum(r, 1.0 - r)


def _arg(c: complex) -> float:
    return (math.atan2(c.imag, c.real) / (2 * math.pi)) % 1.0


def pq_grid_min_phase_error(a, b, p: int, q: int) -> float:
    """min over grid theta in [0,1) of the worse of the two phase mismatches (turns)."""
    da = _arg(b.z) - _arg(a.z)
    db = _arg(b.w) - _arg(a.w)
    e1 = _circ(p * _GRID - da)
    e2 = _circ(q * _GRID - db)
    return float(np.min(np.maximum(e1, e2)))


def pq_oracle_equal(a, b, p: int, q: int, eps: float) -> bool:
    """Orbit equality by exhaustive search over the circle.

    A point of the orbit matches both phases to within delta exactly when the
    phase mismatch ``q*da - p*db`` is within ``(p + q)*delta`` of an integer,
    so the grid threshold is ``eps/(p + q)`` plus the grid's own resolution.
    """
    if abs(abs(a.z) - abs(b.z)) >= eps or abs(abs(a.w) - abs(b.w)) >= eps:
        return False
    if min(abs(a.z), abs(b.z)) < eps or min(abs(a.w), abs(b.w)) < eps:
        return True
    slack = max(p, q) * GRID_STEP / 2
    return pq_grid_min_phase_error(a, b, p, q) < eps / (p + q) + slack


def sphere_grid_min_distance(a, b) -> float:
    u = np.exp(2j * np.pi * _GRID)
    return float(np.min(np.hypot(np.abs(u * a.z - b.z), np.abs(u * a.w - b.w))))


def witness_scan(a, b, s: float, t: float, bound: int) -> float:
    """Smallest ambient distance over theta = (da + m)/s, |m| <= bound, in 30-digit arithmetic."""
    with mpmath.workdps(30):
        s_, t_ = mpmath.mpf(s), mpmath.mpf(t)
        az = mpmath.mpc(a.z)
        aw = mpmath.mpc(a.w)
        bz = mpmath.mpc(b.z)
        bw = mpmath.mpc(b.w)
        da = (mpmath.arg(bz) - mpmath.arg(az)) / (2 * mpmath.pi)
        best = mpmath.inf
        for m in range(-bound, bound + 1):
            th = (da + m) / s_
            z = az * mpmath.expjpi(2 * s_ * th)
            w = aw * mpmath.expjpi(2 * t_ * th)
            d = mpmath.sqrt(abs(z - bz) ** 2 + abs(w - bw) ** 2)
            if d < best:
                best = d
        return float(best)
