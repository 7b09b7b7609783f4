"""Circle arithmetic in turns and continued-fraction tools.

An angle of ``x`` turns corresponds to the unit complex number
``exp(2j*pi*x)``; reducing modulo 1 is exact for every representable double,
which is why everything downstream keeps phases in turns rather than radians.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

__all__ = [
    "Turn",
    "Tolerance",
    "ContinuedFraction",
    "SearchExhausted",
    "frac",
    "frac_product",
    "circle_dist",
    "signed_turn",
    "arg_turn",
    "unit",
    "continued_fraction",
    "convergents",
    "best_shift",
    "nearest_shift",
]

CF_REMAINDER_CUTOFF = 1e-12


class SearchExhausted(ArithmeticError):
    """A bounded search finished without meeting its tolerance."""

    def __init__(self, message: str, bound: int, best: float):
        super().__init__(message)
        self.bound = bound
        self.best = best


def frac(x: float) -> "Turn":
    """Fractional part ``x - floor(x)`` as a :class:`Turn`.

    >>> float(frac(-0.25))
    0.75
    """
    return Turn(x)


class Turn(float):
    """An angle in turns, always held in ``[0, 1)``.

    Addition, subtraction and negation stay inside the circle group; any
    other arithmetic falls back to plain ``float``.
    """

    __slots__ = ()

    def __new__(cls, value: float = 0.0) -> "Turn":
        value = float(value)
        if not math.isfinite(value):
            raise ValueError(f"turn value must be finite, got {value!r}")
        r = value - math.floor(value)
        # x slightly below an integer can round up to exactly 1.0
        if r >= 1.0:
            r = 0.0
        return super().__new__(cls, r)

    def __add__(self, other):
        if isinstance(other, (int, float)):
            return Turn(float(self) + float(other))
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, float)):
            return Turn(float(self) - float(other))
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, float)):
            return Turn(float(other) - float(self))
        return NotImplemented

    def __neg__(self):
        return Turn(-float(self))

    def __repr__(self) -> str:
        return f"Turn({float(self)!r})"


def _split(a: float) -> tuple[float, float]:
    c = 134217729.0 * a  # 2**27 + 1
    hi = c - (c - a)
    return hi, a - hi


def frac_product(a: float, b: float) -> Turn:
    """``frac(a*b)`` without losing the low bits of the product.

    Uses an error-free two-product, so phases like ``s*theta`` for large
    ``theta`` keep full relative accuracy in their fractional part.
    """
    prod = a * b
    if not math.isfinite(prod):
        raise ValueError("non-finite product")
    a_hi, a_lo = _split(a)
    b_hi, b_lo = _split(b)
    err = ((a_hi * b_hi - prod) + a_hi * b_lo + a_lo * b_hi) + a_lo * b_lo
    whole = math.floor(prod)
    return Turn((prod - whole) + err)


def circle_dist(a: float, b: float) -> float:
    """Shortest arc length between two angles, in ``[0, 0.5]``."""
    d = abs(float(Turn(a)) - float(Turn(b)))
    return min(d, 1.0 - d)


def signed_turn(x: float) -> float:
    """Representative of ``x`` modulo 1 in ``[-0.5, 0.5)``."""
    r = float(Turn(x))
    return r - 1.0 if r >= 0.5 else r


def arg_turn(c: complex) -> Turn:
    """Principal argument of ``c`` in turns, ``[0, 1)``; 0 for ``c == 0``."""
    return Turn(math.atan2(c.imag, c.real) / (2 * math.pi))


def unit(x: float) -> complex:
    """``exp(2j*pi*x)`` for an angle given in turns."""
    r = float(Turn(x))
    # fold to the nearest quarter so the common cases come out exact
    q = round(4 * r)
    rem = r - q / 4
    base = (1, 1j, -1, -1j, 1)[q]
    if rem == 0.0:
        return complex(base)
    ang = 2 * math.pi * rem
    return base * complex(math.cos(ang), math.sin(ang))


@dataclass(frozen=True)
class Tolerance:
    """Absolute tolerance plus the bound for integer searches."""

    eps: float = 1e-9
    search_bound: int = 100

    def __post_init__(self):
        if not (self.eps > 0 and math.isfinite(self.eps)):
            raise ValueError(f"eps must be positive, got {self.eps!r}")
        if int(self.search_bound) != self.search_bound or self.search_bound < 1:
            raise ValueError(f"search_bound must be an integer >= 1, got {self.search_bound!r}")


@dataclass(frozen=True)
class ContinuedFraction:
    partial_quotients: tuple[int, ...]
    source_value: float
    # True when the expansion ran out before the requested depth
    terminated: bool = False

    def value(self) -> Fraction:
        """Exact rational value of the stored quotients."""
        acc = Fraction(self.partial_quotients[-1])
        for a in reversed(self.partial_quotients[:-1]):
            acc = a + 1 / acc
        return acc

    def __len__(self) -> int:
        return len(self.partial_quotients)


def continued_fraction(x: float, n: int) -> ContinuedFraction:
    """First ``n`` partial quotients of ``x > 0``.

    Stops early once the fractional remainder drops below ``1e-12``, which
    is where double precision stops carrying information.

    >>> continued_fraction(1.5, 5).partial_quotients
    (1, 2)
    """
    x = float(x)
    if not (x > 0 and math.isfinite(x)):
        raise ValueError(f"continued fraction needs a finite x > 0, got {x!r}")
    if n < 1:
        raise ValueError("need at least one partial quotient")
    quotients = []
    terminated = False
    y = x
    for _ in range(n):
        a = math.floor(y)
        quotients.append(int(a))
        rem = y - a
        if rem < CF_REMAINDER_CUTOFF:
            terminated = True
            break
        y = 1.0 / rem
    return ContinuedFraction(tuple(quotients), x, terminated)


def convergents(cf: ContinuedFraction | tuple[int, ...] | list[int]) -> list[tuple[int, int]]:
    """Convergents ``(p_k, q_k)`` of a continued fraction.

    >>> convergents([1, 1, 1, 1])
    [(1, 1), (2, 1), (3, 2), (5, 3)]
    """
    quotients = cf.partial_quotients if isinstance(cf, ContinuedFraction) else tuple(cf)
    if not quotients:
        raise ValueError("need at least one partial quotient")
    p_prev, p = 1, quotients[0]
    q_prev, q = 0, 1
    out = [(p, q)]
    for a in quotients[1:]:
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev
        out.append((p, q))
    return out


def denominators_up_to(x: float, bound: int) -> list[int]:
    """Convergent denominators of ``x`` not exceeding ``bound``, plus the first one past it."""
    out: list[int] = []
    for depth in (16, 32, 64):
        out = []
        cf = continued_fraction(x, depth)
        for _, q in convergents(cf):
            if out and q == out[-1]:
                continue
            out.append(q)
            if q > bound:
                return out
        if cf.terminated:
            return out
    return out


def _dist_to_int(v):
    r = v - np.floor(v)
    return np.minimum(r, 1.0 - r)


def best_shift(x: float, tol: Tolerance) -> tuple[int, float]:
    """Integer ``1 <= k <= K`` bringing ``k*x`` closest to an integer.

    Convergent denominators are tried first; for irrational ``x`` the best
    one at or below the bound is already optimal. A full scan runs only
    when they miss the tolerance.

    Raises :class:`SearchExhausted` if nothing within the bound gets under
    ``tol.eps``.
    """
    x = float(x)
    if not (x > 0 and math.isfinite(x)):
        raise ValueError(f"best_shift needs a finite x > 0, got {x!r}")
    K = int(tol.search_bound)
    best_k, best_d = 0, math.inf
    for q in denominators_up_to(x, K):
        if q > K:
            break
        d = circle_dist(frac_product(q, x), 0.0)
        if d < best_d:
            best_k, best_d = q, d
    if best_d >= tol.eps:
        ks = np.arange(1, K + 1)
        dists = _dist_to_int(ks * x)
        i = int(np.argmin(dists))
        if dists[i] < best_d:
            best_k, best_d = int(ks[i]), float(dists[i])
    if best_d >= tol.eps:
        raise SearchExhausted(
            f"no shift 1 <= |k| <= {K} brings k*{x!r} within {tol.eps} of an integer",
            K,
            best_d,
        )
    return best_k, best_d


SCAN_LIMIT = 2_000_000


def _scan_shift(x: float, c: float, bound: int) -> tuple[int, float]:
    ms = np.arange(-bound, bound + 1, dtype=np.int64)
    ms = ms[np.argsort(np.abs(ms), kind="stable")]
    v = ms.astype(float)
    # split x so m*x_hi is exact and the fractional bits survive large m
    x_hi, x_lo = _split(x)
    r = (v * x_hi - np.floor(v * x_hi)) + v * x_lo + c
    r = r - np.floor(r)
    r = np.where(r >= 0.5, r - 1.0, r)
    i = int(np.argmin(np.abs(r)))
    return int(ms[i]), float(r[i])


def _greedy_shift(x: float, c: float, bound: int) -> tuple[int, float]:
    # coarse-to-fine over convergent denominators: each level cancels as
    # much of the residual as its step q*x - p allows
    m = 0
    r = signed_turn(c)
    for q in denominators_up_to(x, bound):
        if q > bound:
            break
        d = signed_turn(frac_product(q, x))
        if d == 0.0:
            continue
        k = round(-r / d)
        while k and abs(m + k * q) > bound:
            k -= 1 if k > 0 else -1
        if k:
            m_new = m + k * q
            r_new = signed_turn(float(frac_product(m_new, x)) + c)
            if abs(r_new) < abs(r):
                m, r = m_new, r_new
    return m, r


def nearest_shift(x: float, c: float, bound: int) -> tuple[int, float]:
    """Integer ``|m| <= bound`` bringing ``m*x + c`` close to an integer.

    This is the inhomogeneous companion of :func:`best_shift`. Up to
    ``SCAN_LIMIT`` every candidate is checked and the optimum returned (ties
    to the smaller ``|m|``); past that, a descent through the convergent
    denominators of ``x`` refines the scan's answer. Returns
    ``(m, residual)`` with the residual in ``[-0.5, 0.5)``.
    """
    bound = int(bound)
    if bound < 0:
        raise ValueError("bound must be >= 0")
    m, r = _scan_shift(x, c, min(bound, SCAN_LIMIT))
    if bound > SCAN_LIMIT:
        m2, r2 = _greedy_shift(x, c, bound)
        if abs(r2) < abs(r):
            m, r = m2, r2
    return m, r
