"""Orbit spaces: canonical representatives and orbit-equality tests.

Equality criteria, with ``da``, ``db`` the z- and w-phase differences in
turns and both coordinates nonzero:

* ``S^3/S^1``: the fibers of the Hopf map are exactly the orbits, so two
  points are equivalent iff their Hopf images agree.
* ``S^3_{p,q}/S^1``: we need ``th`` with ``p*th = da`` and ``q*th = db``
  (mod 1). Writing ``th = (da + m)/p`` the second condition becomes
  ``(q*da - p*db + q*m)/p`` integral, solvable in ``m`` iff
  ``q*da - p*db`` is an integer because ``gcd(p, q) = 1``.
* ``S^3_{s,t}/R``: ``th = (da + m)/s`` matches the z-phase for every integer
  ``m``; the w-phase then matches iff ``(t/s)*(da + m) - db`` is an integer
  for some ``m``. When ``s/t`` is irrational the set of reachable w-phases
  is dense, so "not equal" can never be certified from finitely many ``m``
  and the test answers UNDETERMINED instead.

When one coordinate vanishes the orbit is the whole circle in the other
coordinate, so the poles are single points of the quotient.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .angles import (
    SearchExhausted,
    Tolerance,
    Turn,
    arg_turn,
    circle_dist,
    denominators_up_to,
    nearest_shift,
    signed_turn,
    unit,
)
from .spaces import (
    EllipsoidPointPQ,
    EllipsoidPointST,
    Space,
    SpherePoint3,
    TotalPoint,
    act,
    act_st,
    hopf,
)

__all__ = [
    "Outcome",
    "EquivalenceVerdict",
    "OrbitRef",
    "ClosureWitness",
    "canonical_sphere",
    "canonical_pq",
    "orbit_equal_sphere",
    "orbit_equal_pq",
    "orbit_equal_st",
    "orbit_equal",
    "closure_witness",
    "orbit_distance",
    "ambient_distance",
]

# below this modulus a coordinate counts as zero for canonical forms
POLE_TOL = 1e-12


class Outcome(enum.Enum):
    EQUAL = "Equal"
    NOT_EQUAL = "NotEqual"
    UNDETERMINED = "Undetermined"


@dataclass(frozen=True)
class EquivalenceVerdict:
    outcome: Outcome
    witness: Optional[float]
    tolerance: Tolerance

    @property
    def equal(self) -> bool:
        return self.outcome is Outcome.EQUAL

    @property
    def exit_code(self) -> int:
        return {Outcome.EQUAL: 0, Outcome.NOT_EQUAL: 1, Outcome.UNDETERMINED: 2}[self.outcome]


def ambient_distance(a: TotalPoint, b: TotalPoint) -> float:
    """Euclidean distance in C^2."""
    return math.hypot(abs(a.z - b.z), abs(a.w - b.w))


def _as_tolerance(tol) -> Tolerance:
    if isinstance(tol, Tolerance):
        return tol
    return Tolerance(eps=float(tol))


def _same_weights(a, b):
    if type(a) is not type(b):
        raise TypeError(f"points live on different spaces: {type(a).__name__} vs {type(b).__name__}")
    if a.weights != b.weights:
        raise ValueError(f"mismatched weights {a.weights} vs {b.weights}")


def _moduli_close(a, b, eps: float) -> bool:
    return abs(abs(a.z) - abs(b.z)) < eps and abs(abs(a.w) - abs(b.w)) < eps


def canonical_sphere(p: SpherePoint3) -> SpherePoint3:
    """Orbit representative with ``w`` real and nonnegative (``z`` if ``w = 0``)."""
    mw = abs(p.w)
    if mw > POLE_TOL:
        return SpherePoint3(p.z * p.w.conjugate() / mw, mw)
    return SpherePoint3(abs(p.z), 0.0)


def canonical_pq(p: EllipsoidPointPQ) -> EllipsoidPointPQ:
    """Orbit representative with ``w >= 0`` real and ``arg z`` in ``[0, 1/q)``.

    Rotating ``w`` onto the positive axis leaves a residual ``Z_q`` acting on
    ``z`` by multiples of ``p/q`` turns, which (p, q coprime) is the same as
    multiples of ``1/q``. A vanishing coordinate makes the other one sweep
    its whole circle, so the poles become ``(sqrt q, 0)`` and ``(0, sqrt p)``.
    """
    P, Q = p.pq.p, p.pq.q
    mz, mw = abs(p.z), abs(p.w)
    if mz <= POLE_TOL:
        return EllipsoidPointPQ(0.0, math.sqrt(P), p.pq)
    if mw <= POLE_TOL:
        return EllipsoidPointPQ(math.sqrt(Q), 0.0, p.pq)
    r = float(Turn(arg_turn(p.z) - P * float(arg_turn(p.w)) / Q))
    r = r - math.floor(r * Q) / Q
    if r >= 1.0 / Q:
        r = 0.0
    return EllipsoidPointPQ(mz * unit(r), mw, p.pq)


def _phase_diffs(a, b) -> tuple[float, float]:
    da = signed_turn(arg_turn(b.z) - arg_turn(a.z))
    db = signed_turn(arg_turn(b.w) - arg_turn(a.w))
    return da, db


def orbit_equal_sphere(a: SpherePoint3, b: SpherePoint3, eps: float | Tolerance = 1e-9) -> EquivalenceVerdict:
    """Equal iff the Hopf images agree within ``eps``; never undetermined."""
    tol = _as_tolerance(eps)
    ha, hb = hopf(a), hopf(b)
    if max(abs(ha.z - hb.z), abs(ha.x - hb.x)) >= tol.eps:
        return EquivalenceVerdict(Outcome.NOT_EQUAL, None, tol)
    # phase of the better-conditioned coordinate
    if abs(a.w) >= abs(a.z):
        theta = Turn(arg_turn(b.w) - arg_turn(a.w))
    else:
        theta = Turn(arg_turn(b.z) - arg_turn(a.z))
    return EquivalenceVerdict(Outcome.EQUAL, float(theta), tol)


def orbit_equal_pq(a: EllipsoidPointPQ, b: EllipsoidPointPQ, eps: float | Tolerance = 1e-9) -> EquivalenceVerdict:
    """Closed-form test: moduli agree and ``q*da - p*db`` is an integer."""
    _same_weights(a, b)
    tol = _as_tolerance(eps)
    P, Q = a.pq.p, a.pq.q
    if not _moduli_close(a, b, tol.eps):
        return EquivalenceVerdict(Outcome.NOT_EQUAL, None, tol)
    da, db = _phase_diffs(a, b)
    if abs(a.z) < tol.eps or abs(b.z) < tol.eps:
        return EquivalenceVerdict(Outcome.EQUAL, float(Turn(db / Q)), tol)
    if abs(a.w) < tol.eps or abs(b.w) < tol.eps:
        return EquivalenceVerdict(Outcome.EQUAL, float(Turn(da / P)), tol)
    n_real = Q * da - P * db
    if circle_dist(n_real, 0.0) >= tol.eps:
        return EquivalenceVerdict(Outcome.NOT_EQUAL, None, tol)
    n = round(n_real)
    # q*m = -n (mod p)
    m = (-n * pow(Q, -1, P)) % P if P > 1 else 0
    return EquivalenceVerdict(Outcome.EQUAL, float(Turn((da + m) / P)), tol)


def orbit_equal_st(a: EllipsoidPointST, b: EllipsoidPointST, tol: Tolerance | None = None) -> EquivalenceVerdict:
    """Bounded semidecision for the quasisphere.

    Searches ``|m| <= tol.search_bound`` (smallest ``|m|`` first) for a
    w-phase mismatch below ``tol.eps`` turns. Matching moduli never produce
    NOT_EQUAL: a failed search is UNDETERMINED.
    """
    _same_weights(a, b)
    tol = tol or Tolerance()
    s, t = a.st.s, a.st.t
    if not _moduli_close(a, b, tol.eps):
        return EquivalenceVerdict(Outcome.NOT_EQUAL, None, tol)
    da, db = _phase_diffs(a, b)
    if abs(a.z) < tol.eps or abs(b.z) < tol.eps:
        return EquivalenceVerdict(Outcome.EQUAL, db / t, tol)
    if abs(a.w) < tol.eps or abs(b.w) < tol.eps:
        return EquivalenceVerdict(Outcome.EQUAL, da / s, tol)
    K = int(tol.search_bound)
    ms = np.arange(-K, K + 1)
    ms = ms[np.argsort(np.abs(ms), kind="stable")]
    r = (t / s) * (da + ms) - db
    r = r - np.floor(r)
    dist = np.minimum(r, 1.0 - r)
    hits = np.flatnonzero(dist < tol.eps)
    if hits.size == 0:
        return EquivalenceVerdict(Outcome.UNDETERMINED, None, tol)
    m = int(ms[hits[0]])
    return EquivalenceVerdict(Outcome.EQUAL, (da + m) / s, tol)


def orbit_distance(a: TotalPoint, b: TotalPoint, tol: Tolerance | None = None) -> float:
    """Ambient distance from ``b`` to ``a`` moved by the equality witness; ``inf`` if not Equal."""
    verdict = orbit_equal(a, b, tol)
    if not verdict.equal:
        return math.inf
    return ambient_distance(act(verdict.witness, a), b)


def orbit_equal(a: TotalPoint, b: TotalPoint, tol: Tolerance | None = None) -> EquivalenceVerdict:
    tol = tol or Tolerance()
    if isinstance(a, SpherePoint3) and isinstance(b, SpherePoint3):
        return orbit_equal_sphere(a, b, tol)
    if isinstance(a, EllipsoidPointPQ):
        return orbit_equal_pq(a, b, tol)
    if isinstance(a, EllipsoidPointST):
        return orbit_equal_st(a, b, tol)
    raise TypeError(f"points live on different spaces: {type(a).__name__} vs {type(b).__name__}")


@dataclass(frozen=True, eq=False)
class OrbitRef:
    """A point of a quotient, held through one representative.

    ``==`` is orbit equality at the default tolerance; an UNDETERMINED
    quasisphere comparison counts as unequal. Use :meth:`compare` for the
    full verdict.
    """

    representative: TotalPoint

    @property
    def space(self) -> Space:
        return self.representative.space

    def compare(self, other: "OrbitRef", tol: Tolerance | None = None) -> EquivalenceVerdict:
        return orbit_equal(self.representative, other.representative, tol)

    def __eq__(self, other):
        if not isinstance(other, OrbitRef):
            return NotImplemented
        if self.space is not other.space:
            return False
        return self.compare(other).equal

    __hash__ = None


@dataclass(frozen=True)
class ClosureWitness:
    theta: float
    achieved: float
    shift: int
    bound: int


def closure_witness(a: EllipsoidPointST, b: EllipsoidPointST, eps: float) -> ClosureWitness:
    """Flow parameter carrying ``a`` within ``eps`` of ``b``.

    The z-phase is matched exactly by ``th = (da + m)/s``; ``m`` is chosen
    among ``|m| <= Q``, ``Q`` the first convergent denominator of ``t/s``
    above ``1/eps``, to bring the w-phase closest. A final small correction
    of ``th`` balances the residual error between the two coordinates.

    Raises :class:`SearchExhausted` if the best shift within ``Q`` still
    misses ``eps``.
    """
    _same_weights(a, b)
    eps = float(eps)
    if not eps > 0:
        raise ValueError("eps must be positive")
    if not _moduli_close(a, b, eps / 10):
        raise ValueError("moduli of the two points differ; they lie on different orbit closures")
    if abs(a.z) == 0.0 or abs(a.w) == 0.0:
        raise ValueError("closure witness needs both coordinates nonzero")
    s, t = a.st.s, a.st.t
    x = t / s
    dens = denominators_up_to(x, math.ceil(1.0 / eps))
    bound = dens[-1]
    da, db = _phase_diffs(a, b)
    m, r = nearest_shift(x, x * da - db, bound)
    theta0 = (da + m) / s
    mz2, mw2 = abs(a.z) ** 2, abs(a.w) ** 2
    tau = -r * t * mw2 / (s * s * mz2 + t * t * mw2)
    best_theta, best = theta0, ambient_distance(act_st(theta0, a), b)
    refined = ambient_distance(act_st(theta0 + tau, a), b)
    if refined < best:
        best_theta, best = theta0 + tau, refined
    if best >= eps:
        raise SearchExhausted(
            f"best shift |m| <= {bound} reaches distance {best:.3g}, not below {eps}",
            bound,
            best,
        )
    return ClosureWitness(best_theta, best, m, bound)
