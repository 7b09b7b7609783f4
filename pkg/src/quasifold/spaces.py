"""Points on the three total spaces and the groups acting on them.

* ``S^3``: ``|z|^2 + |w|^2 = 1`` with the diagonal circle action.
* ``S^3_{p,q}``: ``p|z|^2 + q|w|^2 = pq`` with ``(e(p*th) z, e(q*th) w)``.
* ``S^3_{s,t}``: ``s|z|^2 + t|w|^2 = st`` with the same formula, but for a
  real flow parameter; with ``s/t`` irrational it never closes up.

Here ``e(x) = exp(2j*pi*x)`` and all phases are in turns.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .angles import ContinuedFraction, Turn, continued_fraction, frac_product, unit

__all__ = [
    "Space",
    "WeightsPQ",
    "WeightsST",
    "NearRationalWarning",
    "SpherePoint3",
    "EllipsoidPointPQ",
    "EllipsoidPointST",
    "S2Point",
    "TotalPoint",
    "hopf",
    "hopf_preimage",
    "act_hopf",
    "act_pq",
    "act_st",
    "act",
    "make_point_sphere",
    "make_point_pq",
    "make_point_st",
    "constraint_residual",
    "sample_uniform",
    "space_of",
]

VALIDATION_TOL = 1e-10
CF_DEPTH = 20
EPS_MACHINE = 2.0**-52


class Space(enum.Enum):
    SPHERE = "sphere"
    ORBI = "orbi"
    QUASI = "quasi"


class NearRationalWarning(UserWarning):
    """The ratio s/t has a terminating continued fraction at the checked depth."""


@dataclass(frozen=True)
class WeightsPQ:
    p: int
    q: int

    def __post_init__(self):
        for name in ("p", "q"):
            v = getattr(self, name)
            if isinstance(v, bool) or int(v) != v or v < 1:
                raise ValueError(f"{name} must be a positive integer, got {v!r}")
            object.__setattr__(self, name, int(v))
        if math.gcd(self.p, self.q) != 1:
            raise ValueError(f"p={self.p} and q={self.q} are not coprime")


@dataclass(frozen=True)
class WeightsST:
    s: float
    t: float
    ratio_cf: ContinuedFraction = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        s, t = float(self.s), float(self.t)
        if not (s > 0 and t > 0 and math.isfinite(s) and math.isfinite(t)):
            raise ValueError(f"s and t must be finite and positive, got {self.s!r}, {self.t!r}")
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "t", t)
        cf = continued_fraction(s / t, CF_DEPTH)
        object.__setattr__(self, "ratio_cf", cf)
        if cf.terminated:
            warnings.warn(
                f"s/t = {s / t!r} has continued fraction {list(cf.partial_quotients)}; "
                "the flow closes up and the quotient is an orbifold",
                NearRationalWarning,
                stacklevel=3,
            )

    @property
    def near_rational(self) -> bool:
        return self.ratio_cf.terminated


def _check_complex(v) -> complex:
    c = complex(v)
    if not (math.isfinite(c.real) and math.isfinite(c.imag)):
        raise ValueError(f"non-finite coordinate {v!r}")
    return c


@dataclass(frozen=True)
class SpherePoint3:
    z: complex
    w: complex

    space = Space.SPHERE

    def __post_init__(self):
        object.__setattr__(self, "z", _check_complex(self.z))
        object.__setattr__(self, "w", _check_complex(self.w))
        r = self.residual()
        if r > VALIDATION_TOL:
            raise ValueError(f"({self.z}, {self.w}) is off S^3: residual {r:.3g}")

    @property
    def weights(self) -> tuple[float, float]:
        return (1.0, 1.0)

    def residual(self) -> float:
        return abs(abs(self.z) ** 2 + abs(self.w) ** 2 - 1.0)


@dataclass(frozen=True)
class EllipsoidPointPQ:
    z: complex
    w: complex
    pq: WeightsPQ

    space = Space.ORBI

    def __post_init__(self):
        object.__setattr__(self, "z", _check_complex(self.z))
        object.__setattr__(self, "w", _check_complex(self.w))
        r = self.residual()
        if r > VALIDATION_TOL:
            raise ValueError(f"({self.z}, {self.w}) is off S^3_{{{self.pq.p},{self.pq.q}}}: residual {r:.3g}")

    @property
    def weights(self) -> tuple[float, float]:
        return (float(self.pq.p), float(self.pq.q))

    def residual(self) -> float:
        p, q = self.pq.p, self.pq.q
        return abs(p * abs(self.z) ** 2 + q * abs(self.w) ** 2 - p * q)


@dataclass(frozen=True)
class EllipsoidPointST:
    z: complex
    w: complex
    st: WeightsST

    space = Space.QUASI

    def __post_init__(self):
        object.__setattr__(self, "z", _check_complex(self.z))
        object.__setattr__(self, "w", _check_complex(self.w))
        r = self.residual()
        if r > VALIDATION_TOL * max(1.0, self.st.s * self.st.t):
            raise ValueError(f"({self.z}, {self.w}) is off S^3_{{s,t}}: residual {r:.3g}")

    @property
    def weights(self) -> tuple[float, float]:
        return (self.st.s, self.st.t)

    def residual(self) -> float:
        s, t = self.st.s, self.st.t
        return abs(s * abs(self.z) ** 2 + t * abs(self.w) ** 2 - s * t)


TotalPoint = Union[SpherePoint3, EllipsoidPointPQ, EllipsoidPointST]


@dataclass(frozen=True)
class S2Point:
    z: complex
    x: float

    def __post_init__(self):
        object.__setattr__(self, "z", _check_complex(self.z))
        object.__setattr__(self, "x", float(self.x))
        r = abs(abs(self.z) ** 2 + self.x**2 - 1.0)
        if r > VALIDATION_TOL:
            raise ValueError(f"({self.z}, {self.x}) is off S^2: residual {r:.3g}")


def space_of(point: TotalPoint) -> Space:
    return point.space


def constraint_residual(point) -> float:
    """Absolute deviation of ``point`` from its space's defining equation."""
    if isinstance(point, S2Point):
        return abs(abs(point.z) ** 2 + point.x**2 - 1.0)
    return point.residual()


def hopf(p: SpherePoint3) -> S2Point:
    """The Hopf map ``(z, w) -> (2 z conj(w), |z|^2 - |w|^2)``."""
    return S2Point(2 * p.z * p.w.conjugate(), abs(p.z) ** 2 - abs(p.w) ** 2)


def hopf_preimage(y: S2Point) -> SpherePoint3:
    """One point of the fiber over ``y``.

    Moduli are ``sqrt((1 + x)/2)`` and ``sqrt((1 - x)/2)``; the phase goes on
    whichever coordinate is larger so the division stays well conditioned.
    """
    x = min(1.0, max(-1.0, y.x))
    mz = math.sqrt((1 + x) / 2)
    mw = math.sqrt((1 - x) / 2)
    if mw >= mz:
        return SpherePoint3(y.z / (2 * mw), mw)
    return SpherePoint3(mz, y.z.conjugate() / (2 * mz))


def act_hopf(theta: float, p: SpherePoint3) -> SpherePoint3:
    """Diagonal circle action ``(e(th) z, e(th) w)``."""
    u = unit(Turn(theta))
    return SpherePoint3(u * p.z, u * p.w)


def act_pq(theta: float, p: EllipsoidPointPQ) -> EllipsoidPointPQ:
    """Weighted circle action ``(e(p th) z, e(q th) w)``, ``th`` a turn."""
    th = float(Turn(theta))
    return EllipsoidPointPQ(
        unit(frac_product(p.pq.p, th)) * p.z,
        unit(frac_product(p.pq.q, th)) * p.w,
        p.pq,
    )


def act_st(theta: float, p: EllipsoidPointST) -> EllipsoidPointST:
    """Real flow ``(e(s th) z, e(t th) w)``.

    ``theta`` is a real number, not a turn: shifting it by an integer moves
    the point unless ``s`` and ``t`` are both integers.
    """
    theta = float(theta)
    if not math.isfinite(theta):
        raise ValueError("flow parameter must be finite")
    return EllipsoidPointST(
        unit(frac_product(p.st.s, theta)) * p.z,
        unit(frac_product(p.st.t, theta)) * p.w,
        p.st,
    )


def act(theta: float, p: TotalPoint) -> TotalPoint:
    """Dispatch to the action belonging to ``p``'s space."""
    if isinstance(p, SpherePoint3):
        return act_hopf(theta, p)
    if isinstance(p, EllipsoidPointPQ):
        return act_pq(theta, p)
    return act_st(theta, p)


def _w_modulus(a: float, b: float, modulus_z: float) -> float:
    # a|z|^2 + b|w|^2 = ab  =>  |w|^2 = a - (a/b)|z|^2
    modulus_z = float(modulus_z)
    if not (0.0 <= modulus_z <= math.sqrt(b) * (1 + 1e-15)):
        raise ValueError(f"|z| = {modulus_z!r} outside [0, {math.sqrt(b)!r}]")
    w_sq = a - (a / b) * modulus_z * modulus_z
    # |z| = sqrt(b) rounded leaves a few ulps behind; that is the pole itself
    if w_sq <= 4 * EPS_MACHINE * a:
        return 0.0
    return math.sqrt(w_sq)


def make_point_sphere(modulus_z: float, arg_z: float, arg_w: float) -> SpherePoint3:
    mw = _w_modulus(1.0, 1.0, modulus_z)
    return SpherePoint3(modulus_z * unit(arg_z), mw * unit(arg_w))


def make_point_pq(modulus_z: float, arg_z: float, arg_w: float, weights: WeightsPQ) -> EllipsoidPointPQ:
    mw = _w_modulus(weights.p, weights.q, modulus_z)
    return EllipsoidPointPQ(modulus_z * unit(arg_z), mw * unit(arg_w), weights)


def make_point_st(modulus_z: float, arg_z: float, arg_w: float, weights: WeightsST) -> EllipsoidPointST:
    """Point with ``|z| = modulus_z`` and ``|w|`` solved from the ellipsoid equation."""
    mw = _w_modulus(weights.s, weights.t, modulus_z)
    return EllipsoidPointST(modulus_z * unit(arg_z), mw * unit(arg_w), weights)


def make_point(modulus_z: float, arg_z: float, arg_w: float, weights=None) -> TotalPoint:
    if weights is None:
        return make_point_sphere(modulus_z, arg_z, arg_w)
    if isinstance(weights, WeightsPQ):
        return make_point_pq(modulus_z, arg_z, arg_w, weights)
    return make_point_st(modulus_z, arg_z, arg_w, weights)


def sample_uniform(weights, count: int, seed: int) -> list[TotalPoint]:
    """Deterministic random points on the total space selected by ``weights``.

    ``weights`` is ``None`` for ``S^3``, a :class:`WeightsPQ` or a
    :class:`WeightsST`. ``|z|^2`` is uniform on ``[0, b]`` (``b`` = 1, q or t)
    and both phases are independent uniform turns.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    if weights is None:
        b = 1.0
    elif isinstance(weights, WeightsPQ):
        b = float(weights.q)
    else:
        b = weights.t
    rng = np.random.default_rng(seed)
    mod_sq = rng.uniform(0.0, b, count)
    arg_z = rng.random(count)
    arg_w = rng.random(count)
    return [
        make_point(math.sqrt(m), az, aw, weights)
        for m, az, aw in zip(mod_sq.tolist(), arg_z.tolist(), arg_w.tolist())
    ]
