"""Charts around the two poles and the change of charts between them.

All three quotients share one pattern. With ``(a, b)`` equal to ``(1, 1)``,
``(p, q)`` or ``(s, t)`` and the ellipsoid ``a|z|^2 + b|w|^2 = ab``:

    south chart   [z]  ->  [z : sqrt(a - (a/b)|z|^2)]     on  B(b) / G_S
    north chart   [w]  ->  [sqrt(b - (b/a)|w|^2) : w]     on  B(a) / G_N

where ``B(r)`` is the disk ``|z|^2 < r``. ``G_S`` is what survives of the
acting group once ``w`` is pinned to the positive real axis: flows by
``k/b`` rotate ``z`` by ``k*a/b`` turns. For the orbisphere that is the
cyclic group generated by ``1/q`` (same group as ``p/q``), for the
quasisphere the dense subgroup generated by ``s/t``. Symmetrically ``G_N``
is generated by ``1/p`` resp. ``t/s``.

The change of charts ``[z] -> [(conj z/|z|)^(b/a) sqrt(a - (a/b)|z|^2)]``
depends on a branch of the power; different branches differ by an element
of ``G_N``, so only the class is meaningful.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .angles import Tolerance, Turn, arg_turn, signed_turn, unit
from .quotients import EquivalenceVerdict, OrbitRef, Outcome
from .spaces import (
    EllipsoidPointPQ,
    EllipsoidPointST,
    Space,
    SpherePoint3,
    WeightsPQ,
    WeightsST,
    act,
)

__all__ = [
    "Pole",
    "GroupKind",
    "DiskClass",
    "ChartSpec",
    "chart",
    "phi_S",
    "phi_S_inv",
    "phi_N",
    "phi_N_inv",
    "phi",
    "phi_inv",
    "transition_SN",
    "transition_NS",
    "disk_class_equal",
    "disk_class_distance",
]

BOUNDARY_GUARD = 1e-9
CHART_MIN_MODULUS = 1e-9


class Pole(enum.Enum):
    SOUTH = "S"
    NORTH = "N"


class GroupKind(enum.Enum):
    TRIVIAL = "trivial"
    CYCLIC = "cyclic"
    DENSE = "dense"


@dataclass(frozen=True)
class ChartSpec:
    """One of the six charts: a space, its weights and a pole."""

    space: Space
    pole: Pole
    weights: WeightsPQ | WeightsST | None = None

    def __post_init__(self):
        expected = {Space.SPHERE: type(None), Space.ORBI: WeightsPQ, Space.QUASI: WeightsST}[self.space]
        if not isinstance(self.weights, expected):
            raise TypeError(f"{self.space.value} chart needs weights of type {expected.__name__}")

    @property
    def ab(self) -> tuple[float, float]:
        """``(a, b)`` in ``a|z|^2 + b|w|^2 = ab``."""
        if self.space is Space.SPHERE:
            return 1.0, 1.0
        if self.space is Space.ORBI:
            return float(self.weights.p), float(self.weights.q)
        return self.weights.s, self.weights.t

    @property
    def domain_radius_sq(self) -> float:
        a, b = self.ab
        return b if self.pole is Pole.SOUTH else a

    @property
    def group_kind(self) -> GroupKind:
        if self.space is Space.SPHERE:
            return GroupKind.TRIVIAL
        if self.space is Space.ORBI:
            n = self.order
            return GroupKind.TRIVIAL if n == 1 else GroupKind.CYCLIC
        return GroupKind.DENSE

    @property
    def order(self) -> int | None:
        """Order of the disk group, ``None`` when infinite."""
        if self.space is Space.SPHERE:
            return 1
        if self.space is Space.ORBI:
            return self.weights.q if self.pole is Pole.SOUTH else self.weights.p
        return None

    @property
    def generator(self) -> Turn:
        if self.space is Space.QUASI:
            a, b = self.ab
            return Turn(a / b) if self.pole is Pole.SOUTH else Turn(b / a)
        return Turn(1.0 / self.order)

    @property
    def opposite(self) -> "ChartSpec":
        return ChartSpec(self.space, Pole.NORTH if self.pole is Pole.SOUTH else Pole.SOUTH, self.weights)

    def disk(self, rep: complex) -> "DiskClass":
        return DiskClass(complex(rep), self.domain_radius_sq, self.generator, self.group_kind, self.order)


def chart(space: Space | str, pole: Pole | str, weights=None) -> ChartSpec:
    return ChartSpec(Space(space), Pole(pole), weights)


@dataclass(frozen=True)
class DiskClass:
    """A point of ``B(radius_sq)`` modulo rotations by multiples of ``generator``."""

    rep: complex
    radius_sq: float
    generator: Turn
    group_kind: GroupKind
    order: int | None = None

    def __post_init__(self):
        rep = complex(self.rep)
        object.__setattr__(self, "rep", rep)
        if not (math.isfinite(rep.real) and math.isfinite(rep.imag)):
            raise ValueError("non-finite disk point")
        if not abs(rep) ** 2 < self.radius_sq:
            raise ValueError(f"|rep|^2 = {abs(rep) ** 2!r} not below the disk radius^2 {self.radius_sq!r}")
        gen = Turn(self.generator)
        object.__setattr__(self, "generator", gen)
        if self.group_kind is GroupKind.TRIVIAL and gen != 0.0:
            raise ValueError("trivial disk group needs generator 0")
        if self.group_kind is GroupKind.CYCLIC and (self.order is None or abs(gen - 1.0 / self.order) > 1e-15):
            raise ValueError("cyclic disk group of order n needs generator 1/n")

    @property
    def near_boundary(self) -> bool:
        """Within ``1e-9`` of the rim, where the chart square root loses precision."""
        return self.radius_sq - abs(self.rep) ** 2 < BOUNDARY_GUARD

    def rotated(self, k: int) -> "DiskClass":
        """Same class, representative moved by ``k`` generator steps."""
        return DiskClass(
            self.rep * unit(k * float(self.generator)), self.radius_sq, self.generator, self.group_kind, self.order
        )

    def _shape(self):
        return (self.radius_sq, float(self.generator), self.group_kind, self.order)


def _require(spec: ChartSpec, pole: Pole):
    if spec.pole is not pole:
        raise ValueError(f"expected a {pole.name.lower()} chart, got {spec.pole.name.lower()}")


def _check_domain(spec: ChartSpec, d: DiskClass):
    if d._shape() != spec.disk(0)._shape():
        raise ValueError("disk class does not belong to this chart's domain")


def _point(spec: ChartSpec, z: complex, w: complex):
    if spec.space is Space.SPHERE:
        return SpherePoint3(z, w)
    if spec.space is Space.ORBI:
        return EllipsoidPointPQ(z, w, spec.weights)
    return EllipsoidPointST(z, w, spec.weights)


def _flow_to_real(spec: ChartSpec, point, phase: float, weight: float):
    """Flow ``point`` so that the coordinate with argument ``phase`` turns becomes real positive.

    Uses the smallest-magnitude parameter: the signed phase over its weight.
    """
    theta = -signed_turn(phase) / weight
    if spec.space is Space.SPHERE:
        theta = float(Turn(theta))
    return act(theta, point)


def phi_S(spec: ChartSpec, d: DiskClass) -> OrbitRef:
    """South chart ``[z] -> [z : sqrt(a - (a/b)|z|^2)]``."""
    _require(spec, Pole.SOUTH)
    _check_domain(spec, d)
    a, b = spec.ab
    w = math.sqrt(max(0.0, a - (a / b) * abs(d.rep) ** 2))
    return OrbitRef(_point(spec, d.rep, w))


def phi_N(spec: ChartSpec, d: DiskClass) -> OrbitRef:
    """North chart ``[w] -> [sqrt(b - (b/a)|w|^2) : w]``."""
    _require(spec, Pole.NORTH)
    _check_domain(spec, d)
    a, b = spec.ab
    z = math.sqrt(max(0.0, b - (b / a) * abs(d.rep) ** 2))
    return OrbitRef(_point(spec, z, d.rep))


def _representative(x):
    return x.representative if isinstance(x, OrbitRef) else x


def phi_S_inv(spec: ChartSpec, x) -> DiskClass:
    _require(spec, Pole.SOUTH)
    p = _representative(x)
    if abs(p.w) <= CHART_MIN_MODULUS:
        raise ValueError("point has w = 0 and lies outside the south chart")
    a, b = spec.ab
    moved = _flow_to_real(spec, p, arg_turn(p.w), b)
    return spec.disk(moved.z)


def phi_N_inv(spec: ChartSpec, x) -> DiskClass:
    _require(spec, Pole.NORTH)
    p = _representative(x)
    if abs(p.z) <= CHART_MIN_MODULUS:
        raise ValueError("point has z = 0 and lies outside the north chart")
    a, b = spec.ab
    moved = _flow_to_real(spec, p, arg_turn(p.z), a)
    return spec.disk(moved.w)


def phi(spec: ChartSpec, d: DiskClass) -> OrbitRef:
    return phi_S(spec, d) if spec.pole is Pole.SOUTH else phi_N(spec, d)


def phi_inv(spec: ChartSpec, x) -> DiskClass:
    return phi_S_inv(spec, x) if spec.pole is Pole.SOUTH else phi_N_inv(spec, x)


def _transition(src: ChartSpec, d: DiskClass, exponent: float, a: float, b: float) -> DiskClass:
    _check_domain(src, d)
    mz = abs(d.rep)
    if mz <= CHART_MIN_MODULUS:
        raise ValueError("rep = 0 is outside the chart overlap")
    modulus = math.sqrt(max(0.0, a - (a / b) * mz * mz))
    # principal branch of (conj z / |z|) ** exponent, in turns
    angle = Turn(exponent * float(Turn(-arg_turn(d.rep))))
    return src.opposite.disk(modulus * unit(angle))


def transition_SN(spec: ChartSpec, d: DiskClass) -> DiskClass:
    """Change of charts from south to north, ``phi_N^{-1} o phi_S``.

    ``spec`` may be either chart of the pair; ``d`` lives in the south disk.
    """
    south = spec if spec.pole is Pole.SOUTH else spec.opposite
    a, b = south.ab
    return _transition(south, d, b / a, a, b)


def transition_NS(spec: ChartSpec, d: DiskClass) -> DiskClass:
    """Change of charts from north to south; inverse of :func:`transition_SN` on classes."""
    north = spec if spec.pole is Pole.NORTH else spec.opposite
    a, b = north.ab
    return _transition(north, d, a / b, b, a)


def disk_class_equal(d1: DiskClass, d2: DiskClass, tol: Tolerance | None = None) -> EquivalenceVerdict:
    """Compare two disk classes; the witness is the group element index ``k``.

    Finite groups are checked exhaustively. For the dense case ``|k|`` up to
    ``tol.search_bound`` is tried, smallest first, and a miss is reported as
    UNDETERMINED.
    """
    tol = tol or Tolerance()
    if d1._shape() != d2._shape():
        raise ValueError("disk classes live in different chart domains")
    if abs(abs(d1.rep) - abs(d2.rep)) >= tol.eps:
        return EquivalenceVerdict(Outcome.NOT_EQUAL, None, tol)
    if abs(d1.rep) < tol.eps:
        return EquivalenceVerdict(Outcome.EQUAL, 0, tol)
    if d1.group_kind is GroupKind.TRIVIAL:
        ok = abs(d1.rep - d2.rep) < tol.eps
        return EquivalenceVerdict(Outcome.EQUAL if ok else Outcome.NOT_EQUAL, 0 if ok else None, tol)
    if d1.group_kind is GroupKind.CYCLIC:
        for k in range(d1.order):
            if abs(d1.rotated(k).rep - d2.rep) < tol.eps:
                return EquivalenceVerdict(Outcome.EQUAL, k, tol)
        return EquivalenceVerdict(Outcome.NOT_EQUAL, None, tol)
    delta = float(arg_turn(d2.rep) - arg_turn(d1.rep))
    K = int(tol.search_bound)
    ks = np.arange(-K, K + 1)
    ks = ks[np.argsort(np.abs(ks), kind="stable")]
    r = ks * float(d1.generator) - delta
    r = r - np.floor(r)
    dist = np.minimum(r, 1.0 - r)
    hits = np.flatnonzero(dist < tol.eps)
    if hits.size == 0:
        return EquivalenceVerdict(Outcome.UNDETERMINED, None, tol)
    return EquivalenceVerdict(Outcome.EQUAL, int(ks[hits[0]]), tol)


def disk_class_distance(d1: DiskClass, d2: DiskClass, tol: Tolerance | None = None) -> float:
    """Distance between representatives after aligning by the group.

    Finite groups take the minimum over all rotations; for the dense group
    the rotation is the witness of :func:`disk_class_equal`, and ``inf``
    means none was found within the search bound.
    """
    tol = tol or Tolerance()
    if d1.group_kind is GroupKind.TRIVIAL:
        return abs(d1.rep - d2.rep)
    if d1.group_kind is GroupKind.CYCLIC:
        return min(abs(d1.rotated(k).rep - d2.rep) for k in range(d1.order))
    verdict = disk_class_equal(d1, d2, tol)
    if not verdict.equal:
        return math.inf
    return abs(d1.rotated(int(verdict.witness)).rep - d2.rep)

