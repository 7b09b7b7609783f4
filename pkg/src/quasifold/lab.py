"""Library side of the command-line tool.

Each ``cmd_*`` function takes a :class:`RunConfig` plus its own arguments and
returns a :class:`CommandResult`: tabular rows or a report document, and the
process exit status. Writing files is left to :mod:`quasifold.cli`.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from . import __version__
from .angles import SearchExhausted, Tolerance, Turn, arg_turn, frac_product
from .atlas import (
    ChartSpec,
    Pole,
    disk_class_distance,
    disk_class_equal,
    phi,
    phi_inv,
    phi_N,
    phi_S,
    transition_NS,
    transition_SN,
)
from .quotients import closure_witness, orbit_distance, orbit_equal
from .spaces import (
    EllipsoidPointPQ,
    EllipsoidPointST,
    NearRationalWarning,
    S2Point,
    Space,
    SpherePoint3,
    WeightsPQ,
    WeightsST,
    act,
    constraint_residual,
    hopf,
    hopf_preimage,
    make_point,
    sample_uniform,
)

__all__ = [
    "PRESETS",
    "UsageError",
    "RunConfig",
    "GapReport",
    "CommandResult",
    "parse_real",
    "parse_point",
    "parse_s2_point",
    "gap_report",
    "cmd_sample_orbit",
    "cmd_gaps",
    "cmd_check_equal",
    "cmd_chart_roundtrip",
    "cmd_hopf_fiber",
    "cmd_witness",
]

PRESETS = {
    "golden": (1 + math.sqrt(5)) / 2,
    "sqrt2": math.sqrt(2),
    "sqrt3": math.sqrt(3),
    # real root of x^3 = x + 1
    "plastic": 1.324717957244746,
}

GAP_CLUSTER = 1e-9
ROW_RESIDUAL_MAX = 1e-9
ROUNDTRIP_MAX = 1e-8

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_UNDETERMINED = 2
EXIT_USAGE = 64


class UsageError(ValueError):
    """Bad command-line input; maps to exit status 64."""


def parse_real(text: str) -> float:
    """A decimal literal or one of the named presets."""
    key = text.strip().lower()
    if key in PRESETS:
        return PRESETS[key]
    try:
        v = float(key)
    except ValueError:
        raise UsageError(f"not a number or preset ({', '.join(PRESETS)}): {text!r}") from None
    if not math.isfinite(v):
        raise UsageError(f"non-finite value {text!r}")
    return v


def _split_fields(text: str, n: int, what: str) -> list[str]:
    parts = [p for p in text.split(",")]
    if len(parts) != n or any(not p.strip() for p in parts):
        raise UsageError(f"{what} needs {n} comma-separated values, got {text!r}")
    return parts


@dataclass(frozen=True)
class RunConfig:
    space: Space = Space.SPHERE
    weights: WeightsPQ | WeightsST | None = None
    eps: float = 1e-9
    search_bound: int = 100
    seed: int = 0
    fmt: str = "csv"
    weights_text: str | None = field(default=None, compare=False)

    @classmethod
    def build(
        cls,
        space: str = "sphere",
        pq: str | None = None,
        st: str | None = None,
        eps: float = 1e-9,
        search_bound: int = 100,
        seed: int = 0,
        fmt: str = "csv",
    ) -> "RunConfig":
        try:
            sp = Space(space)
        except ValueError:
            raise UsageError(f"unknown space {space!r}") from None
        weights = None
        text = None
        if sp is Space.ORBI:
            if pq is None:
                raise UsageError("--space orbi needs --pq P,Q")
            p_txt, q_txt = _split_fields(pq, 2, "--pq")
            try:
                weights = WeightsPQ(int(p_txt), int(q_txt))
            except ValueError as exc:
                raise UsageError(f"--pq: {exc}") from None
            text = pq
        elif sp is Space.QUASI:
            if st is None:
                raise UsageError("--space quasi needs --st S,T")
            s_txt, t_txt = _split_fields(st, 2, "--st")
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", NearRationalWarning)
                try:
                    weights = WeightsST(parse_real(s_txt), parse_real(t_txt))
                except ValueError as exc:
                    raise UsageError(f"--st: {exc}") from None
            text = st
        try:
            tol = Tolerance(eps, search_bound)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        if fmt not in ("csv", "json"):
            raise UsageError(f"unknown format {fmt!r}")
        return cls(sp, weights, tol.eps, tol.search_bound, seed, fmt, text)

    @property
    def tolerance(self) -> Tolerance:
        return Tolerance(self.eps, self.search_bound)

    @property
    def near_rational(self) -> bool:
        return isinstance(self.weights, WeightsST) and self.weights.near_rational

    def to_dict(self) -> dict[str, Any]:
        d: dict[str, Any] = {"space": self.space.value}
        if isinstance(self.weights, WeightsPQ):
            d["p"], d["q"] = self.weights.p, self.weights.q
        elif isinstance(self.weights, WeightsST):
            d["s"], d["t"] = self.weights.s, self.weights.t
            d["st_input"] = self.weights_text
            d["near_rational"] = self.weights.near_rational
        d.update(eps=self.eps, search_bound=self.search_bound, seed=self.seed, format=self.fmt)
        return d


def _new_point(cfg: RunConfig, z: complex, w: complex):
    if cfg.space is Space.SPHERE:
        return SpherePoint3(z, w)
    if cfg.space is Space.ORBI:
        return EllipsoidPointPQ(z, w, cfg.weights)
    return EllipsoidPointST(z, w, cfg.weights)


def parse_point(text: str, cfg: RunConfig):
    """Parse a total-space point.

    Accepted forms: ``ZRE,ZIM,WRE,WIM`` (validated against the ellipsoid
    equation) or ``polar:MODZ,ARGZ,ARGW`` with arguments in turns and
    ``|w|`` solved from the equation. Each number may be a preset name.
    """
    text = text.strip()
    try:
        if text.startswith("polar:"):
            mz, az, aw = (parse_real(v) for v in _split_fields(text[6:], 3, "polar point"))
            return make_point(mz, az, aw, cfg.weights)
        zr, zi, wr, wi = (parse_real(v) for v in _split_fields(text, 4, "point"))
        return _new_point(cfg, complex(zr, zi), complex(wr, wi))
    except UsageError:
        raise
    except ValueError as exc:
        raise UsageError(f"point {text!r}: {exc}") from None


def parse_s2_point(text: str) -> S2Point:
    """``ZRE,ZIM,X`` within ``1e-9`` of the unit sphere, projected onto it."""
    zr, zi, x = (parse_real(v) for v in _split_fields(text, 3, "S^2 point"))
    z = complex(zr, zi)
    norm_sq = abs(z) ** 2 + x * x
    if abs(norm_sq - 1.0) > 1e-9:
        raise UsageError(f"({text}) is off S^2 by {abs(norm_sq - 1.0):.3g}")
    scale = 1.0 / math.sqrt(norm_sq)
    return S2Point(z * scale, x * scale)


@dataclass
class CommandResult:
    """Output of one command: tabular ``rows`` and/or a ``report`` document."""

    exit_code: int
    columns: list[str] = field(default_factory=list)
    rows: list[list[Any]] = field(default_factory=list)
    report: dict[str, Any] | None = None

    def document(self, cfg: RunConfig) -> dict[str, Any]:
        doc: dict[str, Any] = {"version": __version__, "config": cfg.to_dict()}
        if self.columns:
            doc["columns"] = self.columns
            doc["rows"] = [dict(zip(self.columns, r)) for r in self.rows]
        if self.report is not None:
            doc["report"] = self.report
        return doc


POINT_COLUMNS = ["z_re", "z_im", "w_re", "w_im", "arg_z", "arg_w", "residual"]


def _point_row(p) -> list[float]:
    return [
        p.z.real,
        p.z.imag,
        p.w.real,
        p.w.imag,
        float(arg_turn(p.z)),
        float(arg_turn(p.w)),
        constraint_residual(p),
    ]


def _start_point(cfg: RunConfig, start: str | None):
    if start is not None:
        return parse_point(start, cfg)
    return sample_uniform(cfg.weights, 1, cfg.seed)[0]


def cmd_sample_orbit(cfg: RunConfig, theta_max: float, n: int, start: str | None = None) -> CommandResult:
    """``n`` evenly spaced points of the orbit through ``start`` for ``0 <= theta <= theta_max``."""
    if n < 1:
        raise UsageError("--n must be >= 1")
    if not (theta_max > 0 and math.isfinite(theta_max)):
        raise UsageError("--theta-max must be positive")
    p0 = _start_point(cfg, start)
    rows = []
    for j in range(n):
        theta = theta_max * j / (n - 1) if n > 1 else 0.0
        p = act(theta, p0)
        rows.append([theta, *_point_row(p)])
    worst = max(r[-1] for r in rows)
    code = EXIT_OK if worst < ROW_RESIDUAL_MAX else EXIT_FAILED
    return CommandResult(code, ["theta", *POINT_COLUMNS], rows)


@dataclass(frozen=True)
class GapReport:
    x: float
    K: int
    points: tuple[float, ...]
    gaps: tuple[float, ...]
    distinct_gaps: tuple[float, ...]

    @property
    def max_gap(self) -> float:
        return max(self.gaps)

    @property
    def min_gap(self) -> float:
        return min(self.gaps)

    @property
    def total(self) -> float:
        return math.fsum(self.gaps)


def gap_report(x: float, K: int) -> GapReport:
    """Arc lengths between consecutive points of ``{frac(k*x) : k = 1..K}``.

    Points are sorted around the circle (including the wraparound arc);
    gap lengths closer than ``1e-9`` count as one distinct value.
    """
    if K < 2:
        raise UsageError("K must be >= 2")
    pts = sorted(float(frac_product(k, x)) for k in range(1, K + 1))
    gaps = [b - a for a, b in zip(pts, pts[1:])]
    gaps.append(1.0 - pts[-1] + pts[0])
    distinct: list[float] = []
    for g in sorted(gaps):
        if not distinct or g - distinct[-1] > GAP_CLUSTER:
            distinct.append(g)
    return GapReport(x, K, tuple(pts), tuple(gaps), tuple(distinct))


def cmd_gaps(cfg: RunConfig, K: int, x: float | None = None) -> CommandResult:
    """Gap statistics of ``frac(k*x)``; ``x`` defaults to ``s/t``."""
    if x is None:
        if not isinstance(cfg.weights, WeightsST):
            raise UsageError("gaps needs --x or quasisphere weights --st")
        x = cfg.weights.s / cfg.weights.t
    rep = gap_report(x, K)
    rows = [[i, p, g] for i, (p, g) in enumerate(zip(rep.points, rep.gaps))]
    report = {
        "x": rep.x,
        "K": rep.K,
        "distinct_gap_count": len(rep.distinct_gaps),
        "distinct_gaps": list(rep.distinct_gaps),
        "max_gap": rep.max_gap,
        "min_gap": rep.min_gap,
        "gap_sum": rep.total,
    }
    return CommandResult(EXIT_OK, ["index", "point", "gap"], rows, report)


def cmd_check_equal(cfg: RunConfig, point_a: str, point_b: str) -> CommandResult:
    a = parse_point(point_a, cfg)
    b = parse_point(point_b, cfg)
    verdict = orbit_equal(a, b, cfg.tolerance)
    report = {
        "outcome": verdict.outcome.value,
        "witness": verdict.witness,
        "eps": cfg.eps,
        "search_bound": cfg.search_bound,
        "space": cfg.space.value,
    }
    return CommandResult(verdict.exit_code, report=report)


def _random_disk(spec: ChartSpec, rng: np.random.Generator, overlap: bool):
    r = spec.domain_radius_sq
    while True:
        m2 = rng.uniform(0.0, r * (1 - 1e-6))
        arg = rng.random()
        if overlap and m2 < 1e-12:
            continue
        return spec.disk(math.sqrt(m2) * complex(math.cos(2 * math.pi * arg), math.sin(2 * math.pi * arg)))


def chart_roundtrip_report(cfg: RunConfig, n: int) -> dict[str, Any]:
    """Maximum class distances of chart and transition round trips over ``n`` samples each."""
    tol = cfg.tolerance
    rng = np.random.default_rng(cfg.seed)
    report: dict[str, Any] = {"n": n, "threshold": ROUNDTRIP_MAX}
    failures = 0
    for pole in (Pole.SOUTH, Pole.NORTH):
        spec = ChartSpec(cfg.space, pole, cfg.weights)
        disk_max = 0.0
        for _ in range(n):
            d = _random_disk(spec, rng, overlap=False)
            back = phi_inv(spec, phi(spec, d))
            disk_max = max(disk_max, disk_class_distance(d, back, tol))
        orbit_max = 0.0
        points = sample_uniform(cfg.weights, n, int(rng.integers(2**32)))
        for x in points:
            coord = x.w if pole is Pole.SOUTH else x.z
            if abs(coord) <= 1e-9:
                continue
            y = phi(spec, phi_inv(spec, x)).representative
            orbit_max = max(orbit_max, orbit_distance(x, y, tol))
        report[f"phi_{pole.value}_disk_max"] = disk_max
        report[f"phi_{pole.value}_orbit_max"] = orbit_max
        failures += (disk_max > ROUNDTRIP_MAX) + (orbit_max > ROUNDTRIP_MAX)
    south = ChartSpec(cfg.space, Pole.SOUTH, cfg.weights)
    comp_max = 0.0
    compat_max = 0.0
    not_equal = 0
    for _ in range(n):
        d = _random_disk(south, rng, overlap=True)
        e = transition_SN(south, d)
        back = transition_NS(south, e)
        if not disk_class_equal(d, back, tol).equal:
            not_equal += 1
        comp_max = max(comp_max, disk_class_distance(d, back, tol))
        lhs = phi_N(south.opposite, e).representative
        rhs = phi_S(south, d).representative
        compat_max = max(compat_max, orbit_distance(lhs, rhs, tol))
    report["transition_roundtrip_max"] = comp_max
    report["transition_chart_max"] = compat_max
    report["transition_not_equal"] = not_equal
    failures += (comp_max > ROUNDTRIP_MAX) + (compat_max > ROUNDTRIP_MAX) + (not_equal > 0)
    report["passed"] = failures == 0
    return report


def cmd_chart_roundtrip(cfg: RunConfig, n: int) -> CommandResult:
    if n < 1:
        raise UsageError("--n must be >= 1")
    report = chart_roundtrip_report(cfg, n)
    return CommandResult(EXIT_OK if report["passed"] else EXIT_FAILED, report=report)


def cmd_hopf_fiber(cfg: RunConfig, s2_point: str, n: int) -> CommandResult:
    """``n`` points on the circle over an ``S^2`` point, swept by the diagonal action."""
    if n < 1:
        raise UsageError("--n must be >= 1")
    y = parse_s2_point(s2_point)
    p0 = hopf_preimage(y)
    rows = []
    for j in range(n):
        theta = Turn(j / n)
        p = act(theta, p0)
        h = hopf(p)
        err = max(abs(h.z - y.z), abs(h.x - y.x))
        rows.append([float(theta), *_point_row(p), err])
    return CommandResult(EXIT_OK, ["theta", *POINT_COLUMNS, "hopf_error"], rows)


def cmd_witness(cfg: RunConfig, point_a: str, point_b: str, eps: float | None = None) -> CommandResult:
    """Flow parameter carrying ``a`` within ``eps`` of ``b`` on the quasisphere."""
    if cfg.space is not Space.QUASI:
        raise UsageError("witness needs --space quasi")
    eps = cfg.eps if eps is None else eps
    a = parse_point(point_a, cfg)
    b = parse_point(point_b, cfg)
    try:
        w = closure_witness(a, b, eps)
    except SearchExhausted as exc:
        report = {"found": False, "eps": eps, "bound": exc.bound, "achieved": exc.best, "message": str(exc)}
        return CommandResult(EXIT_FAILED, report=report)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    report = {
        "found": True,
        "eps": eps,
        "theta": w.theta,
        "achieved": w.achieved,
        "shift": w.shift,
        "bound": w.bound,
    }
    return CommandResult(EXIT_OK, report=report)
