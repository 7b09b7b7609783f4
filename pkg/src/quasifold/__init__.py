"""Sphere, orbisphere and quasisphere as executable quotient constructions."""

__version__ = "0.1.0"

from .angles import (
    ContinuedFraction,
    SearchExhausted,
    Tolerance,
    Turn,
    best_shift,
    circle_dist,
    continued_fraction,
    convergents,
    frac,
)
from .spaces import (
    EllipsoidPointPQ,
    EllipsoidPointST,
    NearRationalWarning,
    S2Point,
    Space,
    SpherePoint3,
    WeightsPQ,
    WeightsST,
    act_hopf,
    act_pq,
    act_st,
    constraint_residual,
    hopf,
    make_point_pq,
    make_point_sphere,
    make_point_st,
    sample_uniform,
)
from .quotients import (
    EquivalenceVerdict,
    OrbitRef,
    Outcome,
    canonical_pq,
    canonical_sphere,
    closure_witness,
    orbit_equal,
    orbit_equal_pq,
    orbit_equal_sphere,
    orbit_equal_st,
)
from .atlas import (
    ChartSpec,
    DiskClass,
    GroupKind,
    Pole,
    disk_class_equal,
    phi_N,
    phi_N_inv,
    phi_S,
    phi_S_inv,
    transition_NS,
    transition_SN,
)

__all__ = [
    "__version__",
    "ContinuedFraction",
    "SearchExhausted",
    "Tolerance",
    "Turn",
    "best_shift",
    "circle_dist",
    "continued_fraction",
    "convergents",
    "frac",
    "EllipsoidPointPQ",
    "EllipsoidPointST",
    "NearRationalWarning",
    "S2Point",
    "Space",
    "SpherePoint3",
    "WeightsPQ",
    "WeightsST",
    "act_hopf",
    "act_pq",
    "act_st",
    "constraint_residual",
    "hopf",
    "make_point_pq",
    "make_point_sphere",
    "make_point_st",
    "sample_uniform",
    "EquivalenceVerdict",
    "OrbitRef",
    "Outcome",
    "canonical_pq",
    "canonical_sphere",
    "closure_witness",
    "orbit_equal",
    "orbit_equal_pq",
    "orbit_equal_sphere",
    "orbit_equal_st",
    "ChartSpec",
    "DiskClass",
    "GroupKind",
    "Pole",
    "disk_class_equal",
    "phi_N",
    "phi_N_inv",
    "phi_S",
    "phi_S_inv",
    "transition_NS",
    "transition_SN",
]
