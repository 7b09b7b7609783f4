import math

import pytest

from conftest import unit_weights_st
from quasifold.angles import Tolerance, Turn
from quasifold.atlas import (
    ChartSpec,
    DiskClass,
    GroupKind,
    Pole,
    disk_class_distance,
    disk_class_equal,
    phi_N,
    phi_N_inv,
    phi_S,
    phi_S_inv,
    transition_NS,
    transition_SN,
)
from quasifold.quotients import Outcome, orbit_equal
from quasifold.spaces import (
    EllipsoidPointPQ,
    EllipsoidPointST,
    Space,
    SpherePoint3,
    act_st,
    constraint_residual,
    make_point_st,
    sample_uniform,
)

GOLDEN = (1 + math.sqrt(5)) / 2


def e(turns: float) -> complex:
    return complex(math.cos(2 * math.pi * turns), math.sin(2 * math.pi * turns))


def test_chart_spec_invariants(pq23, golden_st):
    s = ChartSpec(Space.SPHERE, Pole.SOUTH)
    assert (s.domain_radius_sq, float(s.generator), s.group_kind) == (1.0, 0.0, GroupKind.TRIVIAL)
    o_s, o_n = ChartSpec(Space.ORBI, Pole.SOUTH, pq23), ChartSpec(Space.ORBI, Pole.NORTH, pq23)
    assert (o_s.domain_radius_sq, o_s.generator, o_s.order) == (3.0, Turn(1 / 3), 3)
    assert (o_n.domain_radius_sq, o_n.generator, o_n.order) == (2.0, Turn(1 / 2), 2)
    q_s, q_n = ChartSpec(Space.QUASI, Pole.SOUTH, golden_st), ChartSpec(Space.QUASI, Pole.NORTH, golden_st)
    assert q_s.domain_radius_sq == GOLDEN and q_s.generator == Turn(1 / GOLDEN)
    assert q_n.domain_radius_sq == 1.0 and q_n.generator == Turn(GOLDEN)
    assert q_s.group_kind is GroupKind.DENSE
    with pytest.raises(TypeError):
        ChartSpec(Space.ORBI, Pole.SOUTH, golden_st)


def test_disk_class_domain_checks():
    with pytest.raises(ValueError):
        DiskClass(1.0, 1.0, Turn(0), GroupKind.TRIVIAL)
    with pytest.raises(ValueError):
        DiskClass(0.1, 1.0, Turn(0.2), GroupKind.TRIVIAL)
    with pytest.raises(ValueError):
        DiskClass(0.1, 3.0, Turn(0.2), GroupKind.CYCLIC, 3)
    d = DiskClass(math.sqrt(1 - 5e-10), 1.0, Turn(0), GroupKind.TRIVIAL)
    assert d.near_boundary
    assert not DiskClass(0.5, 1.0, Turn(0), GroupKind.TRIVIAL).near_boundary


def test_phi_S_centre_is_south_point(golden_st, pq23):
    quasi = ChartSpec(Space.QUASI, Pole.SOUTH, golden_st)
    x = phi_S(quasi, quasi.disk(0)).representative
    assert x == EllipsoidPointST(0, 1.0, golden_st)
    sphere = ChartSpec(Space.SPHERE, Pole.SOUTH)
    assert phi_S(sphere, sphere.disk(0)).representative == SpherePoint3(0, 1)
    orbi = ChartSpec(Space.ORBI, Pole.SOUTH, pq23)
    y = phi_S(orbi, orbi.disk(1.0)).representative
    assert y.z == 1 and y.w == pytest.approx(math.sqrt(4 / 3), abs=1e-15)
    assert abs(2 * abs(y.z) ** 2 + 3 * abs(y.w) ** 2 - 6) < 1e-12


def test_phi_N_centre_is_north_point(golden_st, pq23):
    quasi = ChartSpec(Space.QUASI, Pole.NORTH, golden_st)
    assert phi_N(quasi, quasi.disk(0)).representative == EllipsoidPointST(math.sqrt(GOLDEN), 0, golden_st)
    orbi = ChartSpec(Space.ORBI, Pole.NORTH, pq23)
    assert phi_N(orbi, orbi.disk(0)).representative == EllipsoidPointPQ(math.sqrt(3), 0, pq23)


def test_phi_S_output_satisfies_constraint(golden_st, rng):
    spec = ChartSpec(Space.QUASI, Pole.SOUTH, golden_st)
    for r2, a in rng.random((200, 2)):
        x = phi_S(spec, spec.disk(math.sqrt(r2 * GOLDEN) * e(a))).representative
        assert constraint_residual(x) < 1e-12


def test_phi_S_rejects_wrong_domain(golden_st, pq23):
    spec = ChartSpec(Space.QUASI, Pole.SOUTH, golden_st)
    other = ChartSpec(Space.ORBI, Pole.SOUTH, pq23)
    with pytest.raises(ValueError):
        phi_S(spec, other.disk(0.1))
    with pytest.raises(ValueError):
        phi_S(spec.opposite, spec.disk(0.1))


def test_phi_S_inv_examples(sqrt2_st):
    sphere = ChartSpec(Space.SPHERE, Pole.SOUTH)
    d = phi_S_inv(sphere, SpherePoint3(0.6j, 0.8))
    assert d.rep == 0.6j
    spec = ChartSpec(Space.QUASI, Pole.SOUTH, sqrt2_st)
    x = make_point_st(1.0, 0.1, 0.25, sqrt2_st)
    # flow back by theta = -0.25/t and read off z
    expected = act_st(-0.25 / math.sqrt(2), x).z
    got = phi_S_inv(spec, x)
    assert abs(got.rep - expected) < 1e-15
    assert abs(got.rep - e(0.1 - 0.25 / math.sqrt(2))) < 1e-12


def test_inverse_charts_reject_points_outside(golden_st):
    south = ChartSpec(Space.QUASI, Pole.SOUTH, golden_st)
    with pytest.raises(ValueError):
        phi_S_inv(south, make_point_st(math.sqrt(GOLDEN), 0.2, 0.0, golden_st))
    with pytest.raises(ValueError):
        phi_N_inv(south.opposite, make_point_st(0.0, 0.0, 0.3, golden_st))


@pytest.mark.parametrize("space", ["sphere", "orbi", "quasi"])
@pytest.mark.parametrize("pole", [Pole.SOUTH, Pole.NORTH])
def test_chart_round_trips(space, pole, pq23, golden_st, rng):
    weights = {"sphere": None, "orbi": pq23, "quasi": golden_st}[space]
    spec = ChartSpec(Space(space), pole, weights)
    fwd, inv = (phi_S, phi_S_inv) if pole is Pole.SOUTH else (phi_N, phi_N_inv)
    for r2, a in rng.random((300, 2)):
        d = spec.disk(math.sqrt(r2 * 0.999 * spec.domain_radius_sq) * e(a))
        back = inv(spec, fwd(spec, d))
        assert disk_class_equal(d, back).equal
    for x in sample_uniform(weights, 300, 9):
        y = fwd(spec, inv(spec, x)).representative
        assert orbit_equal(x, y).equal


def test_transition_sphere_real_input():
    south = ChartSpec(Space.SPHERE, Pole.SOUTH)
    for x in (0.1, 0.5, 0.9):
        d = south.disk(x)
        got = transition_SN(south, d)
        # oracle: compose the north inverse chart with the south chart
        oracle = phi_N_inv(south.opposite, phi_S(south, d))
        assert abs(got.rep - math.sqrt(1 - x * x)) < 1e-15
        assert abs(got.rep - oracle.rep) < 1e-15


def test_transition_modulus_is_branch_free(sqrt2_st):
    south = ChartSpec(Space.QUASI, Pole.SOUTH, sqrt2_st)
    got = transition_SN(south, south.disk(0.9 * e(0.2)))
    assert abs(got.rep) == pytest.approx(math.sqrt(1 - 0.81 / math.sqrt(2)), abs=1e-15)


def test_transition_well_defined_on_classes(golden_st, rng):
    south = ChartSpec(Space.QUASI, Pole.SOUTH, golden_st)
    for r2, a in rng.random((30, 2)):
        d = south.disk(math.sqrt(0.05 + 0.9 * r2 * GOLDEN) * e(a))
        base = transition_SN(south, d)
        for k in range(-20, 21):
            assert disk_class_equal(base, transition_SN(south, d.rotated(k))).outcome is Outcome.EQUAL


@pytest.mark.parametrize("space", ["sphere", "orbi", "quasi"])
def test_transition_round_trip_and_chart_compatibility(space, pq23, golden_st, rng):
    weights = {"sphere": None, "orbi": pq23, "quasi": golden_st}[space]
    south = ChartSpec(Space(space), Pole.SOUTH, weights)
    for r2, a in rng.random((300, 2)):
        d = south.disk(math.sqrt(1e-6 + 0.998 * r2 * south.domain_radius_sq) * e(a))
        there = transition_SN(south, d)
        back = transition_NS(south, there)
        assert disk_class_distance(d, back) < 1e-9
        assert abs(abs(back.rep) - abs(d.rep)) < 1e-12
        assert orbit_equal(phi_N(south.opposite, there).representative, phi_S(south, d).representative).equal


def test_sphere_transition_involution():
    south = ChartSpec(Space.SPHERE, Pole.SOUTH)
    for k in range(20):
        z = 0.04 * (k + 1) * e(0.37 * k)
        once = transition_SN(south, south.disk(z)).rep
        # algebraic oracle: (conj z/|z|) sqrt(1 - |z|^2)
        assert abs(once - z.conjugate() / abs(z) * math.sqrt(1 - abs(z) ** 2)) < 1e-14
        twice = transition_NS(south, south.opposite.disk(once)).rep
        assert abs(twice - z) < 1e-14


def test_transitions_reject_origin(golden_st):
    south = ChartSpec(Space.QUASI, Pole.SOUTH, golden_st)
    with pytest.raises(ValueError):
        transition_SN(south, south.disk(0))
    with pytest.raises(ValueError):
        transition_NS(south, south.opposite.disk(0))


def test_unit_weights_specialize_to_sphere(rng):
    quasi = ChartSpec(Space.QUASI, Pole.SOUTH, unit_weights_st())
    sphere = ChartSpec(Space.SPHERE, Pole.SOUTH)
    for r2, a in rng.random((100, 2)):
        z = math.sqrt(0.01 + 0.98 * r2) * e(a)
        assert abs(phi_S(quasi, quasi.disk(z)).representative.w - phi_S(sphere, sphere.disk(z)).representative.w) < 1e-12
        assert abs(transition_SN(quasi, quasi.disk(z)).rep - transition_SN(sphere, sphere.disk(z)).rep) < 1e-12


def test_disk_class_equal_examples():
    cyc = DiskClass(0.5 * e(0.1), 3.0, Turn(1 / 3), GroupKind.CYCLIC, 3)
    other = DiskClass(cyc.rep * e(1 / 3), 3.0, Turn(1 / 3), GroupKind.CYCLIC, 3)
    v = disk_class_equal(cyc, other)
    assert v.outcome is Outcome.EQUAL and v.witness == 1
    a = DiskClass(0.5, 1.0, Turn(0), GroupKind.TRIVIAL)
    b = DiskClass(0.5j, 1.0, Turn(0), GroupKind.TRIVIAL)
    assert disk_class_equal(a, b).outcome is Outcome.NOT_EQUAL
    gamma = Turn(1 / math.sqrt(2))
    d1 = DiskClass(0.3 * e(0.05), 2.0, gamma, GroupKind.DENSE)
    d2 = DiskClass(d1.rep * e(5 * gamma), 2.0, gamma, GroupKind.DENSE)
    v = disk_class_equal(d1, d2, Tolerance(1e-9, 5))
    assert v.outcome is Outcome.EQUAL and v.witness == 5
    far = DiskClass(0.3 * e(0.5), 2.0, gamma, GroupKind.DENSE)
    assert disk_class_equal(d1, far, Tolerance(1e-9, 5)).outcome is Outcome.UNDETERMINED
    with pytest.raises(ValueError):
        disk_class_equal(a, cyc)
