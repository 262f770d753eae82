import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from driveshaft.fixtures import STRENGTH_TUBES
from driveshaft.materials import CATALOG, StackingSequence
from driveshaft.shaft import ShaftGeometry
from driveshaft.strength import ply_stresses_under_torsion, stepping_capacity, torque_capacity

BE = CATALOG["BE"]


def _tube(tb):
    seq = StackingSequence.from_angles(tb.angles, BE)
    return seq, ShaftGeometry.from_outer_radius(tb.r_outer, tb.length, seq.thickness)


@pytest.mark.parametrize("tb", STRENGTH_TUBES, ids=lambda t: t.name)
@pytest.mark.parametrize("crit, attr", [("max_stress", "max_stress_b0"), ("tsai_wu", "tsai_wu_b0")])
def test_failure_torque_table(tb, crit, attr):
    seq, g = _tube(tb)
    t = min(torque_capacity(seq, g, crit, "B_zero", d).T_str for d in (1, -1))
    assert t == pytest.approx(getattr(tb, attr), rel=0.03)


@settings(max_examples=40)
@given(
    st.lists(st.sampled_from([-45.0, 0.0, 30.0, 45.0, 90.0]), min_size=2, max_size=8),
    st.sampled_from(["max_stress", "tsai_wu"]),
    st.sampled_from(["B_zero", "B_asis"]),
    st.sampled_from([1, -1]),
)
def test_closed_form_matches_stepping(angles, crit, coupling, direction):
    seq = StackingSequence.from_angles(angles, BE)
    g = ShaftGeometry(0.03, 0.5, seq.thickness)
    exact = torque_capacity(seq, g, crit, coupling, direction).T_str
    stepped = stepping_capacity(seq, g, crit, coupling, direction, step=1e-3)
    # stepping overshoots by at most one 0.1 % step
    assert exact <= stepped * (1 + 1e-9)
    assert stepped <= exact * (1 + 1e-3) * (1 + 1e-9)


def test_stresses_are_linear_in_torque():
    seq, g = _tube(STRENGTH_TUBES[1])
    a = ply_stresses_under_torsion(seq, g, 100.0)
    b = ply_stresses_under_torsion(seq, g, 250.0)
    np.testing.assert_allclose(b.inner, 2.5 * a.inner, rtol=1e-12)


def test_zero_degree_plies_carry_pure_shear():
    seq = StackingSequence.from_angles([0] * 4, BE)
    g = ShaftGeometry(0.03, 0.5, seq.thickness)
    st_ = ply_stresses_under_torsion(seq, g, 100.0)
    tau = 100.0 / (2 * np.pi * 0.03**2 * seq.thickness)
    np.testing.assert_allclose(st_.inner[:, 2], tau, rtol=1e-10)
    np.testing.assert_allclose(st_.inner[:, :2], 0.0, atol=1e-6 * tau)


def test_capacity_scales_inversely_with_shear_flow():
    seq = StackingSequence.from_angles([0] * 4, BE)
    t1 = torque_capacity(seq, ShaftGeometry(0.03, 0.5, seq.thickness)).T_str
    t2 = torque_capacity(seq, ShaftGeometry(0.06, 0.5, seq.thickness)).T_str
    assert t2 == pytest.approx(4 * t1, rel=1e-10)


def test_bad_arguments():
    seq, g = _tube(STRENGTH_TUBES[0])
    with pytest.raises(ValueError):
        torque_capacity(seq, g, "von_mises")
    with pytest.raises(ValueError):
        torque_capacity(seq, g, direction=0)
    with pytest.raises(ValueError):
        torque_capacity(seq, g, coupling="B_maybe")
