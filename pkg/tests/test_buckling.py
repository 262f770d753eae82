import dataclasses
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from driveshaft import _buckling_kernels as kern
from driveshaft.buckling import (
    BucklingSearch,
    buckling_torque,
    dense_scan_torque,
    hayashi_torque,
    stiffness_derivative,
    stiffness_matrix,
)
from driveshaft.fixtures import OFFAXIS_BE, UNSYM_CFRP
from driveshaft.materials import CATALOG, PlyMaterial, StackingSequence, build_abd
from driveshaft.shaft import ShaftGeometry

BE = CATALOG["BE"]
ply_angles = st.lists(st.sampled_from([-60.0, -45.0, -15.0, 0.0, 15.0, 30.0, 45.0, 90.0]), min_size=2, max_size=8)


def _case(angles, mat=BE, r=0.05, l=2.0):
    seq = StackingSequence.from_angles(angles, mat)
    return build_abd(seq), ShaftGeometry(r, l, seq.thickness)


@given(ply_angles, st.integers(1, 6), st.floats(-20.0, 20.0), st.floats(-1e4, 1e4))
def test_k_is_affine_in_torque(angles, h, lam_, T):
    lam, g = _case(angles)
    K0 = stiffness_matrix(lam, g.r_m, h, lam_, 0.0)
    K1 = stiffness_matrix(lam, g.r_m, h, lam_, T)
    dK = stiffness_derivative(g.r_m, h, lam_)
    np.testing.assert_allclose(K1 - K0, T * dK, rtol=1e-9, atol=1e-9 * np.max(np.abs(K0)))


@given(ply_angles, st.integers(1, 6), st.floats(-20.0, 20.0))
def test_k_structure(angles, h, lam_):
    lam, g = _case(angles)
    K = stiffness_matrix(lam, g.r_m, h, lam_, 123.0)
    scale = np.max(np.abs(K))
    assert K[0, 2] == K[2, 0] and K[1, 2] == K[2, 1]
    # the only asymmetry is a twisting-curvature term in the (u, v) block
    D33 = lam.D[2, 2]
    assert K[1, 0] - K[0, 1] == pytest.approx(D33 * h * lam_ / 2 / g.r_m**2, abs=1e-9 * scale)


@given(ply_angles, st.integers(2, 4), st.floats(0.1, 20.0), st.floats(-5e3, 5e3))
def test_numba_and_numpy_determinants_agree(angles, h, lam_, T):
    lam, g = _case(angles)
    P = np.ascontiguousarray(lam.packed())
    a = kern.det_k(P, g.r_m, float(h), lam_, T)
    b = float(kern.det_k_np(P, g.r_m, float(h), np.array([lam_]), np.array([T]))[0])
    assert a == pytest.approx(b, rel=1e-9, abs=1e-12 * abs(a) + 1e-300)


@settings(max_examples=15)
@given(ply_angles)
def test_backends_find_same_roots(angles):
    lam, g = _case(angles)
    P = np.ascontiguousarray(lam.packed())
    lams = np.geomspace(0.05, 10.0, 64)
    tscale = hayashi_torque(lam, g.r_m)
    for sign in (1.0, -1.0):
        a = kern.root_scan(P, g.r_m, 2.0, lams, tscale, sign, backend="numba")
        b = kern.root_scan(P, g.r_m, 2.0, lams, tscale, sign, backend="numpy")
        np.testing.assert_allclose(a, b, rtol=1e-6)


def test_search_returns_a_root():
    lam, g = _case([90, 45, -45, 0, 0, 90])
    res = buckling_torque(lam, g)
    for mode in (res.mode_pos, res.mode_neg):
        K = stiffness_matrix(lam, g.r_m, mode.h, mode.lam, mode.T)
        s = np.linalg.svd(K, compute_uv=False)
        assert s[-1] <= 1e-6 * s[0]
        np.testing.assert_allclose(np.linalg.norm(K @ mode.U), 0.0, atol=1e-6 * s[0])
    assert res.T_buck_pos > 0 > res.T_buck_neg
    assert res.T_min == min(res.T_buck_pos, -res.T_buck_neg)


@settings(max_examples=10)
@given(ply_angles)
def test_mirrored_layup_swaps_directions(angles):
    lam, g = _case(angles)
    lam_m, _ = _case([-a for a in angles])
    a = buckling_torque(lam, g)
    b = buckling_torque(lam_m, g)
    assert a.T_buck_pos == pytest.approx(-b.T_buck_neg, rel=1e-3)
    assert a.T_buck_neg == pytest.approx(-b.T_buck_pos, rel=1e-3)


@pytest.mark.parametrize("angles", [[0, 90, 90, 0], [90, 0, 0, 90], [0] * 6, [90] * 6])
def test_specially_orthotropic_tube_is_direction_free(angles):
    lam, g = _case(angles)
    assert np.allclose(lam.B, 0.0, atol=1e-12 * np.max(np.abs(lam.A)))
    res = buckling_torque(lam, g)
    assert res.T_buck_pos == pytest.approx(-res.T_buck_neg, rel=1e-3)


@settings(max_examples=10)
@given(ply_angles, st.floats(0.2, 5.0))
def test_torque_scales_with_stiffness(angles, beta):
    m2 = dataclasses.replace(BE, E11=beta * BE.E11, E22=beta * BE.E22, E66=beta * BE.E66)
    lam, g = _case(angles)
    lam2, _ = _case(angles, m2)
    a = buckling_torque(lam, g)
    b = buckling_torque(lam2, g)
    assert b.T_buck_pos == pytest.approx(beta * a.T_buck_pos, rel=2e-3)
    assert hayashi_torque(lam2, g.r_m) == pytest.approx(beta * hayashi_torque(lam, g.r_m), rel=1e-10)


@given(ply_angles, st.floats(0.1, 10.0))
def test_hayashi_d22_scaling(angles, c):
    lam, g = _case(angles)
    D = lam.D.copy()
    D[1, 1] *= c
    lam2 = dataclasses.replace(lam, D=D)
    assert hayashi_torque(lam2, g.r_m) == pytest.approx(c**0.75 * hayashi_torque(lam, g.r_m), rel=1e-10)


def test_hayashi_length_dependence():
    lam, g = _case([0, 90, 90, 0])
    long_form = hayashi_torque(lam, g.r_m)
    assert hayashi_torque(lam, g.r_m, 1e6) == long_form
    assert hayashi_torque(lam, g.r_m, 1e-3) > long_form


@pytest.mark.parametrize("case", [OFFAXIS_BE[1], UNSYM_CFRP[4]], ids=lambda c: c.name)
def test_search_agrees_with_dense_scan(case):
    seq = StackingSequence.from_angles(case.angles, case.material)
    lam = build_abd(seq)
    g = ShaftGeometry(case.r_m, case.l, seq.thickness)
    res = buckling_torque(lam, g)
    pos, neg = dense_scan_torque(lam, g)
    assert res.T_buck_pos == pytest.approx(pos, rel=5e-3)
    assert res.T_buck_neg == pytest.approx(neg, rel=5e-3)


def test_search_settings_validated():
    lam, g = _case([0, 90])
    res = buckling_torque(lam, g, BucklingSearch(h_range=(2, 3), n_grid=48))
    assert math.isfinite(res.T_buck_pos)
    with pytest.raises(ValueError):
        stiffness_matrix(lam, 0.0, 2, 1.0, 0.0)


def test_stiffness_only_material_is_enough():
    m = PlyMaterial("soft", 50e9, 5e9, 3e9, 0.3)
    lam, g = _case([45, -45, -45, 45], m)
    assert buckling_torque(lam, g).T_min > 0
