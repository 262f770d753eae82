import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from driveshaft.constraints import (
    ConstraintReport,
    DrivelineConfig,
    ReserveFactors,
    driveline_mass,
    evaluate_constraints,
    fitness,
    nominal_torque,
    support_mass,
)
from driveshaft.design import FAILED_FITNESS, ShaftDesign, analyze_design, evaluate_design
from driveshaft.fixtures import CONVENTIONAL, SUBCRITICAL_DESIGNS
from driveshaft.materials import CATALOG, StackingSequence

P = 447.4e3


@given(st.floats(500.0, 20000.0), st.floats(500.0, 20000.0))
def test_support_mass_power_law(w1, w2):
    ratio = support_mass(P, w1) / support_mass(P, w2)
    assert ratio == pytest.approx((w2 / w1) ** 0.69, rel=1e-12)


def test_support_mass_ratio_between_designs():
    assert support_mass(P, 4800) / support_mass(P, 3800) == pytest.approx(0.8511, abs=1e-4)
    assert support_mass(P, 2 * 4000) / support_mass(P, 4000) == pytest.approx(2**-0.69, rel=1e-12)


@pytest.mark.parametrize("d", [d for d in SUBCRITICAL_DESIGNS if d.name in ("BE", "HM", "HS_HM")], ids=lambda d: d.name)
def test_support_masses_within_two_percent(d):
    assert 2 * support_mass(P, d.Omega, "hp") == pytest.approx(d.supports_mass, rel=0.02)
    assert 2 * support_mass(P, d.Omega) == pytest.approx(d.supports_mass, rel=0.002)


def test_hp_convention_example():
    assert 2 * support_mass(P, 3800, "hp") == pytest.approx(9.59, abs=0.005)


def test_conventional_driveline_total():
    cfg = DrivelineConfig(N_s=5)
    total = driveline_mass(cfg, CONVENTIONAL.tubes_mass / 5, CONVENTIONAL.supports_mass / 4, composite=False)
    assert total == pytest.approx(28.80, abs=1e-12)


def test_composite_driveline_total():
    assert driveline_mass(DrivelineConfig(), 8.16 / 3, 7.71 / 2) == pytest.approx(20.37, abs=1e-12)
    one = DrivelineConfig(N_s=1)
    assert driveline_mass(one, 5.0, 123.0) == pytest.approx(5.0 + 1.5)


def test_nominal_torque():
    assert nominal_torque(P, 3800) == pytest.approx(1124, rel=1e-3)
    assert nominal_torque(P, 4800) == pytest.approx(890.1, rel=1e-3)


def test_fitness_examples():
    k = ReserveFactors()
    ok = ConstraintReport({"g1": 0.2, "g6": 0.1}, k)
    assert fitness(2.0, ok) == 0.5
    bad = ConstraintReport({"g4_1": -0.1, "g6": 0.1}, k)
    assert fitness(2.0, bad) == pytest.approx(0.5 - 0.4)
    assert not bad.feasible and bad.violations == {"g4_1": -0.1}


@given(st.floats(-5.0, 0.0), st.floats(-5.0, 0.0))
def test_fitness_monotone_in_violation(a, b):
    k = ReserveFactors()
    lo, hi = sorted((a, b))
    f_lo = fitness(3.0, ConstraintReport({"g1": lo}, k))
    f_hi = fitness(3.0, ConstraintReport({"g1": hi}, k))
    assert f_lo <= f_hi


def test_g6_is_strict():
    k = ReserveFactors()
    assert not ConstraintReport({"g6": 0.0}, k).feasible
    assert ConstraintReport({"g5_1": 0.0}, k).feasible


def test_penalty_weights():
    k = ReserveFactors()
    assert k.gamma("g1") == k.gamma("g2") == 2.0
    assert k.gamma("g3") == 6.0
    assert k.gamma("g7_1Fm") == 4.0


def test_optimized_be_strength_margin():
    # published strength and nominal torques of the optimized BE shaft
    assert 0.44 * 3149 / 1124 - 1 == pytest.approx(0.233, abs=1e-3)


def _be():
    d = next(d for d in SUBCRITICAL_DESIGNS if d.name == "BE")
    return ShaftDesign(StackingSequence.parse(d.sequence, CATALOG), d.r_m, d.Omega)


def test_published_subcritical_be_design():
    cfg = DrivelineConfig()
    an = analyze_design(_be(), cfg)
    # the published design sits at 0.81 of its first critical speed
    assert not evaluate_constraints(an, cfg).feasible
    rep = evaluate_constraints(an, cfg, ReserveFactors(K_f_sup=0.83))
    assert rep.feasible
    assert set(rep.values) == {"g1", "g2", "g3", "g4_1", "g5_2", "g6"}
    assert an.m_dv == pytest.approx(driveline_mass(cfg, an.m_s, an.m_b))
    assert an.first_critical > an.Omega_rad


def test_supercritical_report_keys():
    cfg = DrivelineConfig(N_s=2, regime="supercritical")
    d = _be()
    an = analyze_design(ShaftDesign(d.sequence, d.r_m, 5400, k_e=2.864e6), cfg)
    rep = evaluate_constraints(an, cfg)
    assert "g9" in rep.values and "g6" not in rep.values
    flex = [k for k in rep.values if k.startswith(("g7", "g8"))]
    assert len(flex) == 8


def test_failed_analysis_gets_floor_fitness(monkeypatch):
    import driveshaft.design as design_mod

    def boom(*a, **k):
        raise ValueError("negative radicand")

    monkeypatch.setattr(design_mod, "analyze_design", boom)
    ev = evaluate_design(_be(), DrivelineConfig())
    assert ev.fitness == FAILED_FITNESS and not ev.feasible
    assert ev.error == "negative radicand"


@pytest.mark.parametrize(
    "kw",
    [{"N_s": 0}, {"regime": "hyper"}, {"power_unit": "kW"}, {"k_e": -1.0}, {"m_b": 0.0}, {"torsional_span": "x"}],
)
def test_config_validation(kw):
    with pytest.raises(ValueError):
        DrivelineConfig(**kw)


@pytest.mark.parametrize("kw", [{"K_str": 1.2}, {"K_t_inf": 0.9}, {"gamma_3": 0.0}])
def test_reserve_factor_validation(kw):
    with pytest.raises(ValueError):
        ReserveFactors(**kw)


def test_shaft_length():
    assert DrivelineConfig().shaft_length == pytest.approx(2.47)
    assert DrivelineConfig(N_s=1).N_b == 0
    assert math.isinf(DrivelineConfig().k_e)
