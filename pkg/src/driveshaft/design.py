"""Analysis of a single driveline shaft design."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .buckling import BucklingResult, BucklingSearch, buckling_torque, hayashi_torque
from .constraints import (
    ConstraintReport,
    DrivelineConfig,
    ReserveFactors,
    driveline_mass,
    evaluate_constraints,
    fitness,
    nominal_torque,
    support_mass,
)
from .materials import HomogenizedShaftMaterial, LaminateStiffness, StackingSequence, build_abd, homogenize
from .rotordynamics import (
    CriticalSpeeds,
    StabilityResult,
    SupportProperties,
    critical_speeds,
    modal_parameters,
    rpm_to_rad,
    stability_threshold,
)
from .shaft import SectionProperties, ShaftGeometry, section_properties
from .strength import torque_capacity
from .torsional import TorsionalSystem, torsional_frequencies

__all__ = ["ShaftDesign", "ShaftAnalysis", "analyze_design", "Evaluation", "evaluate_design"]


@dataclass(frozen=True)
class ShaftDesign:
    """Design variables: lay-up, mean radius (m), operating speed (rev/min)
    and optionally the support stiffness (N/m) overriding the driveline one."""

    sequence: StackingSequence
    r_m: float
    Omega: float
    k_e: float | None = None


@dataclass(frozen=True)
class ShaftAnalysis:
    design: ShaftDesign
    geom: ShaftGeometry
    laminate: LaminateStiffness
    material: HomogenizedShaftMaterial
    section: SectionProperties
    support: SupportProperties
    critical: tuple[CriticalSpeeds, ...]
    stability: StabilityResult | None
    torsional: np.ndarray
    T_nom: float
    T_str: float
    buckling: BucklingResult
    hayashi: float
    m_b: float
    m_dv: float

    @property
    def Omega_rad(self) -> float:
        return rpm_to_rad(self.design.Omega)

    @property
    def T_buck(self) -> float:
        return self.buckling.T_min

    @property
    def first_critical(self) -> float:
        """Lowest forward critical speed (rad/s)."""
        return min(min(c.F_minus, c.F_plus) for c in self.critical)

    @property
    def m_s(self) -> float:
        return self.section.m_s


def analyze_design(
    design: ShaftDesign,
    cfg: DrivelineConfig,
    search: BucklingSearch | None = None,
    full: bool = False,
) -> ShaftAnalysis:
    """Run every analysis needed by the constraints on one shaft.

    Subcritical drivelines only need the first harmonic and no stability
    check; ``full=True`` computes ``cfg.n_flexural`` harmonics and the
    stability threshold regardless of the regime.
    """
    seq = design.sequence
    lam = build_abd(seq)
    mat = homogenize(seq, lam)
    geom = ShaftGeometry(design.r_m, cfg.shaft_length, seq.thickness)
    sec = section_properties(geom, mat)
    m_b = cfg.m_b if cfg.m_b is not None else support_mass(cfg.power, design.Omega, cfg.power_unit)
    k_e = cfg.k_e if design.k_e is None else design.k_e
    support = SupportProperties(m_b=m_b, k_e=k_e, eta_e=cfg.eta_e)
    super_ = full or cfg.regime == "supercritical"
    n_flex = cfg.n_flexural if super_ else 1
    params = [modal_parameters(geom, sec, mat, support, n) for n in range(1, n_flex + 1)]
    crit = tuple(critical_speeds(p) for p in params)
    stab = stability_threshold(params, mat.eta_i, cfg.eta_e) if super_ else None
    span = 1 if cfg.torsional_span == "shaft" else cfg.N_s
    tsys = TorsionalSystem(cfg.J_G, cfg.J_T, span * sec.m_s * design.r_m**2, span * geom.l, mat.G, mat.rho)
    tors = torsional_frequencies(tsys, cfg.n_torsional)
    T_str = min(
        torque_capacity(seq, geom, cfg.strength_criterion, cfg.strength_coupling, d, lam=lam).T_str for d in (1, -1)
    )
    buck = buckling_torque(lam, geom, search)
    return ShaftAnalysis(
        design=design,
        geom=geom,
        laminate=lam,
        material=mat,
        section=sec,
        support=support,
        critical=crit,
        stability=stab,
        torsional=tors,
        T_nom=nominal_torque(cfg.power, design.Omega),
        T_str=T_str,
        buckling=buck,
        hayashi=hayashi_torque(lam, design.r_m, geom.l),
        m_b=m_b,
        m_dv=driveline_mass(cfg, sec.m_s, m_b),
    )


@dataclass(frozen=True)
class Evaluation:
    """Fitness of one design, or the reason it could not be analysed."""

    fitness: float
    report: ConstraintReport | None
    analysis: ShaftAnalysis | None
    error: str | None = None

    @property
    def feasible(self) -> bool:
        return self.report is not None and self.report.feasible


# fitness given to designs the models reject outright (e.g. non-slender tubes)
FAILED_FITNESS = -10.0


def evaluate_design(
    design: ShaftDesign,
    cfg: DrivelineConfig,
    factors: ReserveFactors | None = None,
    search: BucklingSearch | None = None,
) -> Evaluation:
    factors = factors or ReserveFactors()
    try:
        an = analyze_design(design, cfg, search)
    except (ValueError, RuntimeError) as exc:
        return Evaluation(FAILED_FITNESS, None, None, str(exc))
    rep = evaluate_constraints(an, cfg, factors)
    f = fitness(an.m_s, rep)
    if not math.isfinite(f):
        return Evaluation(FAILED_FITNESS, rep, an, "non-finite fitness")
    return Evaluation(f, rep, an)
