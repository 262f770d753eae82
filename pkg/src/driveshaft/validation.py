"""Reference-data checks behind ``driveshaft validate``."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable

from .buckling import BucklingSearch, buckling_torque, hayashi_torque
from .fixtures import ALUMINIUM_RIG, OFFAXIS_BE, PVC_RIG, STRENGTH_TUBES, UNSYM_CFRP, BucklingCase, RigShaft
from .materials import Ply, StackingSequence, build_abd, get_material, homogenize, isotropic_material
from .rotordynamics import (
    CriticalSpeeds,
    StabilityResult,
    SupportProperties,
    critical_speeds,
    modal_parameters,
    stability_threshold,
)
from .shaft import ShaftGeometry, section_properties
from .strength import torque_capacity

__all__ = [
    "FixtureResult",
    "ValidationReport",
    "SELECTORS",
    "run_validation",
    "strength_fixtures",
    "offaxis_fixtures",
    "unsym_fixtures",
    "rig_fixtures",
    "rig_response",
    "buckling_case_torque",
    "crosses_first_harmonic",
]

TOL_STRENGTH = 0.03
TOL_HAYASHI = 0.02
TOL_BUCKLING = 0.03
TOL_RIG = 0.01


@dataclass(frozen=True)
class FixtureResult:
    """One compared quantity. Boolean fixtures use 1.0/0.0 for expected and computed."""

    id: str
    expected: float
    computed: float
    tolerance: float
    source: str

    @property
    def rel_error(self) -> float:
        if self.expected == 0:
            return abs(self.computed)
        return abs(self.computed - self.expected) / abs(self.expected)

    @property
    def passed(self) -> bool:
        return bool(math.isfinite(self.computed) and self.rel_error <= self.tolerance)


@dataclass(frozen=True)
class ValidationReport:
    results: tuple[FixtureResult, ...]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def n_failed(self) -> int:
        return sum(not r.passed for r in self.results)


def strength_fixtures() -> list[FixtureResult]:
    be = get_material("BE")
    out = []
    for tb in STRENGTH_TUBES:
        seq = StackingSequence.from_angles(tb.angles, be)
        lam = build_abd(seq)
        g = ShaftGeometry.from_outer_radius(tb.r_outer, tb.length, seq.thickness)
        for crit, ref in (("tsai_wu", tb.tsai_wu_b0), ("max_stress", tb.max_stress_b0)):
            t = min(torque_capacity(seq, g, crit, "B_zero", d, lam=lam).T_str for d in (1, -1))
            out.append(FixtureResult(f"table2/{tb.name}/{crit}_B0", ref, t, TOL_STRENGTH, "strength tubes"))
        out.append(FixtureResult(f"table2/{tb.name}/hayashi", tb.hayashi, hayashi_torque(lam, g.r_m, g.l),
                                 TOL_HAYASHI, "strength tubes"))
    return out


def buckling_case_torque(case: BucklingCase, search: BucklingSearch | None = None) -> float:
    """Buckling torque under a positive applied torque."""
    seq = StackingSequence.from_angles(case.angles, case.material)
    g = ShaftGeometry(case.r_m, case.l, seq.thickness)
    return buckling_torque(build_abd(seq), g, search).T_buck_pos


def offaxis_fixtures(search: BucklingSearch | None = None) -> list[FixtureResult]:
    out = []
    for c in OFFAXIS_BE:
        seq = StackingSequence.from_angles(c.angles, c.material)
        lam = build_abd(seq)
        out.append(FixtureResult(f"table3/{c.name}/shell", c.T_buck, buckling_case_torque(c, search),
                                 TOL_BUCKLING, "off-axis tubes"))
        out.append(FixtureResult(f"table3/{c.name}/hayashi", c.hayashi, hayashi_torque(lam, c.r_m, c.l),
                                 TOL_HAYASHI, "off-axis tubes"))
    return out


def unsym_fixtures(search: BucklingSearch | None = None) -> list[FixtureResult]:
    return [
        FixtureResult(f"table4/{c.name}", c.T_buck, buckling_case_torque(c, search), TOL_BUCKLING, "unsymmetric laminates")
        for c in UNSYM_CFRP
    ]


def rig_response(rig: RigShaft, l: float, n_harmonics: int = 4) -> tuple[list[CriticalSpeeds], StabilityResult]:
    """Critical speeds and stability of an isotropic rig tube of length ``l``."""
    m = isotropic_material("rig", rig.E, rig.nu, rig.rho, rig.t, rig.eta_i)
    seq = StackingSequence((Ply(0.0, m),))
    mat = homogenize(seq)
    g = ShaftGeometry(rig.r_m, l, rig.t)
    sec = section_properties(g, mat)
    sup = SupportProperties(rig.m_b, rig.k_e, rig.eta_e)
    params = [modal_parameters(g, sec, mat, sup, n) for n in range(1, n_harmonics + 1)]
    return [critical_speeds(p) for p in params], stability_threshold(params, mat.eta_i, rig.eta_e)


def crosses_first_harmonic(crit: list[CriticalSpeeds], stab: StabilityResult) -> bool:
    """True when the shaft can run through both first-harmonic forward critical speeds."""
    top = max(crit[0].F_minus, crit[0].F_plus)
    return stab.omega_th is None or stab.omega_th > top


def rig_fixtures() -> list[FixtureResult]:
    out = []
    crit, _ = rig_response(ALUMINIUM_RIG, ALUMINIUM_RIG.lengths[0])
    out.append(FixtureResult("rig/aluminium/F_minus", ALUMINIUM_RIG.F_minus, crit[0].F_minus, TOL_RIG, "rig"))
    out.append(FixtureResult("rig/aluminium/F_plus", ALUMINIUM_RIG.F_plus, crit[0].F_plus, TOL_RIG, "rig"))
    for l in PVC_RIG.lengths:
        crit, stab = rig_response(PVC_RIG, l)
        want = 1.0 if l in PVC_RIG.stable_lengths else 0.0
        got = 1.0 if crosses_first_harmonic(crit, stab) else 0.0
        out.append(FixtureResult(f"rig/pvc/l={l:g}/stable", want, got, 0.0, "rig"))
    return out


SELECTORS: dict[str, Callable[[], list[FixtureResult]]] = {
    "table2": strength_fixtures,
    "table3": offaxis_fixtures,
    "table4": unsym_fixtures,
    "rig": rig_fixtures,
}


def run_validation(selectors: Iterable[str]) -> ValidationReport:
    names = list(selectors)
    if "all" in names:
        names = list(SELECTORS)
    for n in names:
        if n not in SELECTORS:
            raise KeyError(f"unknown fixture set {n!r}; choose from {sorted(SELECTORS)} or 'all'")
    rows: list[FixtureResult] = []
    for n in names:
        rows.extend(SELECTORS[n]())
    return ValidationReport(tuple(rows))
