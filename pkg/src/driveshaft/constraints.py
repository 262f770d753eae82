"""Driveline mass model, design constraints and the penalized fitness."""

from __future__ import annotations

import math
from dataclasses import dataclass, field, fields
from typing import TYPE_CHECKING, Literal

if TYPE_CHECKING:  # pragma: no cover
    from .design import ShaftAnalysis

__all__ = [
    "POWER_UNITS",
    "DrivelineConfig",
    "ReserveFactors",
    "ConstraintReport",
    "support_mass",
    "driveline_mass",
    "nominal_torque",
    "evaluate_constraints",
    "fitness",
]

# Watts per unit of the power fed to the empirical support-mass law
POWER_UNITS = {"metric_hp": 735.49875, "hp": 745.69987, "W": 1.0}

Regime = Literal["subcritical", "supercritical"]


@dataclass(frozen=True)
class DrivelineConfig:
    """Fixed data of a driveline; the design variables live in ``ShaftDesign``.

    ``k_e = inf`` models rigid supports. ``power_unit`` selects how the
    transmitted power enters ``support_mass``. ``torsional_span`` chooses
    whether the torsional model between the two end inertias is one shaft
    (``"shaft"``) or the whole line of ``N_s`` shafts (``"driveline"``).
    A given ``m_b`` replaces the empirical support mass (test rigs).
    """

    total_length: float = 7.41
    N_s: int = 3
    power: float = 447.4e3
    J_G: float = 0.94
    J_T: float = 3.76
    weight_penalty_per_shaft: float = 1.5
    regime: Regime = "subcritical"
    t_min: float = 1.0e-3
    k_e: float = math.inf
    eta_e: float = 0.1
    n_torsional: int = 2
    n_flexural: int = 4
    power_unit: str = "metric_hp"
    strength_criterion: str = "max_stress"
    strength_coupling: str = "B_zero"
    torsional_span: str = "shaft"
    m_b: float | None = None

    def __post_init__(self) -> None:
        if self.N_s < 1:
            raise ValueError("N_s must be >= 1")
        if self.regime not in ("subcritical", "supercritical"):
            raise ValueError(f"unknown regime {self.regime!r}")
        if self.power_unit not in POWER_UNITS:
            raise ValueError(f"power_unit must be one of {sorted(POWER_UNITS)}")
        for key in ("total_length", "power", "J_G", "J_T", "t_min", "k_e"):
            if not getattr(self, key) > 0:
                raise ValueError(f"{key} must be positive")
        if self.weight_penalty_per_shaft < 0 or self.eta_e < 0:
            raise ValueError("penalty and eta_e must be non-negative")
        if self.m_b is not None and not self.m_b > 0:
            raise ValueError("m_b must be positive when given")
        if self.torsional_span not in ("shaft", "driveline"):
            raise ValueError("torsional_span must be 'shaft' or 'driveline'")
        if self.n_torsional < 1 or self.n_flexural < 1:
            raise ValueError("mode counts must be >= 1")

    @property
    def N_b(self) -> int:
        return self.N_s - 1

    @property
    def shaft_length(self) -> float:
        return self.total_length / self.N_s


@dataclass(frozen=True)
class ReserveFactors:
    K_str: float = 0.44
    K_buck: float = 0.44
    K_t_sup: float = 0.83
    K_t_inf: float = 1.15
    K_f_sup: float = 0.8
    K_f_inf: float = 1.2
    K_th: float = 0.8
    gamma_12: float = 2.0
    gamma_3: float = 6.0
    gamma_other: float = 4.0

    def __post_init__(self) -> None:
        for key in ("K_str", "K_buck", "K_t_sup", "K_f_sup", "K_th"):
            v = getattr(self, key)
            if not 0 < v <= 1:
                raise ValueError(f"{key} must lie in (0, 1]")
        for key in ("K_t_inf", "K_f_inf"):
            if getattr(self, key) < 1:
                raise ValueError(f"{key} must be >= 1")
        for key in ("gamma_12", "gamma_3", "gamma_other"):
            if not getattr(self, key) > 0:
                raise ValueError(f"{key} must be positive")

    def gamma(self, name: str) -> float:
        """Penalty weight of constraint ``name`` (``g1``, ``g4_2``, ...)."""
        family = name.split("_")[0]
        if family in ("g1", "g2"):
            return self.gamma_12
        if family == "g3":
            return self.gamma_3
        return self.gamma_other

    @classmethod
    def field_names(cls) -> list[str]:
        return [f.name for f in fields(cls)]


def support_mass(power: float, Omega_rpm: float, unit: str = "metric_hp") -> float:
    """Mass of one intermediate support (kg), ``17.1288 (P/Omega)^0.69``.

    ``power`` is in W and converted with ``unit``; ``Omega_rpm`` in rev/min.
    """
    if not (power > 0 and Omega_rpm > 0):
        raise ValueError("power and speed must be positive")
    return 17.1288 * (power / POWER_UNITS[unit] / Omega_rpm) ** 0.69


def driveline_mass(cfg: DrivelineConfig, m_s: float, m_b: float, composite: bool = True) -> float:
    """Tubes plus intermediate supports plus the per-shaft joint penalty."""
    penalty = cfg.N_s * cfg.weight_penalty_per_shaft if composite else 0.0
    return cfg.N_s * m_s + cfg.N_b * m_b + penalty


def nominal_torque(power: float, Omega_rpm: float) -> float:
    return power / (Omega_rpm * math.pi / 30.0)


@dataclass(frozen=True)
class ConstraintReport:
    """Constraint values keyed ``g1``, ``g2``, ``g3``, ``g4_n``/``g5_n``, then
    ``g6`` or ``g7_*``/``g8_*`` and ``g9``. Only the binding side of each
    interval constraint is stored."""

    values: dict[str, float]
    factors: ReserveFactors = field(repr=False)

    @property
    def feasible(self) -> bool:
        for k, v in self.values.items():
            if k == "g6":
                if not v > 0:
                    return False
            elif not v >= 0:
                return False
        return True

    @property
    def violations(self) -> dict[str, float]:
        return {k: v for k, v in self.values.items() if v < 0 or (k == "g6" and v <= 0)}

    def penalty(self) -> float:
        return sum(self.factors.gamma(k) * min(0.0, v) for k, v in self.values.items())


def _interval(values: dict, below: str, above: str, n_label: str, w: float, Omega: float, K_inf: float,
              K_sup: float) -> None:
    # mode below the operating speed -> must stay under Omega / K_inf, otherwise above Omega / K_sup
    if w <= Omega:
        values[f"{below}_{n_label}"] = 1.0 - K_inf * w / Omega
    else:
        values[f"{above}_{n_label}"] = K_sup * w / Omega - 1.0


def evaluate_constraints(an: "ShaftAnalysis", cfg: DrivelineConfig, k: ReserveFactors | None = None) -> ConstraintReport:
    """All constraint values of one analysed shaft (speeds compared in rad/s)."""
    k = k or ReserveFactors()
    Omega = an.Omega_rad
    v: dict[str, float] = {
        "g1": k.K_str * an.T_str / an.T_nom - 1.0,
        "g2": k.K_buck * an.T_buck / an.T_nom - 1.0,
        "g3": an.geom.t_s / cfg.t_min - 1.0,
    }
    for n, w in enumerate(an.torsional, start=1):
        _interval(v, "g4", "g5", str(n), float(w), Omega, k.K_t_inf, k.K_t_sup)
    if cfg.regime == "subcritical":
        v["g6"] = k.K_f_sup * an.first_critical / Omega - 1.0
    else:
        for cs in an.critical:
            for tag, w in (("Fm", cs.F_minus), ("Fp", cs.F_plus)):
                if math.isfinite(w):
                    _interval(v, "g7", "g8", f"{cs.n}{tag}", w, Omega, k.K_f_inf, k.K_f_sup)
        th = an.stability.omega_th if an.stability is not None else None
        v["g9"] = math.inf if th is None else k.K_th * th / Omega - 1.0
    return ConstraintReport(v, k)


def fitness(m_s: float, report: ConstraintReport) -> float:
    """``1/m_s`` plus the weighted sum of violated constraint values."""
    if not m_s > 0:
        raise ValueError("m_s must be positive")
    return 1.0 / m_s + report.penalty()
