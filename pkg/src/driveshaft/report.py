"""Flat analysis records and their CSV, JSON and text renderings.

Record keys appear in a fixed order (see ``record_keys``). Speeds are given
both in rad/s and rev/min; torques in N m; masses in kg.
"""

from __future__ import annotations

import csv
import json
import math
from typing import Any, Callable, Mapping, Sequence

from .buckling import BucklingSearch, buckling_torque, hayashi_torque
from .constraints import (
    DrivelineConfig,
    ReserveFactors,
    driveline_mass,
    evaluate_constraints,
    fitness,
    nominal_torque,
    support_mass,
)
from .design import ShaftAnalysis, ShaftDesign, analyze_design
from .materials import build_abd, homogenize
from .rotordynamics import (
    SupportProperties,
    critical_speeds,
    modal_parameters,
    rad_to_rpm,
    stability_threshold,
    uncoupled_speeds,
)
from .shaft import ShaftGeometry, section_properties
from .strength import torque_capacity
from .torsional import TorsionalSystem, torsional_frequencies

__all__ = ["analysis_record", "record_keys", "write_csv", "write_json", "format_table", "fmt_value"]

CRITERIA = ("tsai_wu", "max_stress")
COUPLINGS = ("B_asis", "B_zero")
_CRIT_TAGS = ("F_minus", "F_plus", "B_minus", "B_plus")


def record_keys(n_flexural: int, n_torsional: int) -> list[str]:
    keys = ["sequence", "notation", "n_plies", "t_s", "r_m", "l", "Omega_rpm", "k_e", "m_b",
            "E", "G", "nu", "kappa", "rho", "eta_i", "S", "I_y", "I_x", "J_s", "m_s", "m_dv"]
    for n in range(1, n_flexural + 1):
        for tag in _CRIT_TAGS:
            keys += [f"crit_{n}_{tag}_rad_s", f"crit_{n}_{tag}_rpm"]
        for tag in ("minus", "plus"):
            keys += [f"whirl0_{n}_{tag}_rad_s", f"whirl0_{n}_{tag}_rpm"]
    keys += ["omega_th_rad_s", "omega_th_rpm"]
    for n in range(1, n_torsional + 1):
        keys += [f"torsion_{n}_rad_s", f"torsion_{n}_rpm"]
    keys.append("T_nom")
    for c in CRITERIA:
        for cp in COUPLINGS:
            keys.append(f"T_str_{c}_{cp}")
    keys += ["T_buck_pos", "T_buck_neg", "T_hayashi", "feasible", "fitness", "violations", "errors"]
    return keys


def _guard(errors: list[str], label: str, fn: Callable[[], Any]):
    try:
        return fn()
    except (ValueError, RuntimeError, ZeroDivisionError, OverflowError) as exc:
        errors.append(f"{label}: {exc}")
        return None


def analysis_record(
    design: ShaftDesign,
    cfg: DrivelineConfig,
    factors: ReserveFactors | None = None,
    search: BucklingSearch | None = None,
) -> dict[str, Any]:
    """Every analysis of one shaft, each step guarded so one failure does not hide the others.

    Failed steps leave their keys as ``None`` and add a message to ``errors``.
    """
    factors = factors or ReserveFactors()
    rec: dict[str, Any] = dict.fromkeys(record_keys(cfg.n_flexural, cfg.n_torsional))
    errors: list[str] = []
    seq = design.sequence
    lam = build_abd(seq)
    mat = homogenize(seq, lam)
    geom = ShaftGeometry(design.r_m, cfg.shaft_length, seq.thickness)
    sec = section_properties(geom, mat)
    m_b = cfg.m_b if cfg.m_b is not None else support_mass(cfg.power, design.Omega, cfg.power_unit)
    k_e = cfg.k_e if design.k_e is None else design.k_e
    rec.update(
        sequence=seq.to_config(), notation=seq.notation(), n_plies=len(seq), t_s=geom.t_s, r_m=geom.r_m,
        l=geom.l, Omega_rpm=design.Omega, k_e=k_e, m_b=m_b, E=mat.E, G=mat.G, nu=mat.nu, kappa=mat.kappa,
        rho=mat.rho, eta_i=mat.eta_i, S=sec.S, I_y=sec.I_y, I_x=sec.I_x, J_s=sec.J_s, m_s=sec.m_s,
        m_dv=driveline_mass(cfg, sec.m_s, m_b),
    )

    support = SupportProperties(m_b=m_b, k_e=k_e, eta_e=cfg.eta_e)
    params = []
    for n in range(1, cfg.n_flexural + 1):
        p = _guard(errors, f"flexural harmonic {n}", lambda n=n: modal_parameters(geom, sec, mat, support, n))
        if p is None:
            continue
        params.append(p)
        cs = critical_speeds(p)
        for tag, w in zip(_CRIT_TAGS, cs.as_tuple()):
            rec[f"crit_{n}_{tag}_rad_s"] = w
            rec[f"crit_{n}_{tag}_rpm"] = rad_to_rpm(w)
        # same branches without the gyroscopic coupling
        for tag, w in zip(("minus", "plus"), uncoupled_speeds(p)):
            rec[f"whirl0_{n}_{tag}_rad_s"] = w
            rec[f"whirl0_{n}_{tag}_rpm"] = rad_to_rpm(w)
    if params:
        stab = _guard(errors, "stability", lambda: stability_threshold(params, mat.eta_i, cfg.eta_e))
        if stab is not None:
            if stab.omega_th is None:
                rec["omega_th_rad_s"] = rec["omega_th_rpm"] = "stable"
            else:
                rec["omega_th_rad_s"] = stab.omega_th
                rec["omega_th_rpm"] = rad_to_rpm(stab.omega_th)

    span = 1 if cfg.torsional_span == "shaft" else cfg.N_s
    tors = _guard(errors, "torsional modes", lambda: torsional_frequencies(
        TorsionalSystem(cfg.J_G, cfg.J_T, span * sec.J_s, span * geom.l, mat.G, mat.rho), cfg.n_torsional))
    if tors is not None:
        for n, w in enumerate(tors, start=1):
            rec[f"torsion_{n}_rad_s"] = float(w)
            rec[f"torsion_{n}_rpm"] = rad_to_rpm(float(w))

    rec["T_nom"] = nominal_torque(cfg.power, design.Omega)
    for c in CRITERIA:
        for cp in COUPLINGS:
            rec[f"T_str_{c}_{cp}"] = _guard(errors, f"strength {c}/{cp}", lambda c=c, cp=cp: min(
                torque_capacity(seq, geom, c, cp, d, lam=lam).T_str for d in (1, -1)))
    buck = _guard(errors, "shell buckling", lambda: buckling_torque(lam, geom, search))
    if buck is not None:
        rec["T_buck_pos"], rec["T_buck_neg"] = buck.T_buck_pos, buck.T_buck_neg
    rec["T_hayashi"] = hayashi_torque(lam, geom.r_m, geom.l)

    an: ShaftAnalysis | None = None
    if not errors:
        an = _guard(errors, "constraints", lambda: analyze_design(design, cfg, search))
    if an is not None:
        rep = evaluate_constraints(an, cfg, factors)
        rec["feasible"] = rep.feasible
        rec["fitness"] = fitness(an.m_s, rep)
        rec["violations"] = ";".join(f"{k}={fmt_value(v)}" for k, v in rep.violations.items())
    rec["errors"] = "; ".join(errors)
    return rec


def fmt_value(v: Any) -> str:
    """Text form used in every output: floats with 9 significant digits, ``None`` empty."""
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        if math.isnan(v):
            return "nan"
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return format(v, ".9g")
    return str(v)


def _json_value(v: Any) -> Any:
    if isinstance(v, float):
        if not math.isfinite(v):
            return fmt_value(v)
        return float(format(v, ".9g"))
    return v


def write_csv(path, records: Sequence[Mapping[str, Any]]) -> None:
    if not records:
        return
    keys = list(records[0])
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(keys)
        for r in records:
            w.writerow([fmt_value(r.get(k)) for k in keys])


def write_json(path, obj: Any) -> None:
    def conv(o):
        if isinstance(o, Mapping):
            return {k: conv(v) for k, v in o.items()}
        if isinstance(o, (list, tuple)):
            return [conv(v) for v in o]
        return _json_value(o)

    with open(path, "w") as fh:
        json.dump(conv(obj), fh, indent=2)
        fh.write("\n")


def format_table(rec: Mapping[str, Any]) -> str:
    width = max(len(k) for k in rec)
    return "\n".join(f"{k:<{width}}  {fmt_value(v)}" for k, v in rec.items())
