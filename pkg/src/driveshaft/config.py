"""Scenario files: INI sections mapped onto the domain dataclasses.

Example::

    [materials]
    AL = isotropic, E=69e9, nu=0.33, rho=2700, t=1.65e-3

    [shaft]
    sequence = 90:BE*2, 0:BE*4, -45:BE, 45:BE, 90:BE
    r_m = 0.056
    omega_nom = 3800

    [driveline]
    n_shafts = 3

Units are SI except speeds (rev/min) and angles (degrees). Unknown sections
or keys are errors.
"""

from __future__ import annotations

import configparser
import dataclasses
import io
import math
from dataclasses import dataclass, field
from typing import Any

from .constraints import DrivelineConfig, ReserveFactors
from .design import ShaftDesign
from .ga import EncodingSpec, GaParams
from .materials import CATALOG, PlyMaterial, StackingSequence, get_material, isotropic_material

__all__ = ["ConfigError", "ScenarioConfig", "ShaftSection", "load_config", "parse_config", "dump_config"]


class ConfigError(ValueError):
    """Invalid scenario file."""


@dataclass(frozen=True)
class ShaftSection:
    sequence: str
    r_m: float
    omega_nom: float
    k_e: float | None = None


@dataclass(frozen=True)
class ScenarioConfig:
    materials: dict[str, PlyMaterial] = field(default_factory=dict)
    shaft: ShaftSection | None = None
    driveline: DrivelineConfig = field(default_factory=DrivelineConfig)
    encoding: EncodingSpec | None = None
    ga: GaParams | None = None
    factors: ReserveFactors = field(default_factory=ReserveFactors)
    # raw material definitions, kept so that dump/parse round-trips textually
    material_text: dict[str, str] = field(default_factory=dict, repr=False, compare=False)

    @property
    def catalog(self) -> dict[str, PlyMaterial]:
        cat = dict(CATALOG)
        cat.update(self.materials)
        return cat

    def design(self) -> ShaftDesign:
        if self.shaft is None:
            raise ConfigError("[shaft] section is required for this command")
        try:
            seq = StackingSequence.parse(self.shaft.sequence, self.catalog)
        except (ValueError, KeyError) as exc:
            raise ConfigError(f"[shaft] sequence: {exc}") from exc
        return ShaftDesign(seq, self.shaft.r_m, self.shaft.omega_nom, self.shaft.k_e)


# key -> (attribute, converter) per section
def _float(s: str) -> float:
    v = float(s)
    if math.isnan(v):
        raise ValueError("nan is not allowed")
    return v


_DRIVELINE = {
    "total_length": ("total_length", _float),
    "n_shafts": ("N_s", int),
    "power": ("power", _float),
    "j_g": ("J_G", _float),
    "j_t": ("J_T", _float),
    "weight_penalty": ("weight_penalty_per_shaft", _float),
    "regime": ("regime", str),
    "t_min": ("t_min", _float),
    "n_torsional": ("n_torsional", int),
    "n_flexural": ("n_flexural", int),
    "power_unit": ("power_unit", str),
    "strength_criterion": ("strength_criterion", str),
    "strength_coupling": ("strength_coupling", str),
    "torsional_span": ("torsional_span", str),
}
_SUPPORTS = {
    "k_e": ("k_e", _float),
    "eta_e": ("eta_e", _float),
    "m_b": ("m_b", _float),
}
_SHAFT = {
    "sequence": ("sequence", str),
    "r_m": ("r_m", _float),
    "omega_nom": ("omega_nom", _float),
    "k_e": ("k_e", _float),
}
_ENCODING = {
    "q": ("q", int),
    "bit_alpha": ("bit_alpha", int),
    "bit_n": ("bit_n", int),
    "bit_mat": ("bit_mat", int),
    "bit_ke": ("bit_ke", int),
    "bit_rm": ("bit_rm", int),
    "bit_omega": ("bit_omega", int),
    "rm_min": ("rm_min", _float),
    "rm_max": ("rm_max", _float),
    "omega_min": ("omega_min", _float),
    "omega_max": ("omega_max", _float),
    "ke_min": ("ke_min", _float),
    "ke_max": ("ke_max", _float),
    "materials": ("materials", str),
}
_GA = {
    "population_size": ("population_size", int),
    "crossover_prob": ("crossover_prob", _float),
    "mutation_prob": ("mutation_prob", _float),
    "mutation_mode": ("mutation_mode", str),
    "crossover_points": ("crossover_points", int),
    "elites": ("elites", int),
    "max_generations": ("max_generations", int),
    "seed": ("seed", int),
}
_FACTORS = {name.lower(): (name, _float) for name in ReserveFactors.field_names()}

_SECTIONS = {
    "materials": None,
    "shaft": _SHAFT,
    "supports": _SUPPORTS,
    "driveline": _DRIVELINE,
    "encoding": _ENCODING,
    "ga": _GA,
    "factors": _FACTORS,
}
_REQUIRED = {"shaft": ("sequence", "r_m", "omega_nom"), "encoding": ("q", "materials")}

_PLY_FIELDS = {f.name for f in dataclasses.fields(PlyMaterial)} - {"name"}
_ISO_FIELDS = {"E", "nu", "rho", "t", "eta"}


def _material(name: str, text: str) -> PlyMaterial:
    items = [s.strip() for s in text.split(",") if s.strip()]
    iso = bool(items) and items[0].lower() == "isotropic"
    if iso:
        items = items[1:]
    kw: dict[str, float] = {}
    allowed = _ISO_FIELDS if iso else _PLY_FIELDS
    for it in items:
        if "=" not in it:
            raise ConfigError(f"[materials] {name}: expected key=value, got {it!r}")
        k, v = (s.strip() for s in it.split("=", 1))
        if k not in allowed:
            raise ConfigError(f"[materials] {name}: unknown property {k!r}")
        try:
            kw[k] = _float(v)
        except ValueError as exc:
            raise ConfigError(f"[materials] {name}.{k}: {exc}") from exc
    try:
        if iso:
            missing = {"E", "nu", "rho", "t"} - kw.keys()
            if missing:
                raise ConfigError(f"[materials] {name}: missing {sorted(missing)}")
            return isotropic_material(name, kw["E"], kw["nu"], kw["rho"], kw["t"], kw.get("eta", 0.0))
        missing = {"E11", "E22", "E66", "nu12"} - kw.keys()
        if missing:
            raise ConfigError(f"[materials] {name}: missing {sorted(missing)}")
        return PlyMaterial(name, **kw)
    except ConfigError:
        raise
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"[materials] {name}: {exc}") from exc


def _convert(section: str, raw: dict[str, str]) -> dict[str, Any]:
    table = _SECTIONS[section]
    out: dict[str, Any] = {}
    for key, text in raw.items():
        if key not in table:
            raise ConfigError(f"[{section}] unknown key {key!r}")
        attr, conv = table[key]
        try:
            out[attr] = conv(text.strip())
        except ValueError as exc:
            raise ConfigError(f"[{section}] {key}: {exc}") from exc
    for key in _REQUIRED.get(section, ()):
        if key not in raw:
            raise ConfigError(f"[{section}] missing required key {key!r}")
    return out


def _build(kind, section: str, kw: dict[str, Any]):
    try:
        return kind(**kw)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"[{section}] {exc}") from exc


def parse_config(text: str) -> ScenarioConfig:
    cp = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=("#", ";"))
    cp.optionxform = str  # keep material names as written
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(str(exc)) from exc
    for sec in cp.sections():
        if sec not in _SECTIONS:
            raise ConfigError(f"unknown section [{sec}]")
    raw = {sec: {k.lower() if sec != "materials" else k: v for k, v in cp.items(sec)} for sec in cp.sections()}

    mats, mtext = {}, {}
    for name, spec in raw.get("materials", {}).items():
        mats[name] = _material(name, spec)
        mtext[name] = spec.strip()

    shaft = None
    if "shaft" in raw:
        kw = _convert("shaft", raw["shaft"])
        if not kw["sequence"].strip():
            raise ConfigError("[shaft] sequence is empty")
        shaft = ShaftSection(**kw)

    dkw = _convert("driveline", raw.get("driveline", {}))
    dkw.update(_convert("supports", raw.get("supports", {})))
    driveline = _build(DrivelineConfig, "driveline", dkw)

    encoding = None
    if "encoding" in raw:
        ekw = _convert("encoding", raw["encoding"])
        ekw["materials"] = tuple(s.strip() for s in ekw["materials"].split(",") if s.strip())
        for lo, hi, dst in (("rm_min", "rm_max", "rm_bounds"), ("omega_min", "omega_max", "omega_bounds"),
                            ("ke_min", "ke_max", "ke_bounds")):
            if lo in ekw or hi in ekw:
                if not (lo in ekw and hi in ekw):
                    raise ConfigError(f"[encoding] {lo} and {hi} must be given together")
                ekw[dst] = (ekw.pop(lo), ekw.pop(hi))
        encoding = _build(EncodingSpec, "encoding", ekw)
        cat = {**CATALOG, **mats}
        for m in encoding.materials:
            try:
                get_material(m, cat)
            except KeyError as exc:
                raise ConfigError(f"[encoding] materials: {exc}") from exc

    ga = _build(GaParams, "ga", _convert("ga", raw["ga"])) if "ga" in raw else None
    factors = _build(ReserveFactors, "factors", _convert("factors", raw.get("factors", {})))
    cfg = ScenarioConfig(mats, shaft, driveline, encoding, ga, factors, mtext)
    if shaft is not None:
        cfg.design()  # surface sequence errors at load time
    return cfg


def load_config(path) -> ScenarioConfig:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    return parse_config(text)


def _fmt(v) -> str:
    if isinstance(v, float):
        return "inf" if math.isinf(v) else repr(v)
    return str(v)


def dump_config(cfg: ScenarioConfig) -> str:
    """Serialize to INI text that ``parse_config`` reads back to an equal object."""
    cp = configparser.ConfigParser(interpolation=None)
    cp.optionxform = str
    if cfg.material_text:
        cp["materials"] = dict(cfg.material_text)
    if cfg.shaft is not None:
        sec = {"sequence": cfg.shaft.sequence, "r_m": _fmt(cfg.shaft.r_m), "omega_nom": _fmt(cfg.shaft.omega_nom)}
        if cfg.shaft.k_e is not None:
            sec["k_e"] = _fmt(cfg.shaft.k_e)
        cp["shaft"] = sec
    d = cfg.driveline
    cp["driveline"] = {k: _fmt(getattr(d, a)) for k, (a, _) in _DRIVELINE.items()}
    sup = {"k_e": _fmt(d.k_e), "eta_e": _fmt(d.eta_e)}
    if d.m_b is not None:
        sup["m_b"] = _fmt(d.m_b)
    cp["supports"] = sup
    if cfg.encoding is not None:
        e = cfg.encoding
        cp["encoding"] = {
            "q": str(e.q), "bit_alpha": str(e.bit_alpha), "bit_n": str(e.bit_n), "bit_mat": str(e.bit_mat),
            "bit_ke": str(e.bit_ke), "bit_rm": str(e.bit_rm), "bit_omega": str(e.bit_omega),
            "rm_min": _fmt(e.rm_bounds[0]), "rm_max": _fmt(e.rm_bounds[1]),
            "omega_min": _fmt(e.omega_bounds[0]), "omega_max": _fmt(e.omega_bounds[1]),
            "ke_min": _fmt(e.ke_bounds[0]), "ke_max": _fmt(e.ke_bounds[1]),
            "materials": ", ".join(e.materials),
        }
    if cfg.ga is not None:
        cp["ga"] = {k: _fmt(getattr(cfg.ga, a)) for k, (a, _) in _GA.items()}
    cp["factors"] = {k: _fmt(getattr(cfg.factors, a)) for k, (a, _) in _FACTORS.items()}
    buf = io.StringIO()
    cp.write(buf)
    return buf.getvalue()

