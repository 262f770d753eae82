"""Composite drive-shaft analysis and genetic-algorithm design."""

from .buckling import BucklingResult, BucklingSearch, buckling_torque, dense_scan_torque, hayashi_torque
from .config import ConfigError, ScenarioConfig, dump_config, load_config, parse_config
from .constraints import DrivelineConfig, ReserveFactors, driveline_mass, evaluate_constraints, fitness, support_mass
from .design import ShaftAnalysis, ShaftDesign, analyze_design, evaluate_design
from .ga import EncodingSpec, GaParams, GaResult, decode, encode, evolve
from .materials import CATALOG, Ply, PlyMaterial, StackingSequence, build_abd, get_material, homogenize
from .optimize import DrivelineProblem, optimize
from .rotordynamics import SupportProperties, critical_speeds, modal_parameters, stability_threshold
from .shaft import ShaftGeometry, section_properties
from .strength import torque_capacity
from .torsional import TorsionalSystem, torsional_frequencies

__version__ = "0.1.0"

__all__ = [
    "BucklingResult",
    "BucklingSearch",
    "buckling_torque",
    "dense_scan_torque",
    "hayashi_torque",
    "ConfigError",
    "ScenarioConfig",
    "dump_config",
    "load_config",
    "parse_config",
    "DrivelineConfig",
    "ReserveFactors",
    "driveline_mass",
    "evaluate_constraints",
    "fitness",
    "support_mass",
    "ShaftAnalysis",
    "ShaftDesign",
    "analyze_design",
    "evaluate_design",
    "EncodingSpec",
    "GaParams",
    "GaResult",
    "decode",
    "encode",
    "evolve",
    "CATALOG",
    "Ply",
    "PlyMaterial",
    "StackingSequence",
    "build_abd",
    "get_material",
    "homogenize",
    "DrivelineProblem",
    "optimize",
    "SupportProperties",
    "critical_speeds",
    "modal_parameters",
    "stability_threshold",
    "ShaftGeometry",
    "section_properties",
    "torque_capacity",
    "TorsionalSystem",
    "torsional_frequencies",
]
