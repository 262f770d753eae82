"""Glue between the genetic algorithm and the shaft analyses."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .buckling import BucklingSearch
from .constraints import DrivelineConfig, ReserveFactors
from .design import Evaluation, ShaftDesign, evaluate_design
from .ga import DecodedShaft, EncodingSpec, GaParams, GaResult, Individual, Outcome, decode, evolve
from .materials import Ply, PlyMaterial, StackingSequence, get_material

__all__ = ["DrivelineProblem", "design_from_decoded", "optimize", "tube_mass_target"]


def design_from_decoded(
    x: DecodedShaft,
    spec: EncodingSpec,
    catalog: Mapping[str, PlyMaterial] | None = None,
) -> ShaftDesign:
    plies = []
    for angle, n, name in x.groups:
        mat = get_material(name, catalog)
        plies.extend(Ply(angle, mat) for _ in range(n))
    return ShaftDesign(StackingSequence(tuple(plies)), x.r_m, x.Omega, x.k_e if spec.bit_ke else None)


@dataclass
class DrivelineProblem:
    """Callable evaluator: chromosome bits -> ``Outcome`` (mass is the driveline mass)."""

    spec: EncodingSpec
    config: DrivelineConfig
    factors: ReserveFactors = field(default_factory=ReserveFactors)
    catalog: Mapping[str, PlyMaterial] | None = None
    search: BucklingSearch | None = None

    def design(self, bits: np.ndarray) -> ShaftDesign:
        return design_from_decoded(decode(bits, self.spec), self.spec, self.catalog)

    def evaluate(self, bits: np.ndarray) -> Evaluation:
        return evaluate_design(self.design(bits), self.config, self.factors, self.search)

    def __call__(self, bits: np.ndarray) -> Outcome:
        ev = self.evaluate(bits)
        mass = ev.analysis.m_dv if ev.analysis is not None else float("nan")
        return Outcome(ev.fitness, mass, ev.feasible)


def optimize(problem: DrivelineProblem, params: GaParams, stop_when=None) -> GaResult:
    return evolve(params, problem.spec.length, problem, stop_when=stop_when)


def tube_mass_target(problem: DrivelineProblem, max_tube_mass: float):
    """Stop rule: a feasible individual whose ``N_s * m_s`` is at most ``max_tube_mass``."""
    n = problem.config.N_s

    def stop(best: Individual) -> bool:
        return best.outcome.feasible and n / best.fitness <= max_tube_mass

    return stop
