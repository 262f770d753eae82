"""First-ply torque capacity of a laminated tube in pure torsion."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .materials import (
    LaminateStiffness,
    StackingSequence,
    build_abd,
    reduced_stiffness,
    strain_transform,
)
from .shaft import ShaftGeometry

__all__ = [
    "PlyStressState",
    "TorqueCapacity",
    "ply_stresses_under_torsion",
    "torque_capacity",
    "stepping_capacity",
    "DEFAULT_F12",
]

Coupling = Literal["B_asis", "B_zero"]
Criterion = Literal["tsai_wu", "max_stress"]

# Negative interaction coefficient (the usual Tsai-Wu convention); see README.
DEFAULT_F12 = -0.5


@dataclass(frozen=True)
class PlyStressState:
    """Ply-axis stresses at a reference torque.

    ``inner`` and ``outer`` hold ``(sigma11, sigma22, sigma12)`` rows at the
    inner and outer face of each ply. Without curvature they coincide.
    """

    torque: float
    inner: np.ndarray
    outer: np.ndarray

    @property
    def mid(self) -> np.ndarray:
        return 0.5 * (self.inner + self.outer)

    def scaled(self, factor: float) -> "PlyStressState":
        return PlyStressState(self.torque * factor, self.inner * factor, self.outer * factor)


@dataclass(frozen=True)
class TorqueCapacity:
    T_str: float
    critical_ply: int
    criterion: str
    coupling: str
    direction: int


def _check_coupling(coupling: str) -> None:
    if coupling not in ("B_asis", "B_zero"):
        raise ValueError(f"unknown coupling mode {coupling!r}")


def ply_stresses_under_torsion(
    seq: StackingSequence,
    geom: ShaftGeometry,
    T: float,
    coupling: Coupling = "B_zero",
    lam: LaminateStiffness | None = None,
) -> PlyStressState:
    """Ply stresses under torque ``T`` (N m).

    The shear flow is ``T / (2 pi r_m^2)``. With ``B_zero`` the mid-surface
    strains come from ``A^-1`` alone; with ``B_asis`` the full ABD system is
    solved with zero moment resultants.
    """
    _check_coupling(coupling)
    lam = build_abd(seq) if lam is None else lam
    nxy = T / (2.0 * math.pi * geom.r_m**2)
    if coupling == "B_zero":
        eps0 = lam.a @ np.array([0.0, 0.0, nxy])
        kappa = np.zeros(3)
    else:
        abd = lam.abd
        if np.linalg.cond(abd) > 1e14:
            raise ValueError("laminate ABD matrix is singular")
        sol = np.linalg.solve(abd, np.array([0.0, 0.0, nxy, 0.0, 0.0, 0.0]))
        eps0, kappa = sol[:3], sol[3:]
    n = len(seq)
    inner = np.empty((n, 3))
    outer = np.empty((n, 3))
    z = lam.z
    for k, ply in enumerate(seq.plies):
        Q = reduced_stiffness(ply.material)
        Tm = strain_transform(ply.angle)
        inner[k] = Q @ (Tm @ (eps0 + z[k] * kappa))
        outer[k] = Q @ (Tm @ (eps0 + z[k + 1] * kappa))
    return PlyStressState(T, inner, outer)


def _tsai_wu_multiplier(sig: np.ndarray, mat, F12: float) -> float:
    s1, s2, s6 = sig
    X, Xp, Y, Yp, S = mat.X, mat.Xp, mat.Y, mat.Yp, mat.s
    quad = s1 * s1 / (X * Xp) + 2.0 * F12 / math.sqrt(X * Xp * Y * Yp) * s1 * s2 + s2 * s2 / (Y * Yp) + s6 * s6 / (S * S)
    lin = (1.0 / X - 1.0 / Xp) * s1 + (1.0 / Y - 1.0 / Yp) * s2
    # smallest positive t with quad t^2 + lin t = 1
    if quad == 0.0:
        return 1.0 / lin if lin > 0 else math.inf
    disc = lin * lin + 4.0 * quad
    if disc < 0 or (quad < 0 and lin <= 0):
        return math.inf
    return (-lin + math.sqrt(disc)) / (2.0 * quad)


def _max_stress_multiplier(sig: np.ndarray, mat) -> float:
    s1, _, s6 = sig
    t = math.inf
    if s1 > 0:
        t = min(t, mat.X / s1)
    elif s1 < 0:
        t = min(t, mat.Xp / -s1)
    if s6 != 0:
        t = min(t, mat.s / abs(s6))
    return t


def torque_capacity(
    seq: StackingSequence,
    geom: ShaftGeometry,
    criterion: Criterion = "max_stress",
    coupling: Coupling = "B_zero",
    direction: int = +1,
    F12: float = DEFAULT_F12,
    lam: LaminateStiffness | None = None,
) -> TorqueCapacity:
    """First-ply failure torque magnitude for a torque of sign ``direction``.

    ``max_stress`` checks the fibre stress against ``X``/``X'`` and the shear
    stress against ``s``; the transverse stress is ignored. ``tsai_wu`` is
    the full quadratic criterion with interaction coefficient ``F12``.
    """
    if criterion not in ("tsai_wu", "max_stress"):
        raise ValueError(f"unknown criterion {criterion!r}")
    if direction not in (1, -1):
        raise ValueError("direction must be +1 or -1")
    state = ply_stresses_under_torsion(seq, geom, float(direction), coupling, lam)
    best, ply_idx = math.inf, -1
    for k, ply in enumerate(seq.plies):
        mat = ply.material
        if not mat.has_strengths:
            raise ValueError(f"material {mat.name} has no strength data")
        for sig in (state.inner[k], state.outer[k]):
            if criterion == "tsai_wu":
                t = _tsai_wu_multiplier(sig, mat, F12)
            else:
                t = _max_stress_multiplier(sig, mat)
            if t < best:
                best, ply_idx = t, k
    if not math.isfinite(best):
        raise ValueError("stress state never reaches the failure envelope")
    return TorqueCapacity(best, ply_idx, criterion, coupling, direction)


def _violates(sig: np.ndarray, mat, criterion: str, F12: float) -> bool:
    s1, s2, s6 = sig
    if criterion == "max_stress":
        return s1 > mat.X or s1 < -mat.Xp or abs(s6) > mat.s
    val = (
        s1 * s1 / (mat.X * mat.Xp)
        + 2.0 * F12 / math.sqrt(mat.X * mat.Xp * mat.Y * mat.Yp) * s1 * s2
        + s2 * s2 / (mat.Y * mat.Yp)
        + s6 * s6 / mat.s**2
        + (1.0 / mat.X - 1.0 / mat.Xp) * s1
        + (1.0 / mat.Y - 1.0 / mat.Yp) * s2
    )
    return val > 1.0


def stepping_capacity(
    seq: StackingSequence,
    geom: ShaftGeometry,
    criterion: Criterion = "max_stress",
    coupling: Coupling = "B_zero",
    direction: int = +1,
    F12: float = DEFAULT_F12,
    step: float = 1e-3,
    start: float = 1.0,
) -> float:
    """Brute-force capacity: raise the torque by ``step`` (relative) until a ply fails."""
    unit = ply_stresses_under_torsion(seq, geom, float(direction), coupling)
    T = start
    while T < 1e9:
        for k, ply in enumerate(seq.plies):
            for sig in (unit.inner[k], unit.outer[k]):
                if _violates(sig * T, ply.material, criterion, F12):
                    return T
        T *= 1.0 + step
    raise ValueError("no failure found below 1e9 N m")
