"""Torsional modes of a shaft running between two end inertias."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

__all__ = ["TorsionalSystem", "mode_factors", "torsional_frequencies", "exact_mode_factors"]


@dataclass(frozen=True)
class TorsionalSystem:
    """Gearbox inertia ``J_G``, rotor inertia ``J_T`` and shaft inertia ``J_s``
    (kg m^2), torsional length ``l`` (m), shear modulus ``G`` (Pa), density ``rho``.
    """

    J_G: float
    J_T: float
    J_s: float
    l: float
    G: float
    rho: float

    def __post_init__(self) -> None:
        if min(self.J_G, self.J_T, self.J_s, self.l, self.G, self.rho) <= 0:
            raise ValueError("all torsional system inputs must be positive")


def mode_factors(sys: TorsionalSystem, n_max: int) -> np.ndarray:
    """Approximate eigenvalue factors ``upsilon_n`` for ``n = 1..n_max``."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    JG, JT, Js = sys.J_G, sys.J_T, sys.J_s
    out = np.empty(n_max)
    num = JG * Js + JT * Js + Js * Js
    out[0] = math.sqrt(2.0) * math.sqrt(num / (JG * Js + JT * Js + 2.0 * JG * JT))
    for n in range(2, n_max + 1):
        h = (n - 1) * math.pi / 2.0
        out[n - 1] = h + math.sqrt(h * h + Js / JT + Js / JG)
    return out


def torsional_frequencies(sys: TorsionalSystem, n_max: int = 2) -> np.ndarray:
    """Natural frequencies ``varpi_n`` (rad/s)."""
    return mode_factors(sys, n_max) / sys.l * math.sqrt(sys.G / sys.rho)


def exact_mode_factors(sys: TorsionalSystem, n_max: int) -> np.ndarray:
    """Roots of the two-inertia characteristic equation, by bracketing.

    ``(u^2 JG JT - Js^2) sin u - u Js (JG + JT) cos u = 0`` is the
    pole-free form of ``tan u = u Js (JG+JT) / (u^2 JG JT - Js^2)``.
    """
    JG, JT, Js = sys.J_G, sys.J_T, sys.J_s

    def f(u: float) -> float:
        return (u * u * JG * JT - Js * Js) * math.sin(u) - u * Js * (JG + JT) * math.cos(u)

    roots: list[float] = []
    grid = np.linspace(1e-9, (n_max + 1) * math.pi, 4000 * (n_max + 1))
    vals = [f(u) for u in grid]
    for a, b, fa, fb in zip(grid[:-1], grid[1:], vals[:-1], vals[1:]):
        if fa == 0.0:
            roots.append(a)
        elif fa * fb < 0:
            roots.append(brentq(f, a, b, xtol=1e-14))
        if len(roots) == n_max:
            break
    return np.array(roots)
