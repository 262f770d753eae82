"""Thin-walled tube geometry and section properties."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .materials import HomogenizedShaftMaterial

__all__ = ["ShaftGeometry", "SectionProperties", "section_properties"]


@dataclass(frozen=True)
class ShaftGeometry:
    """Mean radius ``r_m``, unsupported length ``l`` and wall thickness ``t_s`` (m)."""

    r_m: float
    l: float
    t_s: float

    def __post_init__(self) -> None:
        if not (self.r_m > 0 and self.l > 0 and self.t_s > 0):
            raise ValueError("r_m, l and t_s must be positive")
        if self.t_s >= self.r_m / 5.0:
            warnings.warn("t_s >= r_m/5: thin-wall formulas are outside their range", stacklevel=2)

    @classmethod
    def from_outer_radius(cls, r_outer: float, l: float, t_s: float) -> "ShaftGeometry":
        return cls(r_m=r_outer - t_s / 2.0, l=l, t_s=t_s)


@dataclass(frozen=True)
class SectionProperties:
    S: float
    I_y: float
    I_x: float
    m_s: float
    J_s: float


def section_properties(geom: ShaftGeometry, mat: HomogenizedShaftMaterial) -> SectionProperties:
    """Mid-surface (thin-wall) section properties and tube mass."""
    r, t = geom.r_m, geom.t_s
    S = 2.0 * math.pi * r * t
    I_y = math.pi * r**3 * t
    m_s = mat.rho * S * geom.l
    return SectionProperties(S=S, I_y=I_y, I_x=2.0 * I_y, m_s=m_s, J_s=m_s * r * r)
