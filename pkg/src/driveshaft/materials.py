"""Ply catalog and classical laminate theory.

Plies are listed from the inner to the outer radius of the tube. The
through-thickness coordinate ``z`` runs from ``-t_s/2`` at the inner surface
to ``+t_s/2`` at the outer surface, so ABD matrices are taken about the
laminate mid-surface.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field, replace
from typing import Iterable, Mapping, Sequence

import numpy as np

__all__ = [
    "PlyMaterial",
    "Ply",
    "StackingSequence",
    "LaminateStiffness",
    "HomogenizedShaftMaterial",
    "CATALOG",
    "get_material",
    "reduced_stiffness",
    "rotated_stiffness",
    "build_abd",
    "homogenize",
    "homogenize_damping",
    "isotropic_material",
]

DEFAULT_T_PLY = 0.125e-3


@dataclass(frozen=True)
class PlyMaterial:
    """Orthotropic ply properties in SI units.

    Strengths and density are optional so that stiffness-only fixtures can be
    described; analyses that need them raise when they are missing. Loss
    factors are dimensionless fractions (0.0011 means 0.11 %).
    """

    name: str
    E11: float
    E22: float
    E66: float
    nu12: float
    t_ply: float = DEFAULT_T_PLY
    rho: float | None = None
    X: float | None = None
    Xp: float | None = None
    Y: float | None = None
    Yp: float | None = None
    s: float | None = None
    eta11: float = 0.0011
    eta22: float = 0.0070
    eta66: float = 0.0110

    def __post_init__(self) -> None:
        for key in ("E11", "E22", "E66", "t_ply"):
            if not getattr(self, key) > 0:
                raise ValueError(f"{self.name}: {key} must be positive")
        for key in ("rho", "X", "Xp", "Y", "Yp", "s"):
            val = getattr(self, key)
            if val is not None and not val > 0:
                raise ValueError(f"{self.name}: {key} must be positive when given")
        if not 0.0 < self.nu12 < 0.5:
            raise ValueError(f"{self.name}: nu12 must lie in (0, 0.5)")
        if self.nu12**2 * self.E22 / self.E11 >= 1.0:
            raise ValueError(f"{self.name}: Poisson ratios are not admissible")
        for key in ("eta11", "eta22", "eta66"):
            if not 0.0 <= getattr(self, key) <= 0.2:
                raise ValueError(f"{self.name}: {key} must lie in [0, 0.2]")

    @property
    def nu21(self) -> float:
        return self.nu12 * self.E22 / self.E11

    @property
    def has_strengths(self) -> bool:
        return None not in (self.X, self.Xp, self.Y, self.Yp, self.s)


_GPA = 1e9
_MPA = 1e6

CATALOG: dict[str, PlyMaterial] = {
    "BE": PlyMaterial(
        "BE", 211 * _GPA, 24.1 * _GPA, 6.89 * _GPA, 0.36, t_ply=0.1321e-3, rho=1965.0,
        X=1365 * _MPA, Xp=1586 * _MPA, Y=45 * _MPA, Yp=213 * _MPA, s=62 * _MPA,
    ),
    "CE_L": PlyMaterial(
        "CE_L", 181 * _GPA, 10.3 * _GPA, 7.17 * _GPA, 0.28, t_ply=DEFAULT_T_PLY, rho=1680.0,
        X=1500 * _MPA, Xp=1500 * _MPA, Y=40 * _MPA, Yp=246 * _MPA, s=68 * _MPA,
    ),
    "HM": PlyMaterial(
        "HM", 370 * _GPA, 5.4 * _GPA, 4.0 * _GPA, 0.3, t_ply=0.125e-3, rho=1700.0,
        X=1500 * _MPA, Xp=470 * _MPA, Y=35 * _MPA, Yp=200 * _MPA, s=75 * _MPA,
    ),
    "HS": PlyMaterial(
        "HS", 162 * _GPA, 10 * _GPA, 5.0 * _GPA, 0.3, t_ply=0.125e-3, rho=1530.0,
        X=2940 * _MPA, Xp=1570 * _MPA, Y=60 * _MPA, Yp=290 * _MPA, s=100 * _MPA,
    ),
}
# the hybrid tables label the high-strength fibre "HR"
_ALIASES = {"HR": "HS"}


def get_material(name: str, catalog: Mapping[str, PlyMaterial] | None = None) -> PlyMaterial:
    """Look up a ply material by name in ``catalog`` (default: built-in)."""
    cat = CATALOG if catalog is None else catalog
    key = name.strip()
    if key in cat:
        return cat[key]
    key = _ALIASES.get(key.upper(), key.upper())
    if key in cat:
        return cat[key]
    raise KeyError(f"unknown material {name!r}")


def isotropic_material(name: str, E: float, nu: float, rho: float, t: float, eta: float = 0.0) -> PlyMaterial:
    """An isotropic layer expressed as a degenerate ply (metal tubes, PVC)."""
    return PlyMaterial(
        name, E, E, E / (2.0 * (1.0 + nu)), nu, t_ply=t, rho=rho, eta11=eta, eta22=eta, eta66=eta,
    )


@dataclass(frozen=True)
class Ply:
    angle: float
    material: PlyMaterial

    def __post_init__(self) -> None:
        if not -90.0 <= self.angle <= 90.0:
            raise ValueError(f"ply angle {self.angle} outside [-90, 90]")


_TOKEN = re.compile(r"^\s*([+-]?\d+(?:\.\d*)?)\s*(?::\s*([A-Za-z][\w]*))?\s*(?:\*\s*(\d+))?\s*$")


@dataclass(frozen=True)
class StackingSequence:
    """Ordered plies, inner surface first. Each entry is one physical ply."""

    plies: tuple[Ply, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "plies", tuple(self.plies))
        if not self.plies:
            raise ValueError("a stacking sequence needs at least one ply")

    @classmethod
    def from_angles(cls, angles: Iterable[float], material: PlyMaterial) -> "StackingSequence":
        return cls(tuple(Ply(float(a), material) for a in angles))

    @classmethod
    def parse(
        cls,
        text: str,
        catalog: Mapping[str, PlyMaterial] | None = None,
        default_material: str | None = None,
    ) -> "StackingSequence":
        """Parse ``"90:HM, 45:HS, 0:HM*4"`` (angle:material*count)."""
        plies: list[Ply] = []
        body = text.strip().strip("[]")
        if not body:
            raise ValueError("empty stacking sequence")
        for item in body.split(","):
            m = _TOKEN.match(item)
            if m is None:
                raise ValueError(f"cannot parse ply entry {item!r}")
            angle = float(m.group(1))
            name = m.group(2) or default_material
            if name is None:
                raise ValueError(f"ply entry {item!r} has no material")
            count = int(m.group(3) or 1)
            if count < 1:
                raise ValueError(f"ply entry {item!r} has a zero count")
            mat = get_material(name, catalog)
            plies.extend(Ply(angle, mat) for _ in range(count))
        return cls(tuple(plies))

    @property
    def angles(self) -> np.ndarray:
        return np.array([p.angle for p in self.plies])

    @property
    def thicknesses(self) -> np.ndarray:
        return np.array([p.material.t_ply for p in self.plies])

    @property
    def thickness(self) -> float:
        return float(self.thicknesses.sum())

    def __len__(self) -> int:
        return len(self.plies)

    def groups(self) -> list[tuple[float, str, int]]:
        """Run-length groups ``(angle, material name, count)``."""
        out: list[tuple[float, str, int]] = []
        for p in self.plies:
            if out and out[-1][0] == p.angle and out[-1][1] == p.material.name:
                out[-1] = (p.angle, p.material.name, out[-1][2] + 1)
            else:
                out.append((p.angle, p.material.name, 1))
        return out

    def notation(self) -> str:
        """Bracket notation such as ``[90_2, 0_4, -45, 45, 90]``.

        Material tags are appended (``45^HS``) only for hybrid sequences.
        """
        hybrid = len({p.material.name for p in self.plies}) > 1
        parts = []
        for angle, name, count in self.groups():
            txt = f"{angle:g}"
            if count > 1:
                txt += f"_{count}"
            if hybrid:
                txt += f"^{name}"
            parts.append(txt)
        return "[" + ", ".join(parts) + "]"

    def to_config(self) -> str:
        """Inverse of :meth:`parse`."""
        parts = []
        for angle, name, count in self.groups():
            parts.append(f"{angle:g}:{name}" + (f"*{count}" if count > 1 else ""))
        return ", ".join(parts)

    def rotated(self, delta: float) -> "StackingSequence":
        """All plies rotated by ``delta`` degrees, wrapped into [-90, 90]."""
        plies = []
        for p in self.plies:
            a = (p.angle + delta + 90.0) % 180.0 - 90.0
            plies.append(Ply(a, p.material))
        return StackingSequence(tuple(plies))


def reduced_stiffness(mat: PlyMaterial, moduli: Sequence[complex] | None = None) -> np.ndarray:
    """Plane-stress reduced stiffness ``Q`` in ply axes (engineering shear strain).

    ``moduli`` optionally overrides ``(E11, E22, E66)``, e.g. with complex values.
    """
    E11, E22, E66 = (mat.E11, mat.E22, mat.E66) if moduli is None else moduli
    nu12 = mat.nu12
    nu21 = nu12 * E22 / E11
    den = 1.0 - nu12 * nu21
    dtype = complex if np.iscomplexobj(np.asarray([E11, E22, E66])) else float
    Q = np.zeros((3, 3), dtype=dtype)
    Q[0, 0] = E11 / den
    Q[1, 1] = E22 / den
    Q[0, 1] = Q[1, 0] = nu12 * E22 / den
    Q[2, 2] = E66
    return Q


def rotated_stiffness(Q: np.ndarray, angle_deg: float) -> np.ndarray:
    """``Q-bar`` for a ply at ``angle_deg`` to the tube axis."""
    t = math.radians(angle_deg)
    c, s = math.cos(t), math.sin(t)
    c2, s2, cs = c * c, s * s, c * s
    Q11, Q12, Q22, Q66 = Q[0, 0], Q[0, 1], Q[1, 1], Q[2, 2]
    out = np.empty((3, 3), dtype=Q.dtype)
    out[0, 0] = Q11 * c2 * c2 + 2 * (Q12 + 2 * Q66) * s2 * c2 + Q22 * s2 * s2
    out[1, 1] = Q11 * s2 * s2 + 2 * (Q12 + 2 * Q66) * s2 * c2 + Q22 * c2 * c2
    out[0, 1] = out[1, 0] = (Q11 + Q22 - 4 * Q66) * s2 * c2 + Q12 * (s2 * s2 + c2 * c2)
    out[2, 2] = (Q11 + Q22 - 2 * Q12 - 2 * Q66) * s2 * c2 + Q66 * (s2 * s2 + c2 * c2)
    out[0, 2] = out[2, 0] = (Q11 - Q12 - 2 * Q66) * s * c2 * c + (Q12 - Q22 + 2 * Q66) * s2 * s * c
    out[1, 2] = out[2, 1] = (Q11 - Q12 - 2 * Q66) * s2 * s * c + (Q12 - Q22 + 2 * Q66) * s * c2 * c
    return out


def strain_transform(angle_deg: float) -> np.ndarray:
    """Map laminate-axis engineering strains to ply-axis engineering strains."""
    t = math.radians(angle_deg)
    c, s = math.cos(t), math.sin(t)
    return np.array(
        [
            [c * c, s * s, s * c],
            [s * s, c * c, -s * c],
            [-2 * s * c, 2 * s * c, c * c - s * s],
        ]
    )


@dataclass(frozen=True)
class LaminateStiffness:
    """ABD matrices of a laminate about its mid-surface.

    Index 2 (the third row/column) is the in-plane shear component.
    """

    A: np.ndarray
    B: np.ndarray
    D: np.ndarray
    a: np.ndarray
    t_s: float
    z: np.ndarray = field(repr=False)

    @property
    def abd(self) -> np.ndarray:
        """The 6x6 laminate stiffness matrix."""
        return np.block([[self.A, self.B], [self.B, self.D]])

    def packed(self) -> np.ndarray:
        """The 18 independent entries ``A11..A33, B11..B33, D11..D33`` (upper triangles)."""
        iu = [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)]
        return np.array([M[i, j] for M in (self.A, self.B, self.D) for i, j in iu], dtype=float)


def _assemble(seq: StackingSequence, qbars: Sequence[np.ndarray]):
    t = seq.thicknesses
    z = np.concatenate([[0.0], np.cumsum(t)]) - t.sum() / 2.0
    dtype = qbars[0].dtype
    A = np.zeros((3, 3), dtype=dtype)
    B = np.zeros((3, 3), dtype=dtype)
    D = np.zeros((3, 3), dtype=dtype)
    for k, qb in enumerate(qbars):
        z0, z1 = z[k], z[k + 1]
        A += qb * (z1 - z0)
        B += qb * (z1**2 - z0**2) / 2.0
        D += qb * (z1**3 - z0**3) / 3.0
    return A, B, D, z


def build_abd(seq: StackingSequence) -> LaminateStiffness:
    """Assemble A, B, D and the in-plane compliance ``a = A^-1``."""
    qbars = [rotated_stiffness(reduced_stiffness(p.material), p.angle) for p in seq.plies]
    A, B, D, z = _assemble(seq, qbars)
    if np.linalg.cond(A) > 1e14:
        raise ValueError("in-plane stiffness matrix A is singular")
    a = np.linalg.inv(A)
    return LaminateStiffness(A=A, B=B, D=D, a=a, t_s=seq.thickness, z=z)


@dataclass(frozen=True)
class HomogenizedShaftMaterial:
    """Equivalent isotropic beam properties of a laminated tube."""

    E: float
    G: float
    nu: float
    kappa: float
    rho: float
    eta_i: float

    @classmethod
    def isotropic(cls, E: float, nu: float, rho: float, eta_i: float = 0.0) -> "HomogenizedShaftMaterial":
        G = E / (2.0 * (1.0 + nu))
        return cls(E=E, G=G, nu=nu, kappa=shear_coefficient(nu), rho=rho, eta_i=eta_i)


def shear_coefficient(nu: float) -> float:
    """Thin circular tube shear coefficient."""
    return 2.0 * (1.0 + nu) / (4.0 + 3.0 * nu)


def homogenize(seq: StackingSequence, lam: LaminateStiffness | None = None) -> HomogenizedShaftMaterial:
    """Equivalent-modulus beam constants of the tube wall.

    Density is the thickness-weighted mean of the ply densities (``nan`` when
    a ply has no density).
    """
    lam = build_abd(seq) if lam is None else lam
    a, ts = lam.a, lam.t_s
    E = 1.0 / (a[0, 0] * ts)
    G = 1.0 / (a[2, 2] * ts)
    nu = -a[0, 1] / a[0, 0]
    rhos = [p.material.rho for p in seq.plies]
    if any(r is None for r in rhos):
        rho = float("nan")
    else:
        rho = float(np.dot(rhos, seq.thicknesses) / ts)
    return HomogenizedShaftMaterial(
        E=float(E), G=float(G), nu=float(nu), kappa=shear_coefficient(float(nu)), rho=rho,
        eta_i=homogenize_damping(seq),
    )


def homogenize_damping(seq: StackingSequence) -> float:
    """Equivalent longitudinal loss factor from complex ply moduli."""
    qbars = []
    for p in seq.plies:
        m = p.material
        moduli = (m.E11 * (1 - 1j * m.eta11), m.E22 * (1 - 1j * m.eta22), m.E66 * (1 - 1j * m.eta66))
        qbars.append(rotated_stiffness(reduced_stiffness(m, moduli), p.angle))
    A, _, _, _ = _assemble(seq, qbars)
    a = np.linalg.inv(A)
    Ex = 1.0 / a[0, 0]
    return float(-Ex.imag / Ex.real)


def with_thickness(mat: PlyMaterial, t_ply: float) -> PlyMaterial:
    """Copy of ``mat`` with a different ply thickness."""
    return replace(mat, t_ply=t_ply)
