"""Published reference data used for validation.

Each set is named after the selector accepted by ``driveshaft validate``.
Values are the published ones; nothing here is computed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .materials import PlyMaterial, get_material, isotropic_material

__all__ = [
    "StrengthTube",
    "BucklingCase",
    "DrivelineDesign",
    "STRENGTH_TUBES",
    "OFFAXIS_BE",
    "UNSYM_CFRP",
    "UNSYM_CFRP_MATERIAL",
    "ALUMINIUM_RIG",
    "PVC_RIG",
    "DRIVELINE",
    "SUBCRITICAL_DESIGNS",
    "SUPERCRITICAL_DESIGNS",
    "CONVENTIONAL",
]


@dataclass(frozen=True)
class StrengthTube:
    """Short BE tube with measured and computed failure torques (N m)."""

    name: str
    angles: tuple[float, ...]
    r_outer: float
    length: float
    experimental: float
    tsai_wu: float
    tsai_wu_b0: float
    max_stress: float
    max_stress_b0: float
    hayashi: float


STRENGTH_TUBES = (
    StrengthTube("tube1", (90, 45, -45, 90), 25.4e-3, 50.8e-3, 581, 167, 313, 517, 585, 1049),
    StrengthTube("tube2", (90, 45, -45, 0, 0, 0, 0, 0, 0, 90), 63.5e-3, 305e-3, 4689, 1605, 2613, 1610, 4880, 13016),
    StrengthTube("tube3", (90, 0, 0, 90), 25.4e-3, 50.8e-3, 132, 130, 130, 130, 130, 1547),
)


@dataclass(frozen=True)
class BucklingCase:
    name: str
    angles: tuple[float, ...]
    material: PlyMaterial
    r_m: float
    l: float
    T_buck: float
    hayashi: float
    fem: float


def _offaxis(theta: float, T: float, hay: float, fem: float) -> BucklingCase:
    return BucklingCase(f"BE_{theta:g}", (theta,) * 10, get_material("BE"), 62.85e-3, 2.47, T, hay, fem)


# single-angle BE tubes, 10 plies
OFFAXIS_BE = (
    _offaxis(0, 966, 1887, 1489),
    _offaxis(15, 755, 1776, 974),
    _offaxis(30, 979, 1607, 1121),
    _offaxis(45, 1647, 1648, 1769),
    _offaxis(60, 2445, 2216, 2587),
    _offaxis(75, 2957, 3925, 3131),
    _offaxis(90, 2835, 3365, 3278),
)

# stiffness-only CFRP ply of the unsymmetric buckling set (8 plies, 1.067 mm)
UNSYM_CFRP_MATERIAL = PlyMaterial("CFRP134", 134e9, 8.5e9, 4.6e9, 0.29, t_ply=1.067e-3 / 8)


def _unsym(no: int, angles, T: float, hay: float, fem: float) -> BucklingCase:
    return BucklingCase(f"No{no}", tuple(angles), UNSYM_CFRP_MATERIAL, 40e-3, 4.0, T, hay, fem)


UNSYM_CFRP = (
    _unsym(1, [15, -15] * 4, 193, 222, 210),
    _unsym(2, [-15, 15] * 4, 197, 222, 214),
    _unsym(3, [30, -30] * 4, 254, 283, 263),
    _unsym(4, [-30, 30] * 4, 259, 283, 268),
    _unsym(5, [45, -45] * 4, 383, 419, 385),
    _unsym(6, [-45, 45] * 4, 382, 419, 385),
    _unsym(7, [0, 0, 45, -45, 45, -45, 0, 0], 218, 252, 230),
    _unsym(8, [0, 0, -45, 45, -45, 45, 0, 0], 208, 252, 219),
    _unsym(9, [0, 0, 45, 0, -45, 0, 45, -45], 342, 420, 358),
    _unsym(10, [0, 0, -45, 0, 45, 0, -45, 45], 315, 420, 329),
    _unsym(11, [0, 0, 45, 0, 0, -45, 45, -45], 340, 440, 355),
    _unsym(12, [0, 0, -45, 0, 0, 45, -45, 45], 300, 440, 313),
    _unsym(13, [-45, -15, 15, 45, 15, -15, -45, 45], 375, 493, 389),
    _unsym(14, [45, 15, -15, -45, -15, 15, 45, -45], 449, 493, 439),
    _unsym(15, [15, -15, -45, -15, 15, 45, 15, -15], 206, 265, 219),
    _unsym(16, [-15, 15, 45, 15, -15, -45, -15, 15], 226, 265, 241),
)


@dataclass(frozen=True)
class RigShaft:
    """Isotropic tube on two viscoelastic supports."""

    E: float
    nu: float
    rho: float
    r_m: float
    t: float
    m_b: float
    k_e: float
    eta_i: float = 0.0
    eta_e: float = 0.0
    lengths: tuple[float, ...] = ()
    stable_lengths: tuple[float, ...] = ()
    F_minus: float | None = None
    F_plus: float | None = None


# Poisson ratio is not published for either rig; typical values are used
ALUMINIUM_RIG = RigShaft(69e9, 0.33, 2700.0, 23.99e-3, 2.02e-3, 2.817, 5.64e5, lengths=(1.80,), F_minus=250.0,
                         F_plus=460.0)
PVC_RIG = RigShaft(2.2e9, 0.38, 1350.0, 23.25e-3, 2.5e-3, 2.608, 2.58e5, eta_i=0.025, eta_e=0.07,
                   lengths=(0.6, 0.8, 0.9, 1.1), stable_lengths=(0.8, 0.9))


@dataclass(frozen=True)
class DrivelineData:
    total_length: float = 7.41
    power: float = 447.4e3
    J_G: float = 0.94
    J_T: float = 3.76
    penalty_per_shaft: float = 1.5


DRIVELINE = DrivelineData()


@dataclass(frozen=True)
class DrivelineDesign:
    """One published optimum (or reference) driveline.

    ``sequence`` uses the configuration notation (``angle:MAT*count``).
    Speeds in rev/min, torques in N m, masses in kg, lengths in m.
    """

    name: str
    sequence: str
    N_s: int
    Omega: float
    r_m: float
    t_s: float
    tubes_mass: float
    supports_mass: float
    penalty: float
    total_mass: float
    T_nom: float
    T_str: float | None = None
    T_buck: float | None = None
    critical: tuple[float, ...] = ()
    torsional: tuple[float, ...] = ()
    omega_th: float | None = None
    k_e: float | None = None
    bit_alpha: int = 2
    extra: dict = field(default_factory=dict)


CONVENTIONAL = DrivelineDesign(
    "aluminium", "", 5, 5540, 56.3e-3, 1.65e-3, 13.38, 15.42, 0.0, 28.80, 771, 4925, 3090, (8887,), (2058, 65370),
)

SUBCRITICAL_DESIGNS = (
    DrivelineDesign("zinberg_BE", "90:BE, 45:BE, -45:BE, 0:BE*6, 90:BE", 3, 4320, 62.84e-3, 1.321e-3, 8.16, 7.71,
                    4.5, 20.37, 989, 4880, 2671, (5697,), (1292, 35318)),
    DrivelineDesign("BE", "90:BE*2, 0:BE*4, -45:BE, 45:BE, 90:BE", 3, 3800, 56e-3, 1.19e-3, 6.09, 9.68, 4.5, 20.27,
                    1124, 3149, 2645, (4606,), (1065, 36428)),
    DrivelineDesign("HM", "90:HM, 0:HM*3, 45:HM, -45:HM*2, 45:HM", 3, 4800, 54e-3, 1.00e-3, 4.26, 8.24, 4.5, 17.0,
                    891, 2268, 2108, (5800,), (1534, 64965)),
    DrivelineDesign("HM_3bit", "90:HM, -22.5:HM*2, 22.5:HM, -22.5:HM, 22.5:HM*2, -67.5:HM", 3, 4600, 50e-3, 1.00e-3,
                    3.96, 8.48, 4.5, 16.95, 929, 2267, 2105, (5695,), (1254, 59599), bit_alpha=3),
    DrivelineDesign("HS_HM", "90:HM, 45:HS, 0:HM*4, -45:HS, 90:HM", 3, 4400, 46e-3, 1.00e-3, 3.57, 8.75, 4.5, 16.82,
                    971, 3349, 2206, (5344,), (635, 34510)),
)

SUPERCRITICAL_DESIGNS = (
    DrivelineDesign("HM_2tube", "90:HM, 45:HM, 0:HM*2, -45:HM*2, 0:HM, 45:HM", 2, 5400, 56e-3, 1.0e-3, 4.43, 3.80,
                    3.0, 11.23, 791, 2439, 1963, (2696, 10784, 24264, 43136), (1322, 43326), 23658, 2864e3),
    DrivelineDesign("HM_HS_2tube", "90:HM, 0:HM*3, -45:HS, 0:HM*2, 90:HM", 2, 4800, 50e-3, 1.0e-3, 3.60, 4.12, 3.0,
                    10.72, 891, 2096, 2137, (2647, 10589, 23824, 42355), (409, 18112), 20356, 2864e3),
    DrivelineDesign("HM_HS_1tube", "90:HS, 0:HM*9, -45:HS", 1, 7000, 62e-3, 1.375e-3, 6.65, 0.0, 1.5, 8.15, 610,
                    4352, 1657, (1018, 4072, 9161, 16287), (483, 8300), 13638, 1437e3),
)


def aluminium_tube(t: float = 1.65e-3) -> PlyMaterial:
    """Isotropic aluminium layer for the conventional driveline."""
    return isotropic_material("AL", 69e9, 0.33, 2700.0, t)
