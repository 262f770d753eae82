"""Flexural critical speeds of a Timoshenko tube on viscoelastic supports.

The shaft is pinned on two identical supports, each a mass ``m_b`` on a
spring ``k_e``. For harmonic ``n`` the sine bending mode couples with the
rigid translation (odd ``n``) or the rigid rocking (even ``n``) of the
supports, giving four signed synchronous whirl speeds. Backward speeds are
stored with a negative sign.

All speeds are in rad/s. A support stiffness of ``math.inf`` means rigid
supports.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy import linalg

from .materials import HomogenizedShaftMaterial
from .shaft import SectionProperties, ShaftGeometry

__all__ = [
    "SupportProperties",
    "ModalParameters",
    "CriticalSpeeds",
    "BranchDiagnostic",
    "StabilityResult",
    "modal_parameters",
    "critical_speeds",
    "uncoupled_speeds",
    "eigen_oracle",
    "stability_threshold",
    "damped_whirl",
    "damped_threshold_sweep",
    "rpm_to_rad",
    "rad_to_rpm",
]


def rpm_to_rad(rpm: float) -> float:
    return rpm * math.pi / 30.0


def rad_to_rpm(w: float) -> float:
    return w * 30.0 / math.pi


@dataclass(frozen=True)
class SupportProperties:
    """Per-support participating mass, stiffness and damping."""

    m_b: float
    k_e: float
    eta_e: float = 0.0
    c_e: float = 0.0

    def __post_init__(self) -> None:
        if self.m_b < 0 or not self.k_e > 0 or self.eta_e < 0:
            raise ValueError("need m_b >= 0, k_e > 0 and eta_e >= 0")

    @property
    def rigid(self) -> bool:
        return math.isinf(self.k_e)


@dataclass(frozen=True)
class ModalParameters:
    """Dimensionless groups of harmonic ``n``.

    ``omega_s2`` is the squared bending frequency of the shaft on pinned
    supports and ``omega_b2`` the squared rigid-mode frequency of the
    supports loaded by their share of the shaft mass.
    """

    n: int
    omega_s2: float
    omega_b2: float
    Gamma: float
    Pi: float
    Phi: float
    Psi: float
    Delta_plus: float
    Delta_minus: float
    Lambda_plus: float
    Lambda_minus: float
    k_s: float
    k_e: float
    m_s: float


@dataclass(frozen=True)
class CriticalSpeeds:
    n: int
    F_minus: float
    F_plus: float
    B_minus: float
    B_plus: float

    @property
    def forward(self) -> tuple[float, float]:
        return (self.F_minus, self.F_plus)

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.F_minus, self.F_plus, self.B_minus, self.B_plus)


def _mass_share(m_s: float, n: int) -> float:
    return m_s / (2.0 * (2.0 + (-1) ** n))


def modal_parameters(
    geom: ShaftGeometry,
    section: SectionProperties,
    mat: HomogenizedShaftMaterial,
    support: SupportProperties,
    n: int,
) -> ModalParameters:
    """Evaluate the modal groups for harmonic ``n >= 1``."""
    if n < 1:
        raise ValueError("harmonic index n must be >= 1")
    l, S = geom.l, section.S
    npi2 = (n * math.pi) ** 2
    m_s = section.m_s
    omega_s2 = npi2**2 * mat.E * section.I_y / (mat.rho * S * l**4)
    share = _mass_share(m_s, n)
    m_eff = support.m_b + share
    if math.isinf(support.m_b):
        omega_b2, Phi = 0.0, 0.0
    else:
        omega_b2 = math.inf if support.rigid else support.k_e / m_eff
        Phi = m_s / m_eff
    Gamma = npi2 * section.I_x / (S * l**2)
    Pi = 1.0 + npi2 * section.I_y / (S * l**2) * (1.0 + mat.E / (mat.kappa * mat.G))
    Psi = Pi - 4.0 / npi2 * Phi
    p = ModalParameters(
        n=n,
        omega_s2=omega_s2,
        omega_b2=omega_b2,
        Gamma=Gamma,
        Pi=Pi,
        Phi=Phi,
        Psi=Psi,
        Delta_plus=Psi + Gamma,
        Delta_minus=Psi - Gamma,
        Lambda_plus=Pi + Gamma,
        Lambda_minus=Pi - Gamma,
        k_s=m_s * omega_s2,
        k_e=support.k_e,
        m_s=m_s,
    )
    if not p.Delta_minus > 0:
        raise ValueError(f"Delta_minus = {p.Delta_minus:.4g} <= 0: shaft outside the slender-beam model")
    return p


def _root_pair(ws2: float, wb2: float, lam: float, dlt: float) -> tuple[float, float]:
    """Lower and upper roots of ``dlt*w^4 - (ws2 + lam*wb2)*w^2 + ws2*wb2 = 0``.

    The lower root uses the product-of-roots form, which is algebraically the
    same as the textbook ``(S - R)/(2 dlt)`` but does not cancel when
    ``wb2 >> ws2``.
    """
    if dlt <= 0:
        raise ValueError("non-positive Delta")
    if math.isinf(wb2):
        return math.sqrt(ws2 / lam), math.inf
    s = ws2 + lam * wb2
    rad = ws2 * ws2 + 2.0 * (lam - 2.0 * dlt) * ws2 * wb2 + lam * lam * wb2 * wb2
    if rad < 0:
        raise ValueError(f"negative radicand {rad:.4g} in the critical speed formula")
    r = math.sqrt(rad)
    upper = math.sqrt((s + r) / (2.0 * dlt))
    lower = math.sqrt(2.0 * ws2 * wb2 / (s + r)) if s + r > 0 else 0.0
    return lower, upper


def critical_speeds(params: ModalParameters) -> CriticalSpeeds:
    """Four signed synchronous whirl speeds of one harmonic."""
    fm, fp = _root_pair(params.omega_s2, params.omega_b2, params.Lambda_minus, params.Delta_minus)
    bm, bp = _root_pair(params.omega_s2, params.omega_b2, params.Lambda_plus, params.Delta_plus)
    return CriticalSpeeds(n=params.n, F_minus=fm, F_plus=fp, B_minus=-bm, B_plus=-bp)


def uncoupled_speeds(params: ModalParameters) -> tuple[float, float]:
    """Whirl frequencies with the gyroscopic term removed (``omega_nF-0``, ``omega_nF+0``)."""
    return _root_pair(params.omega_s2, params.omega_b2, params.Pi, params.Psi)


# --------------------------------------------------------------------------
# Galerkin oracle


def _galerkin_matrices(geom, section, mat, support, n):
    """Mass, gyroscopic and stiffness matrices on (q, u_b, theta_b)."""
    l = geom.l
    k = n * math.pi / l
    rho, E = mat.rho, mat.E
    S, Iy, Ix = section.S, section.I_y, section.I_x
    nodes, weights = np.polynomial.legendre.leggauss(max(64, 16 * n))
    xs = 0.5 * l * (nodes + 1.0)
    quad = lambda f: 0.5 * l * float(np.dot(weights, f(xs)))  # noqa: E731
    phi = lambda x: np.sin(k * x)  # noqa: E731
    phi2 = lambda x: -k * k * np.sin(k * x)  # noqa: E731
    phi4 = lambda x: k**4 * np.sin(k * x)  # noqa: E731
    ss = quad(lambda x: phi(x) ** 2)
    s1 = quad(phi)
    sx = quad(lambda x: (x - l / 2.0) * phi(x))
    s2 = quad(lambda x: phi2(x) * phi(x))
    s4 = quad(lambda x: phi4(x) * phi(x))
    rot = Iy * (1.0 + E / (mat.kappa * mat.G))
    M = np.zeros((3, 3))
    G = np.zeros((3, 3))
    K = np.zeros((3, 3))
    M[0, 0] = rho * S * ss - rho * rot * s2
    M[0, 1] = rho * S * s1
    M[0, 2] = rho * S * sx
    G[0, 0] = -rho * Ix * s2
    K[0, 0] = E * Iy * s4
    # support equations, written so that the coupling blocks are symmetric
    M[1, 0] = rho * S * s1
    M[1, 1] = rho * S * l + 2.0 * support.m_b
    K[1, 1] = 2.0 * support.k_e
    M[2, 0] = rho * S * sx
    M[2, 2] = rho * S * quad(lambda x: (x - l / 2.0) ** 2) + 2.0 * support.m_b * l * l / 4.0
    K[2, 2] = 2.0 * support.k_e * l * l / 4.0
    return M, G, K


def eigen_oracle(
    geom: ShaftGeometry,
    section: SectionProperties,
    mat: HomogenizedShaftMaterial,
    support: SupportProperties,
    n: int,
) -> list[float]:
    """Signed synchronous whirl speeds from a numerically integrated Galerkin model.

    One sine mode plus the two rigid support coordinates are retained. The
    rigid coordinate that does not couple with mode ``n`` yields a pure
    support root, which is discarded. Returns four speeds sorted ascending.
    """
    if support.rigid:
        raise ValueError("the oracle needs finite support stiffness")
    M, G, K = _galerkin_matrices(geom, section, mat, support, n)
    out: list[float] = []
    for sign in (+1.0, -1.0):
        w2, vecs = linalg.eig(K, M - sign * G)
        for j in range(3):
            v = vecs[:, j]
            if abs(v[0]) < 1e-9 * np.max(np.abs(v)):
                continue
            val = w2[j].real
            if val > 0:
                out.append(sign * math.sqrt(val))
    return sorted(out)


# --------------------------------------------------------------------------
# hysteretic instability


@dataclass(frozen=True)
class BranchDiagnostic:
    n: int
    branch: int  # -1 for the lower, +1 for the upper forward branch
    omega0: float
    criterion: float
    unstable: bool


@dataclass(frozen=True)
class StabilityResult:
    stable_at_all_speeds: bool
    omega_th: float | None
    branches: tuple[BranchDiagnostic, ...] = field(default=())


def stability_threshold(
    params: Sequence[ModalParameters],
    eta_i: float,
    eta_e: float,
) -> StabilityResult:
    """Lowest speed at which rotating hysteretic damping destabilizes a forward branch.

    Each entry of ``params`` is one harmonic. A branch is unstable when the
    external damping work at its uncoupled whirl frequency is smaller than
    the rotating damping work; its threshold is then that frequency.
    """
    if eta_i < 0 or eta_e < 0:
        raise ValueError("loss factors must be non-negative")
    diags: list[BranchDiagnostic] = []
    for p in params:
        lo, hi = uncoupled_speeds(p)
        for branch, w in ((-1, lo), (+1, hi)):
            if math.isinf(w):
                continue
            w2 = w * w
            if math.isinf(p.k_e):
                # rigid supports: no external damping, the bracket tends to -inf*branch
                crit = -math.inf if eta_i > 0 else 0.0
            else:
                crit = branch * (eta_e * p.k_e * p.Phi * (p.Pi * w2 - p.omega_s2) - eta_i * p.k_s * (w2 - p.omega_b2))
            diags.append(BranchDiagnostic(p.n, branch, w, crit, crit < 0))
    unstable = [d.omega0 for d in diags if d.unstable]
    if not unstable:
        return StabilityResult(True, None, tuple(diags))
    return StabilityResult(False, min(unstable), tuple(diags))


def _reduced_model(p: ModalParameters):
    # symmetric two-dof form: modal bending coordinate and the coupled rigid coordinate
    cpl = 2.0 * p.m_s / (p.n * math.pi)
    m_b_eff = p.m_s / p.Phi
    M = np.array([[p.m_s * p.Pi / 2.0, cpl], [cpl, 2.0 * m_b_eff]])
    return M, p.k_s / 2.0, 2.0 * p.k_e


def damped_whirl(p: ModalParameters, eta_i: float, eta_e: float, spin: float) -> list[complex]:
    """Complex forward whirl frequencies at ``spin`` with hysteretic damping.

    Rotating damping acts with the sign of ``omega - spin``. Each returned
    frequency is self-consistent with the sign it was computed with. A
    negative imaginary part means growth (``exp(i omega t)`` convention).
    """
    M, ks, ke = _reduced_model(p)
    out: list[complex] = []
    for sig in (+1.0, -1.0):
        K = np.diag([ks * (1.0 + 1j * eta_i * sig), ke * (1.0 + 1j * eta_e)])
        mu = linalg.eigvals(K, M)
        for m in mu:
            w = complex(np.sqrt(m))
            if w.real < 0:
                w = -w
            if (w.real - spin) * sig > 0 or (w.real == spin and sig > 0):
                out.append(w)
    return sorted(out, key=lambda z: z.real)


def damped_threshold_sweep(
    params: Sequence[ModalParameters],
    eta_i: float,
    eta_e: float,
    spins: np.ndarray,
) -> float | None:
    """First spin speed on ``spins`` at which some forward whirl mode grows."""
    for spin in spins:
        for p in params:
            if any(w.imag < 0 for w in damped_whirl(p, eta_i, eta_e, float(spin))):
                return float(spin)
    return None
