"""Torsional buckling of long laminated tubes.

Two estimates are provided. ``buckling_torque`` searches the shell
determinant over circumferential wave count ``h`` and axial wavenumber ``p``.
``hayashi_torque`` is the closed-form orthotropic estimate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _buckling_kernels as kern
from .materials import LaminateStiffness
from .shaft import ShaftGeometry

__all__ = [
    "BucklingMode",
    "BucklingResult",
    "BucklingSearch",
    "BucklingSearchError",
    "stiffness_matrix",
    "stiffness_derivative",
    "hayashi_torque",
    "flugge_seed",
    "buckling_torque",
    "dense_scan_torque",
    "HAYASHI_SHORT_C",
]

# Short-tube Hayashi constant, fitted to the tubes of the failure-torque table
HAYASHI_SHORT_C = 24.39


class BucklingSearchError(RuntimeError):
    """No real buckling root found on the search grid."""


@dataclass(frozen=True)
class BucklingMode:
    """Buckled shape at a root of det K.

    ``lam`` is signed (its sign fixes the helix handedness), ``p`` is its
    positive magnitude in axial half-waves and ``U`` holds the (u, v, w)
    amplitudes normalised to unit length.
    """

    h: int
    p: float
    lam: float
    T: float
    U: np.ndarray = field(repr=False)


@dataclass(frozen=True)
class BucklingResult:
    T_buck_pos: float
    T_buck_neg: float
    mode_pos: BucklingMode
    mode_neg: BucklingMode

    @property
    def T_min(self) -> float:
        """Smallest magnitude over both directions."""
        return min(self.T_buck_pos, -self.T_buck_neg)


@dataclass(frozen=True)
class BucklingSearch:
    """Search settings.

    ``h_range`` defaults to ``(2,)``: ``h = 1`` produces spurious low roots
    of this determinant for long tubes (see README).
    """

    h_range: tuple[int, ...] = (2,)
    n_grid: int = 96
    span: float = 8.0
    rel_tol: float = 1e-4
    backend: str | None = None


def stiffness_matrix(lam: LaminateStiffness, r: float, h: float, lam_: float, T: float) -> np.ndarray:
    """Shell stiffness matrix K (3x3) for mode ``(h, lam_)`` under torque ``T``."""
    if r <= 0:
        raise ValueError("r must be positive")
    K = np.empty((3, 3))
    kern.kmatrix_r2(np.ascontiguousarray(lam.packed()), float(r), float(h), float(lam_), float(T), K)
    return K / (r * r)


def stiffness_derivative(r: float, h: float, lam_: float) -> np.ndarray:
    """dK/dT, which is independent of the laminate."""
    c = 1.0 / (math.pi * r * r)
    return c * np.array([[h * lam_, 0.0, 0.0], [0.0, h * lam_, lam_], [0.0, lam_, h * lam_]])


def hayashi_torque(lam: LaminateStiffness, r: float, l: float | None = None) -> float:
    """Hayashi buckling torque (N m).

    Without ``l`` the long-tube form ``11 sqrt(r) A*^(1/4) D22^(3/4)`` is
    returned, where ``A* = A11 - A12^2/A22``. With ``l`` the short-tube form
    ``C r^(5/4) l^(-1/2) A*^(3/8) D22^(5/8)`` is evaluated too and the larger
    of the two is returned; the short form governs for stubby tubes.
    """
    A, D = lam.A, lam.D
    a_star = A[0, 0] - A[0, 1] ** 2 / A[1, 1]
    d22 = D[1, 1]
    if a_star <= 0 or d22 <= 0:
        raise ValueError("laminate has non-positive hoop/axial stiffness")
    long_form = 11.0 * math.sqrt(r) * a_star**0.25 * d22**0.75
    if l is None:
        return long_form
    short_form = HAYASHI_SHORT_C * r**1.25 / math.sqrt(l) * a_star**0.375 * d22**0.625
    return max(long_form, short_form)


def flugge_seed(geom: ShaftGeometry) -> float:
    """Starting guess for the axial half-wave count ``p``."""
    r, t = geom.r_m, geom.t_s
    return geom.l * (48.0 * t * t / (12.0 * r * r)) ** 0.25 / (math.pi * r)


def _null_vector(lam: LaminateStiffness, r: float, h: int, lam_: float, T: float) -> np.ndarray:
    _, _, vt = np.linalg.svd(stiffness_matrix(lam, r, h, lam_, T))
    v = vt[-1]
    return v / np.linalg.norm(v)


def _golden_min(f, a: float, b: float, rel_tol: float):
    inv = (math.sqrt(5.0) - 1.0) / 2.0
    c = b - inv * (b - a)
    d = a + inv * (b - a)
    fc, fd = f(c), f(d)
    while (b - a) > rel_tol * max(abs(a), abs(b)):
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - inv * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + inv * (b - a)
            fd = f(d)
    return (c, fc) if fc <= fd else (d, fd)


def _search_direction(lam, geom, sign, cfg, tscale):
    P = lam.packed()
    r, l = geom.r_m, geom.l
    p0 = flugge_seed(geom)
    ps = np.geomspace(p0 / cfg.span, p0 * cfg.span, cfg.n_grid)
    best = (math.inf, None, None)
    for h in cfg.h_range:
        for lsign in (1.0, -1.0):
            k = lsign * math.pi * r / l
            roots = kern.root_scan(P, r, h, ps * k, tscale, sign, cfg.backend)
            i = int(np.argmin(roots))
            if not math.isfinite(roots[i]):
                continue
            lo, hi = ps[max(i - 1, 0)], ps[min(i + 1, len(ps) - 1)]

            def f(p, h=h, k=k):
                return float(kern.root_scan(P, r, h, np.array([p * k]), tscale, sign, cfg.backend)[0])

            p_opt, t_opt = _golden_min(f, lo, hi, cfg.rel_tol)
            if t_opt > roots[i]:
                p_opt, t_opt = ps[i], float(roots[i])
            # ties go to the smaller p
            if t_opt < best[0] or (t_opt == best[0] and best[1] is not None and p_opt < best[1][1]):
                best = (t_opt, (h, p_opt), lsign)
    if best[1] is None:
        raise BucklingSearchError(
            f"no real root of sign {sign:+d} for h in {cfg.h_range}, p in "
            f"[{ps[0]:.3g}, {ps[-1]:.3g}] (torque scale {tscale:.4g} N m)"
        )
    T = sign * best[0]
    h, p = best[1]
    lam_ = best[2] * p * math.pi * r / l
    return BucklingMode(h=h, p=p, lam=lam_, T=T, U=_null_vector(lam, r, h, lam_, T))


def buckling_torque(
    lam: LaminateStiffness,
    geom: ShaftGeometry,
    cfg: BucklingSearch | None = None,
) -> BucklingResult:
    """Smallest buckling torques of both signs for a long tube.

    For each ``h`` and each helix handedness, det K is reduced to a cubic in
    ``T`` on a log grid of ``p`` around ``flugge_seed``; the best grid point
    is refined by golden-section search.
    """
    cfg = cfg or BucklingSearch()
    tscale = hayashi_torque(lam, geom.r_m)
    pos = _search_direction(lam, geom, +1, cfg, tscale)
    neg = _search_direction(lam, geom, -1, cfg, tscale)
    return BucklingResult(T_buck_pos=pos.T, T_buck_neg=neg.T, mode_pos=pos, mode_neg=neg)


def dense_scan_torque(
    lam: LaminateStiffness,
    geom: ShaftGeometry,
    h_values=range(2, 9),
    n_p: int = 2000,
    p_span: float = 30.0,
    n_T: int = 160,
    T_max_factor: float = 2.5,
) -> tuple[float, float]:
    """Brute-force reference for ``buckling_torque``; returns ``(T_pos, T_neg)``.

    For every ``p`` of a dense log grid, ``T`` is walked outward from zero in
    both directions on a uniform grid reaching ``T_max_factor`` times the
    Hayashi torque. The first sign change of det K on each side is bisected.
    No cubic structure and no seeding beyond the ``p`` span are used.
    """
    P = lam.packed()
    r, l = geom.r_m, geom.l
    p0 = flugge_seed(geom)
    ps = np.geomspace(p0 / p_span, p0 * p_span, n_p)
    Ts = np.linspace(0.0, T_max_factor * hayashi_torque(lam, r), n_T + 1)
    best = {1: math.inf, -1: math.inf}
    for h in h_values:
        for lsign in (1.0, -1.0):
            lams = lsign * ps * math.pi * r / l
            for sign in (1, -1):
                T = sign * Ts
                d = kern.det_k_np(P, r, float(h), lams[None, :], T[:, None])
                change = np.signbit(d[1:]) != np.signbit(d[:-1])
                has = change.any(axis=0)
                if not has.any():
                    continue
                cols = np.nonzero(has)[0]
                first = np.argmax(change, axis=0)[cols]
                a, b, la = T[first], T[first + 1], lams[cols]
                fa = kern.det_k_np(P, r, float(h), la, a)
                for _ in range(50):
                    m = 0.5 * (a + b)
                    fm = kern.det_k_np(P, r, float(h), la, m)
                    left = np.signbit(fm) != np.signbit(fa)
                    b = np.where(left, m, b)
                    a = np.where(left, a, m)
                    fa = np.where(left, fa, fm)
                best[sign] = min(best[sign], float(np.min(np.abs(0.5 * (a + b)))))
    if not (math.isfinite(best[1]) and math.isfinite(best[-1])):
        raise BucklingSearchError("dense scan found no sign change")
    return best[1], -best[-1]
