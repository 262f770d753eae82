"""Hot loops of the shell-buckling search.

Two implementations of the same computation live here: scalar loops
compiled with numba, and a vectorized numpy version used when numba is
missing or disabled. Both return, for each axial wavenumber ``lam`` on a
grid, the smallest torque of the requested sign that zeroes det K.

The laminate enters as the 18 packed entries of A, B and D (see
``LaminateStiffness.packed``). K is formed multiplied through by ``r^2``,
which leaves the roots unchanged.
"""

from __future__ import annotations

import math

import numpy as np

from ._accel import njit, use_numba

__all__ = ["root_scan", "root_scan_numba", "root_scan_numpy", "det_k", "kmatrix_r2", "SAMPLE_POINTS"]

# T samples (in units of the torque scale) used to recover the cubic det(T)
SAMPLE_POINTS = np.array([-1.5, -0.5, 0.5, 1.5])
_VINV = np.linalg.inv(np.vander(SAMPLE_POINTS, 4))  # rows -> c3, c2, c1, c0


@njit(cache=True)
def kmatrix_r2(P, r, h, lam, T, K):
    """Fill ``K`` (3x3) with r^2 times the shell stiffness matrix."""
    A11, A12, A13, A22, A23, A33 = P[0], P[1], P[2], P[3], P[4], P[5]
    B11, B12, B13, B22, B23, B33 = P[6], P[7], P[8], P[9], P[10], P[11]
    D11, D12, D13, D22, D23, D33 = P[12], P[13], P[14], P[15], P[16], P[17]
    r2 = r * r
    h2 = h * h
    l2 = lam * lam
    hl = h * lam
    tp = T / math.pi
    K[0, 0] = (-A11 * l2 * r2 - 2 * A13 * hl * r2 - A33 * h2 * r2 - B11 * l2 * r + B33 * h2 * r - D33 * h2 + tp * hl)
    k12 = (-A12 * hl * r2 - A13 * l2 * r2 - A23 * h2 * r2 - A33 * hl * r2 - B12 * hl * r - 2 * B13 * l2 * r
           - B33 * hl * r - D13 * l2)
    K[0, 1] = k12
    K[1, 0] = k12 + D33 * hl / 2
    k13 = (-A12 * lam * r2 - A23 * h * r2 - B11 * l2 * lam * r - B12 * h2 * lam * r - 3 * B13 * h * l2 * r
           - B23 * h2 * h * r + B23 * h * r - 2 * B33 * h2 * lam * r - D11 * l2 * lam - D13 * h * l2
           + D23 * h2 * h - D23 * h + D33 * h2 * lam)
    K[0, 2] = k13
    K[2, 0] = k13
    K[1, 1] = (-A22 * h2 * r2 - 2 * A23 * hl * r2 - A33 * l2 * r2 - B22 * h2 * r - 4 * B23 * hl * r
               - 3 * B33 * l2 * r - 2 * D23 * hl - 2.5 * D33 * l2 + tp * hl)
    k23 = (-A22 * h * r2 - A23 * lam * r2 - B12 * h * l2 * r - B13 * l2 * lam * r - B22 * h2 * h * r
           - 3 * B23 * h2 * lam * r - B23 * lam * r - 2 * B33 * h * l2 * r - D12 * h * l2 - 2 * D13 * l2 * lam
           - 2 * D23 * h2 * lam - 3 * D33 * h * l2 + tp * lam)
    K[1, 2] = k23
    K[2, 1] = k23
    K[2, 2] = (-A22 * r2 - 3 * B12 * l2 * r - 2 * B22 * h2 * r + B22 * r - 4 * B23 * hl * r - D11 * l2 * l2
               - 2 * D12 * h2 * l2 - 4 * D13 * hl * l2 - D22 * h2 * h2 + 2 * D22 * h2 - D22
               - 4 * D23 * h2 * hl + 2 * D23 * hl - 4 * D33 * h2 * l2 + tp * hl)


@njit(cache=True)
def _det3(K):
    return (K[0, 0] * (K[1, 1] * K[2, 2] - K[1, 2] * K[2, 1])
            - K[0, 1] * (K[1, 0] * K[2, 2] - K[1, 2] * K[2, 0])
            + K[0, 2] * (K[1, 0] * K[2, 1] - K[1, 1] * K[2, 0]))


@njit(cache=True)
def det_k(P, r, h, lam, T):
    K = np.empty((3, 3))
    kmatrix_r2(P, r, h, lam, T, K)
    return _det3(K)


@njit(cache=True)
def _poly(c3, c2, c1, c0, x):
    return ((c3 * x + c2) * x + c1) * x + c0


@njit(cache=True)
def _polish(c3, c2, c1, c0, x):
    for _ in range(3):
        d = (3 * c3 * x + 2 * c2) * x + c1
        if d == 0.0:
            break
        x = x - _poly(c3, c2, c1, c0, x) / d
    return x


@njit(cache=True)
def _smallest_signed_root(c3, c2, c1, c0, sign):
    """Smallest-magnitude real root of the cubic with ``root*sign > 0`` (inf if none)."""
    best = np.inf
    scale = max(abs(c3), abs(c2), abs(c1), abs(c0))
    if scale == 0.0:
        return best
    roots = np.empty(3)
    nr = 0
    if abs(c3) < 1e-13 * scale:
        # degenerate: quadratic or linear
        if abs(c2) < 1e-13 * scale:
            if c1 != 0.0:
                roots[0] = -c0 / c1
                nr = 1
        else:
            disc = c1 * c1 - 4 * c2 * c0
            if disc >= 0:
                sq = math.sqrt(disc)
                q = -0.5 * (c1 + math.copysign(sq, c1))
                roots[0] = q / c2
                nr = 1
                if q != 0.0:
                    roots[1] = c0 / q
                    nr = 2
    else:
        a = c2 / c3
        b = c1 / c3
        c = c0 / c3
        p = b - a * a / 3.0
        q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c
        disc = q * q / 4.0 + p * p * p / 27.0
        if disc > 0:
            sq = math.sqrt(disc)
            u = -q / 2.0 + sq
            v = -q / 2.0 - sq
            y = math.copysign(abs(u) ** (1.0 / 3.0), u) + math.copysign(abs(v) ** (1.0 / 3.0), v)
            roots[0] = _polish(c3, c2, c1, c0, y - a / 3.0)
            nr = 1
        else:
            m = 2.0 * math.sqrt(max(-p / 3.0, 0.0))
            if m == 0.0:
                roots[0] = -a / 3.0
                nr = 1
            else:
                arg = 3.0 * q / (p * m)
                arg = min(1.0, max(-1.0, arg))
                th = math.acos(arg) / 3.0
                for k in range(3):
                    roots[k] = _polish(c3, c2, c1, c0, m * math.cos(th - 2.0 * math.pi * k / 3.0) - a / 3.0)
                nr = 3
    for k in range(nr):
        x = roots[k]
        if x * sign > 0 and abs(x) < best:
            best = abs(x)
    return best


@njit(cache=True)
def root_scan_numba(P, r, h, lams, tscale, sign):
    """Smallest root torque magnitude of the given sign for each ``lam`` in ``lams``."""
    n = lams.shape[0]
    out = np.empty(n)
    K = np.empty((3, 3))
    d = np.empty(4)
    samples = np.array([-1.5, -0.5, 0.5, 1.5])
    vinv = np.linalg.inv(np.vander(samples, 4))
    for i in range(n):
        lam = lams[i]
        for k in range(4):
            kmatrix_r2(P, r, h, lam, samples[k] * tscale, K)
            d[k] = _det3(K)
        c = vinv @ d
        out[i] = _smallest_signed_root(c[0], c[1], c[2], c[3], sign) * tscale
    return out


# --------------------------------------------------------------------------
# numpy fallback


def kmatrix_r2_np(P, r, h, lam, T):
    """Vectorized r^2*K over broadcastable ``lam`` and ``T``; returns shape (..., 3, 3)."""
    A11, A12, A13, A22, A23, A33, B11, B12, B13, B22, B23, B33, D11, D12, D13, D22, D23, D33 = P
    lam = np.asarray(lam, dtype=float)
    T = np.asarray(T, dtype=float)
    lam, T = np.broadcast_arrays(lam, T)
    r2, h2, l2, hl, tp = r * r, h * h, lam * lam, h * lam, T / math.pi
    K = np.empty(lam.shape + (3, 3))
    K[..., 0, 0] = (-A11 * l2 * r2 - 2 * A13 * hl * r2 - A33 * h2 * r2 - B11 * l2 * r + B33 * h2 * r - D33 * h2
                    + tp * hl)
    k12 = (-A12 * hl * r2 - A13 * l2 * r2 - A23 * h2 * r2 - A33 * hl * r2 - B12 * hl * r - 2 * B13 * l2 * r
           - B33 * hl * r - D13 * l2)
    K[..., 0, 1] = k12
    K[..., 1, 0] = k12 + D33 * hl / 2
    k13 = (-A12 * lam * r2 - A23 * h * r2 - B11 * l2 * lam * r - B12 * h2 * lam * r - 3 * B13 * h * l2 * r
           - B23 * h2 * h * r + B23 * h * r - 2 * B33 * h2 * lam * r - D11 * l2 * lam - D13 * h * l2
           + D23 * h2 * h - D23 * h + D33 * h2 * lam)
    K[..., 0, 2] = k13
    K[..., 2, 0] = k13
    K[..., 1, 1] = (-A22 * h2 * r2 - 2 * A23 * hl * r2 - A33 * l2 * r2 - B22 * h2 * r - 4 * B23 * hl * r
                    - 3 * B33 * l2 * r - 2 * D23 * hl - 2.5 * D33 * l2 + tp * hl)
    k23 = (-A22 * h * r2 - A23 * lam * r2 - B12 * h * l2 * r - B13 * l2 * lam * r - B22 * h2 * h * r
           - 3 * B23 * h2 * lam * r - B23 * lam * r - 2 * B33 * h * l2 * r - D12 * h * l2 - 2 * D13 * l2 * lam
           - 2 * D23 * h2 * lam - 3 * D33 * h * l2 + tp * lam)
    K[..., 1, 2] = k23
    K[..., 2, 1] = k23
    K[..., 2, 2] = (-A22 * r2 - 3 * B12 * l2 * r - 2 * B22 * h2 * r + B22 * r - 4 * B23 * hl * r - D11 * l2 * l2
                    - 2 * D12 * h2 * l2 - 4 * D13 * hl * l2 - D22 * h2 * h2 + 2 * D22 * h2 - D22
                    - 4 * D23 * h2 * hl + 2 * D23 * hl - 4 * D33 * h2 * l2 + tp * hl)
    return K


def det_k_np(P, r, h, lam, T):
    K = kmatrix_r2_np(P, r, h, lam, T)
    return (K[..., 0, 0] * (K[..., 1, 1] * K[..., 2, 2] - K[..., 1, 2] * K[..., 2, 1])
            - K[..., 0, 1] * (K[..., 1, 0] * K[..., 2, 2] - K[..., 1, 2] * K[..., 2, 0])
            + K[..., 0, 2] * (K[..., 1, 0] * K[..., 2, 1] - K[..., 1, 1] * K[..., 2, 0]))


def _polish_np(c, x):
    c3, c2, c1, c0 = c
    for _ in range(3):
        d = (3 * c3 * x + 2 * c2) * x + c1
        f = ((c3 * x + c2) * x + c1) * x + c0
        safe = d != 0
        x = np.where(safe, x - f / np.where(safe, d, 1.0), x)
    return x


def _smallest_signed_root_np(c, sign):
    c3, c2, c1, c0 = c
    n = c3.shape[0]
    roots = np.full((n, 3), np.nan)
    scale = np.max(np.abs(c), axis=0)
    cubic = np.abs(c3) >= 1e-13 * scale
    with np.errstate(all="ignore"):
        a = np.where(cubic, c2 / c3, 0.0)
        b = np.where(cubic, c1 / c3, 0.0)
        cc = np.where(cubic, c0 / c3, 0.0)
        p = b - a * a / 3.0
        q = 2.0 * a**3 / 27.0 - a * b / 3.0 + cc
        disc = q * q / 4.0 + p**3 / 27.0
        one = cubic & (disc > 0)
        sq = np.sqrt(np.where(one, disc, 0.0))
        y = np.cbrt(-q / 2.0 + sq) + np.cbrt(-q / 2.0 - sq)
        roots[:, 0] = np.where(one, _polish_np(c, y - a / 3.0), np.nan)
        three = cubic & ~one
        m = 2.0 * np.sqrt(np.maximum(-p / 3.0, 0.0))
        arg = np.clip(np.where(m > 0, 3.0 * q / (p * m), 0.0), -1.0, 1.0)
        th = np.arccos(arg) / 3.0
        for k in range(3):
            rk = _polish_np(c, m * np.cos(th - 2.0 * np.pi * k / 3.0) - a / 3.0)
            if k == 0:
                roots[:, 0] = np.where(three, rk, roots[:, 0])
            else:
                roots[:, k] = np.where(three & (m > 0), rk, roots[:, k])
        # degenerate leading coefficient
        quad = ~cubic & (np.abs(c2) >= 1e-13 * scale)
        qd = c1 * c1 - 4 * c2 * c0
        okq = quad & (qd >= 0)
        sqq = np.sqrt(np.where(okq, qd, 0.0))
        qq = -0.5 * (c1 + np.copysign(sqq, c1))
        roots[:, 1] = np.where(okq, qq / c2, roots[:, 1])
        roots[:, 2] = np.where(okq & (qq != 0), c0 / qq, roots[:, 2])
        lin = ~cubic & ~quad & (c1 != 0)
        roots[:, 1] = np.where(lin, -c0 / c1, roots[:, 1])
    good = np.isfinite(roots) & (roots * sign > 0)
    mags = np.where(good, np.abs(roots), np.inf)
    return mags.min(axis=1)


def root_scan_numpy(P, r, h, lams, tscale, sign):
    lams = np.asarray(lams, dtype=float)
    T = SAMPLE_POINTS[:, None] * tscale
    d = det_k_np(P, r, float(h), lams[None, :], T)  # (4, n)
    c = _VINV @ d
    return _smallest_signed_root_np(c, float(sign)) * tscale


def root_scan(P, r, h, lams, tscale, sign, backend: str | None = None):
    """Dispatch to the numba kernel when available (or when ``backend`` says so)."""
    backend = backend or ("numba" if use_numba() else "numpy")
    P = np.ascontiguousarray(P, dtype=float)
    lams = np.ascontiguousarray(lams, dtype=float)
    if backend == "numba":
        return root_scan_numba(P, float(r), float(h), lams, float(tscale), float(sign))
    if backend == "numpy":
        return root_scan_numpy(P, float(r), float(h), lams, float(tscale), float(sign))
    raise ValueError(f"unknown backend {backend!r}")
