"""Optional numba acceleration.

Set ``DRIVESHAFT_NO_NUMBA=1`` to force the pure-numpy code paths even when
numba is importable.
"""

from __future__ import annotations

import os

_DISABLED = os.environ.get("DRIVESHAFT_NO_NUMBA", "").strip().lower() not in ("", "0", "false", "no")

try:
    if _DISABLED:
        raise ImportError("numba disabled by DRIVESHAFT_NO_NUMBA")
    from numba import njit as _numba_njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    _numba_njit = None
    HAVE_NUMBA = False


def njit(*args, **kwargs):
    """``numba.njit`` when available, otherwise an identity decorator."""
    if HAVE_NUMBA:
        return _numba_njit(*args, **kwargs)
    if len(args) == 1 and callable(args[0]) and not kwargs:
        return args[0]

    def wrap(func):
        return func

    return wrap


def use_numba() -> bool:
    """Whether the compiled kernels are active for this process."""
    return HAVE_NUMBA
