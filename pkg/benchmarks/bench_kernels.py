"""Compare the numba and numpy buckling kernels.

Run ``python benchmarks/bench_kernels.py``. With ``DRIVESHAFT_NO_NUMBA=1``
only the numpy rows are produced.
"""

from __future__ import annotations

import argparse
import timeit

import numpy as np

from driveshaft import _buckling_kernels as kern
from driveshaft._accel import use_numba
from driveshaft.buckling import BucklingSearch, buckling_torque, flugge_seed, hayashi_torque
from driveshaft.fixtures import OFFAXIS_BE, UNSYM_CFRP
from driveshaft.materials import StackingSequence, build_abd
from driveshaft.shaft import ShaftGeometry


def _case(c):
    seq = StackingSequence.from_angles(c.angles, c.material)
    return build_abd(seq), ShaftGeometry(c.r_m, c.l, seq.thickness)


def _best_of(fn, repeat: int, number: int) -> float:
    return min(timeit.repeat(fn, repeat=repeat, number=number)) / number


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--grid", type=int, default=96)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)

    backends = ["numpy"] + (["numba"] if use_numba() else [])
    lam, g = _case(OFFAXIS_BE[3])
    P = lam.packed()
    tscale = hayashi_torque(lam, g.r_m)
    p0 = flugge_seed(g)
    lams = np.geomspace(p0 / 30, p0 * 30, args.grid) * np.pi * g.r_m / g.l
    for b in backends:  # compile and warm caches outside the timing
        kern.root_scan(P, g.r_m, 2.0, lams, tscale, 1, b)
        buckling_torque(lam, g, BucklingSearch(backend=b))

    print(f"numba active: {use_numba()}")
    print(f"{'kernel':<34}{'backend':<8}{'time':>12}")
    rows = {}
    for b in backends:
        t = _best_of(lambda: kern.root_scan(P, g.r_m, 2.0, lams, tscale, 1, b), args.repeat, 50)
        rows[("root_scan", b)] = t
        print(f"{'root_scan (' + str(args.grid) + ' points)':<34}{b:<8}{t * 1e6:>9.1f} us")
    cases = [_case(c) for c in OFFAXIS_BE + UNSYM_CFRP]
    for b in backends:
        cfg = BucklingSearch(backend=b)
        t = _best_of(lambda: [buckling_torque(l_, g_, cfg) for l_, g_ in cases], args.repeat, 1) / len(cases)
        rows[("buckling_torque", b)] = t
        print(f"{'buckling_torque (per laminate)':<34}{b:<8}{t * 1e3:>9.2f} ms")
    if len(backends) == 2:
        for k in ("root_scan", "buckling_torque"):
            print(f"speed-up {k}: {rows[(k, 'numpy')] / rows[(k, 'numba')]:.1f}x")


if __name__ == "__main__":
    main()
