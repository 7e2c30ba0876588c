#!/usr/bin/env python3
"""Grid-refinement study of the t = 0 round trip: scattering -> RH solve ->
reconstruction should reproduce the initial data with error falling at the
marching order."""

import argparse
import time

import numpy as np

import ndnls_ist as ni


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--amplitude", type=float, default=0.095)
    ap.add_argument("--levels", type=int, default=3, help="number of doublings from N=1024")
    args = ap.parse_args()

    print(f"round-trip convergence, gaussian amplitude {args.amplitude}")
    print(f"{'N=M':>6} {'rel L2 error':>14} {'ratio':>7} {'seconds':>8}")
    prev = None
    for level in range(args.levels):
        n = 1024 * 2**level
        grid, sgrid = ni.build_grids(n, 12.0, n, 24.0)
        p = ni.Potential.from_samples(grid, ni.model.gaussian_samples(grid, args.amplitude))
        t0 = time.time()
        out = ni.ist_solve(p, sgrid, 0.0)
        err = float(np.linalg.norm(out.u - p.u.values[::8])
                    / np.linalg.norm(p.u.values[::8]))
        ratio = "" if prev is None else f"{prev / err:7.2f}"
        print(f"{n:>6} {err:>14.3e} {ratio:>7} {time.time() - t0:>8.1f}")
        prev = err


if __name__ == "__main__":
    main()
