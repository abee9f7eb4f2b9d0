"""Compare the numba and scipy shortest-path backends.

    python3 benchmarks/bench_dijkstra.py [--T 8] [--k 8] [--repeat 5]

Also times one full ``phi_direction`` call under the active backend
(``ISINGHOM_DISABLE_NUMBA=1`` selects the fallback).
"""

import argparse
import time

import numpy as np

from isinghom import _accel
from isinghom.homogenize import dual_weights, phi_direction, search_window
from isinghom.kernels import grid_dijkstra_numba, grid_dijkstra_scipy
from isinghom.lattice import random_mixture


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--T", type=int, default=8)
    ap.add_argument("--k", type=int, default=8)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)

    field = random_mixture(args.T, 0.5, seed=1)
    z = (1, 2)
    win = search_window(field, z, args.k)
    wh, wv = dual_weights(field, win)
    src = win.index(0, 0)
    targets = np.array([win.index(j * args.T * z[0], j * args.T * z[1]) for j in range(1, args.k + 1)])
    print(f"window {win.width}x{win.height} = {win.nodes} nodes, backend="
          f"{'numba' if _accel.USE_NUMBA else 'scipy'}")

    t_s, d_s = best_of(lambda: grid_dijkstra_scipy(wh, wv, src, targets), args.repeat)
    print(f"scipy.csgraph   {t_s * 1e3:9.2f} ms")
    if _accel.HAVE_NUMBA:
        grid_dijkstra_numba(wh, wv, src, targets)  # compile / load cache
        t_n, d_n = best_of(lambda: grid_dijkstra_numba(wh, wv, src, targets), args.repeat)
        print(f"numba heap      {t_n * 1e3:9.2f} ms  (x{t_s / t_n:.1f})  equal={np.array_equal(d_s, d_n)}")

    t_phi, est = best_of(lambda: phi_direction(field, z, args.k), 1)
    print(f"phi_direction   {t_phi * 1e3:9.2f} ms  value={est.value:.6f} k={est.k_used}")


if __name__ == "__main__":
    main()
