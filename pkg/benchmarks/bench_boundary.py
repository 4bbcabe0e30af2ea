"""Boundary counting over every twist vector: numba kernel vs numpy pointer doubling.

    python3 benchmarks/bench_boundary.py [--sizes 8 12 16 18] [--repeat 3]

Size k is the prism over a k-gon (cubic, 3k edges) with its planar rotation;
all 2**(3k) twist vectors are counted.  The
first numba call is timed separately because it includes compilation or a
cache load.
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from cutlocus import _accel
from cutlocus.multigraph import Edge, MultiGraph
from cutlocus.ribbon import planar_rotation, sigma_of


def prism(k: int) -> MultiGraph:
    vs = [f"o{i}" for i in range(k)] + [f"i{i}" for i in range(k)]
    es = []
    for i in range(k):
        j = (i + 1) % k
        es += [Edge(f"o{i}", f"o{i}", f"o{j}"), Edge(f"i{i}", f"i{i}", f"i{j}"),
               Edge(f"s{i}", f"o{i}", f"i{i}")]
    return MultiGraph(vs, es, name=f"prism{k}")


def best_of(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[3, 4, 5, 6])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    kernel = _accel.numba_kernel()
    print(f"{'graph':>8} {'m':>3} {'vectors':>9} {'numpy s':>9} {'numba s':>9} {'first':>7} {'speedup':>8}")
    for k in args.sizes:
        g = prism(k)
        sigma = sigma_of(g, planar_rotation(g))
        masks = np.arange(1 << g.m, dtype=np.int64)
        ref = _accel.count_boundaries(sigma, masks, backend="numpy")
        t_np = best_of(lambda: _accel.count_boundaries(sigma, masks, backend="numpy"), args.repeat)
        if kernel is None:
            print(f"{g.name:>8} {g.m:>3} {len(masks):>9} {t_np:>9.4f} {'n/a':>9}")
            continue
        t0 = time.perf_counter()
        got = _accel.count_boundaries(sigma, masks, backend="numba")
        first = time.perf_counter() - t0
        assert (got == ref).all(), "backends disagree"
        t_nb = best_of(lambda: _accel.count_boundaries(sigma, masks, backend="numba"), args.repeat)
        print(f"{g.name:>8} {g.m:>3} {len(masks):>9} {t_np:>9.4f} {t_nb:>9.4f} {first:>7.2f} {t_np / t_nb:>7.1f}x")


if __name__ == "__main__":
    main()
