"""Benchmark the compiled t-SNE kernels against the numpy fallback.

Usage: python3 benchmarks/bench_tsne.py [--sizes 100,300,600] [--iters 250]

Times the three kernel entry points (pairwise distances, perplexity
calibration, one KL/gradient evaluation) and a short full run, per kernel.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

import podium.tsne as tsne_mod
from podium.tsne import TsneParams, get_kernels, tsne


def time_call(fn, *args, repeat=3):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def bench_kernels(n: int, d: int, iters: int):
    rng = np.random.default_rng(0)
    x = np.ascontiguousarray(rng.normal(0, 1, (n, d)))
    rows = {}
    for name in ("cython", "numpy"):
        try:
            kern = get_kernels(name)
        except (ImportError, ValueError):
            continue
        dists = kern.pairwise_sq_dists(x)
        p_cond, _ = kern.conditional_affinities(dists, np.log2(10.0))
        p = (p_cond + p_cond.T) / (2 * n)
        p = np.ascontiguousarray(np.maximum(p, 1e-12))
        np.fill_diagonal(p, 0.0)
        y = np.ascontiguousarray(rng.normal(0, 1e-4, (n, 2)))

        timings = {
            "dists": time_call(kern.pairwise_sq_dists, x),
            "calibrate": time_call(kern.conditional_affinities, dists, np.log2(10.0)),
            "grad": time_call(kern.kl_and_gradient, p, p, y, repeat=5),
        }

        saved = tsne_mod._kernels
        tsne_mod._kernels = kern
        try:
            t0 = time.perf_counter()
            tsne(x, TsneParams(iterations=iters, seed=0))
            timings["full"] = time.perf_counter() - t0
        finally:
            tsne_mod._kernels = saved
        rows[name] = timings
    return rows


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--sizes", default="100,300,600")
    parser.add_argument("--dims", type=int, default=5)
    parser.add_argument("--iters", type=int, default=250)
    args = parser.parse_args()

    sizes = [int(s) for s in args.sizes.split(",")]
    print(f"{'n':>6} {'kernel':>8} {'dists':>10} {'calibrate':>10} {'grad':>10} {'full':>10}")
    for n in sizes:
        rows = bench_kernels(n, args.dims, args.iters)
        for name, t in rows.items():
            print(f"{n:>6} {name:>8} {t['dists'] * 1e3:>9.2f}ms {t['calibrate'] * 1e3:>9.2f}ms "
                  f"{t['grad'] * 1e3:>9.2f}ms {t['full']:>9.2f}s")
        if {"cython", "numpy"} <= rows.keys():
            speedup = rows["numpy"]["full"] / rows["cython"]["full"]
            print(f"{'':>6} full-run speedup (numpy/cython): {speedup:.2f}x")


if __name__ == "__main__":
    main()
