#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure NumPy fallback.

Three workloads, exact integer arithmetic in both backends:
  1. row reduction (rref) over a batch of random mod-p matrices
  2. invertible counting over a batch of square matrices
  3. the four-term exact sequence census on a real A_2 instance

Usage:
    python benchmarks/bench_kernels.py [--iters N] [--dim D] [--batch B]

The same kernels are selected at import time by HALLALG_BACKEND; here both
implementations are loaded side by side and must return identical values.
"""

from __future__ import annotations

import argparse
import statistics
import time

import numpy as np

from hallalg.backend import get_backend
from hallalg.hall_derived import _stacked_blocks
from hallalg.quiver import linear_quiver
from hallalg.reps import Heart, vertex_offsets


def _random_batch(rng, n, d, p):
    return rng.integers(0, p, size=(n, d, d), dtype=np.int64)


def _triple_args(p=2):
    heart = Heart(linear_quiver(2), p)
    x = heart.iso_class({heart.indec_names().index("X12"): 1,
                         heart.indec_names().index("S1"): 1})
    y = x
    k = heart.class_by_name("S1")
    c = heart.class_by_name("S1")
    # dimension-feasible: k - y + x - c = 0 vertexwise
    cdims = tuple(kk + xx - yy for kk, xx, yy in zip(k.dims, x.dims, y.dims))
    c = heart.classes_with_dims(cdims)[0]
    reps = [heart.rep_of(cls) for cls in (k, y, x, c)]
    return (
        _stacked_blocks(reps[0], reps[1]),
        _stacked_blocks(reps[1], reps[2]),
        _stacked_blocks(reps[2], reps[3]),
        vertex_offsets(reps[0].dims),
        vertex_offsets(reps[1].dims),
        vertex_offsets(reps[2].dims),
        vertex_offsets(reps[3].dims),
        p,
    )


def _time(fn, iters):
    times = []
    for _ in range(iters):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return statistics.median(times), out


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--iters", type=int, default=5)
    parser.add_argument("--dim", type=int, default=6)
    parser.add_argument("--batch", type=int, default=2000)
    parser.add_argument("--p", type=int, default=3)
    args = parser.parse_args()

    np_kern = get_backend("numpy")
    nb_kern = get_backend("numba")

    rng = np.random.default_rng(0)
    batch = _random_batch(rng, args.batch, args.dim, args.p)
    triple = _triple_args()

    # JIT warm-up so the numba column measures steady state
    nb_kern.rref_mod(batch[0], args.p)
    nb_kern.count_invertible(batch[:2], args.p)
    nb_kern.count_exact_triples(*triple)

    workloads = [
        (
            f"rref {args.batch}x({args.dim}x{args.dim}) mod {args.p}",
            lambda k: [k.rref_mod(m, args.p)[1].shape[0] for m in batch],
        ),
        (
            f"count_invertible {args.batch}x({args.dim}x{args.dim})",
            lambda k: k.count_invertible(batch, args.p),
        ),
        (
            "exact sequence census (A_2, dim-3 objects)",
            lambda k: k.count_exact_triples(*triple),
        ),
    ]

    print(f"{'workload':<45s} {'numpy (ms)':>12s} {'numba (ms)':>12s} {'speedup':>8s}")
    print("-" * 82)
    for label, run in workloads:
        t_np, out_np = _time(lambda: run(np_kern), args.iters)
        t_nb, out_nb = _time(lambda: run(nb_kern), args.iters)
        agree = out_np == out_nb if not isinstance(out_np, list) else out_np == out_nb
        flag = "" if agree else "  RESULTS DIFFER!"
        speedup = t_np / t_nb if t_nb > 0 else float("inf")
        print(f"{label:<45s} {t_np * 1e3:>12.2f} {t_nb * 1e3:>12.2f} "
              f"{speedup:>7.1f}x{flag}")


if __name__ == "__main__":
    main()
