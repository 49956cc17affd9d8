"""Benchmark the numba kernels against their pure-numpy fallbacks.

Times the three hot paths behind the certificate engine: torus-grid
evaluation of kernel combinations, the IRLS inner loop of the primal upper
bound, and the coordinate pattern search used by refutation.  Run with

    python3 benchmarks/bench_backends.py [--repeats 5]

The numba numbers exclude JIT compilation (one warmup call per kernel).
"""

import argparse
import time

import numpy as np

from polylift import _accel


def _combine_inputs(rng):
    npts, dim, N = 6, 2, 256
    coeffs = rng.standard_normal(npts) + 1j * rng.standard_normal(npts)
    axis = np.exp(2j * np.pi * np.arange(N) / N)
    points = rng.uniform(-0.4, 0.4, (npts, dim)) + 1j * rng.uniform(-0.4, 0.4, (npts, dim))
    table = np.empty((npts, dim, N), dtype=np.complex128)
    for t in range(npts):
        for a in range(dim):
            table[t, a] = 1.0 / (1.0 - axis * np.conj(points[t, a]))
    return coeffs, table, N


def _irls_inputs(rng):
    M, J = 9216, 60
    A = rng.standard_normal((M, J)) + 1j * rng.standard_normal((M, J))
    g = rng.standard_normal(M) + 1j * rng.standard_normal(M)
    return A, g, 40, 1e-8, 1e-10


def _pattern_inputs(rng):
    M, J = 9216, 30
    A = rng.standard_normal((M, J)) + 1j * rng.standard_normal((M, J))
    v = rng.standard_normal(J) + 1j * rng.standard_normal(J)
    x0 = rng.standard_normal(J) + 1j * rng.standard_normal(J)
    deltas = np.array(
        [s * d for s in (1.0, 0.3, 0.1, 0.03, 0.01) for d in (1, -1, 1j, -1j)],
        dtype=np.complex128,
    )
    return A, v, x0, deltas, 3


BENCHES = [
    ("combine_product_table", _accel.combine_product_table, _combine_inputs),
    ("irls_minimize", _accel.irls_minimize, _irls_inputs),
    ("pattern_search", _accel.pattern_search, _pattern_inputs),
]


def run(repeats: int) -> None:
    rng = np.random.default_rng(7)
    inputs = {name: make(rng) for name, _, make in BENCHES}
    rows = []
    for name, fn, _ in BENCHES:
        timings = {}
        for backend in ("numpy", "numba"):
            _accel.select_backend(backend)
            if _accel.active_backend() != backend:
                timings[backend] = None  # numba unavailable
                continue
            fn(*inputs[name])  # warmup / JIT
            best = min(
                _timed(fn, inputs[name]) for _ in range(repeats)
            )
            timings[backend] = best
        rows.append((name, timings["numpy"], timings["numba"]))

    print(f"{'kernel':<24}{'numpy (ms)':>12}{'numba (ms)':>12}{'speedup':>9}")
    for name, t_np, t_nb in rows:
        if t_nb is None:
            print(f"{name:<24}{t_np * 1e3:>12.2f}{'n/a':>12}{'n/a':>9}")
        else:
            print(f"{name:<24}{t_np * 1e3:>12.2f}{t_nb * 1e3:>12.2f}"
                  f"{t_np / t_nb:>8.1f}x")


def _timed(fn, args) -> float:
    t0 = time.perf_counter()
    fn(*args)
    return time.perf_counter() - t0


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeats", type=int, default=5)
    run(ap.parse_args().repeats)
