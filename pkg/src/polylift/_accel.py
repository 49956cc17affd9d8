"""Hot numeric kernels: numba-jitted with a pure-numpy fallback.

Three loops dominate the package's runtime: combining per-axis factor tables
into values on a tensor grid (every trig-poly / kernel evaluation), the
iteratively reweighted least-squares loop of the primal L1 minimization, and
the coordinate-descent ratio search of the contractivity refuter.  Each one
exists here twice with the same signature: a numba @njit version and a plain
numpy version.

Backend selection: the environment variable POLYLIFT_BACKEND ("numba" or
"numpy") is read at import time; default is numba when it imports, numpy
otherwise.  select_backend() switches at runtime (used by the benchmark and by
tests that compare the two paths).  Outputs of the two backends agree to
floating rounding, not bitwise.
"""

from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba installed
    _HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(f):
            return f

        return wrap(args[0]) if args and callable(args[0]) else wrap


# ---------------------------------------------------------------- numba path


@njit(cache=True)
def _combine_product_table_nb(coeffs, table, npts):
    # table[t, a, j] = factor of term t on axis a at node j; the value at the
    # flat grid point p (C order, axis 0 most significant) is
    # sum_t coeffs[t] * prod_a table[t, a, digit_a(p)].
    nterms, naxes, nnodes = table.shape
    total = npts ** naxes
    out = np.zeros(total, dtype=np.complex128)
    digits = np.zeros(naxes, dtype=np.int64)
    for p in range(total):
        acc = 0.0 + 0.0j
        for t in range(nterms):
            term = coeffs[t]
            for a in range(naxes):
                term = term * table[t, a, digits[a]]
            acc += term
        out[p] = acc
        # increment mixed-radix counter, last axis fastest
        for a in range(naxes - 1, -1, -1):
            digits[a] += 1
            if digits[a] < nnodes:
                break
            digits[a] = 0
    return out


@njit(cache=True)
def _irls_minimize_nb(A, g, iters, eps, ridge):
    m, k = A.shape
    x = np.zeros(k, dtype=np.complex128)
    best_x = x.copy()
    r = g.copy()
    best = 0.0
    for i in range(m):
        best += abs(r[i])
    best /= m
    stall = 0
    for _ in range(iters):
        w = np.empty(m)
        for i in range(m):
            a = abs(r[i])
            w[i] = 1.0 / (a if a > eps else eps)
        Aw = A * w.reshape(-1, 1)
        B = np.conj(A.T) @ Aw
        for j in range(k):
            B[j, j] += ridge
        rhs = -(np.conj(A.T) @ (w * g))
        x = np.linalg.solve(B, rhs)
        r = g + A @ x
        obj = 0.0
        for i in range(m):
            obj += abs(r[i])
        obj /= m
        if obj < best - 1e-12:
            best = obj
            best_x = x.copy()
            stall = 0
        else:
            stall += 1
            if stall >= 6:
                break
    return best, best_x


@njit(cache=True)
def _pattern_search_nb(A, v, x0, deltas, passes):
    m, k = A.shape
    x = x0.copy()
    cur = A @ x
    num = 0.0 + 0.0j
    for j in range(k):
        num += v[j] * x[j]
    den = 0.0
    for i in range(m):
        den += abs(cur[i])
    den /= m
    best = abs(num) / den if den > 1e-300 else 0.0
    nd = deltas.shape[0]
    for _ in range(passes):
        improved = False
        for j in range(k):
            col = A[:, j]
            bestd = 0.0 + 0.0j
            bestr = best
            for q in range(nd):
                d = deltas[q]
                cnum = abs(num + v[j] * d)
                cden = 0.0
                for i in range(m):
                    cden += abs(cur[i] + d * col[i])
                cden /= m
                r = cnum / cden if cden > 1e-300 else 0.0
                if r > bestr + 1e-15:
                    bestr = r
                    bestd = d
            if bestd != 0.0:
                x[j] += bestd
                num += v[j] * bestd
                for i in range(m):
                    cur[i] += bestd * col[i]
                best = bestr
                improved = True
        if not improved:
            break
    return best, x


# ---------------------------------------------------------------- numpy path


def _combine_product_table_np(coeffs, table, npts):
    nterms, naxes, nnodes = table.shape
    out = np.zeros((npts,) * naxes, dtype=np.complex128)
    for t in range(nterms):
        block = coeffs[t] * table[t, 0]
        for a in range(1, naxes):
            block = np.multiply.outer(block, table[t, a])
        out += block
    return out.ravel()


def _irls_minimize_np(A, g, iters, eps, ridge):
    m, k = A.shape
    x = np.zeros(k, dtype=np.complex128)
    best_x = x.copy()
    r = g.copy()
    best = float(np.abs(r).mean())
    stall = 0
    eye = np.eye(k)
    for _ in range(iters):
        w = 1.0 / np.maximum(np.abs(r), eps)
        B = (A.conj().T * w) @ A + ridge * eye
        rhs = -(A.conj().T @ (w * g))
        x = np.linalg.solve(B, rhs)
        r = g + A @ x
        obj = float(np.abs(r).mean())
        if obj < best - 1e-12:
            best = obj
            best_x = x.copy()
            stall = 0
        else:
            stall += 1
            if stall >= 6:
                break
    return best, best_x


def _pattern_search_np(A, v, x0, deltas, passes):
    m, _ = A.shape
    x = x0.copy()
    cur = A @ x
    num = complex(np.dot(v, x))
    den = float(np.abs(cur).mean())
    best = abs(num) / den if den > 1e-300 else 0.0
    for _ in range(passes):
        improved = False
        for j in range(x.size):
            col = A[:, j]
            cands = cur[:, None] + col[:, None] * deltas[None, :]
            dens = np.abs(cands).mean(axis=0)
            nums = np.abs(num + v[j] * deltas)
            ratios = np.where(dens > 1e-300, nums / np.maximum(dens, 1e-300), 0.0)
            q = int(np.argmax(ratios))
            if ratios[q] > best + 1e-15:
                d = complex(deltas[q])
                x[j] += d
                num += v[j] * d
                cur = cur + d * col
                best = float(ratios[q])
                improved = True
        if not improved:
            break
    return best, x


# ------------------------------------------------------------- dispatch


_IMPL = {
    "numba": {
        "combine": _combine_product_table_nb,
        "irls": _irls_minimize_nb,
        "search": _pattern_search_nb,
    },
    "numpy": {
        "combine": _combine_product_table_np,
        "irls": _irls_minimize_np,
        "search": _pattern_search_np,
    },
}

_active = "numpy"


def select_backend(name: str) -> str:
    """Switch the active backend; returns the name actually selected."""
    global _active
    if name not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {name!r}")
    if name == "numba" and not _HAVE_NUMBA:
        name = "numpy"
    _active = name
    return _active


def active_backend() -> str:
    return _active


select_backend(os.environ.get("POLYLIFT_BACKEND", "numba"))


def combine_product_table(coeffs, table, npts):
    """Sum of rank-one tensor-product factors, evaluated on the flat grid.

    coeffs: (T,) complex; table: (T, n, N) complex with N = npts; returns the
    (N**n,) complex values sum_t coeffs[t] * prod_a table[t, a, .] at every
    grid point, C order.
    """
    coeffs = np.ascontiguousarray(coeffs, dtype=np.complex128)
    table = np.ascontiguousarray(table, dtype=np.complex128)
    return _IMPL[_active]["combine"](coeffs, table, npts)


def irls_minimize(A, g, iters, eps, ridge=1e-12):
    """Minimize mean|g + A x| over complex x by reweighted least squares.

    Returns (best_objective, best_x) where best_objective is the smallest mean
    absolute residual actually achieved over the iterations (an attained
    value, so always a valid upper bound for the minimum).
    """
    A = np.ascontiguousarray(A, dtype=np.complex128)
    g = np.ascontiguousarray(g, dtype=np.complex128)
    return _IMPL[_active]["irls"](A, g, int(iters), float(eps), float(ridge))


def pattern_search(A, v, x0, deltas, passes=3):
    """Greedy coordinate search maximizing |v . x| / mean|A x|.

    A holds generator values on the grid (columns), v the exact functional
    values of the generators, deltas the trial coordinate steps.  Returns
    (best_ratio, best_x).
    """
    A = np.ascontiguousarray(A, dtype=np.complex128)
    v = np.ascontiguousarray(v, dtype=np.complex128)
    x0 = np.ascontiguousarray(x0, dtype=np.complex128)
    deltas = np.ascontiguousarray(deltas, dtype=np.complex128)
    return _IMPL[_active]["search"](A, v, x0, deltas, int(passes))
