"""Shared fixtures.

The session-scoped warmup compiles the numba kernels up front so that tests
with wall-clock assertions measure the algorithms, not JIT compilation.
"""

import numpy as np
import pytest

from polylift import _accel


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    rng = np.random.default_rng(0)
    coeffs = rng.standard_normal(3) + 1j * rng.standard_normal(3)
    table = rng.standard_normal((3, 2, 4)) + 1j * rng.standard_normal((3, 2, 4))
    A = rng.standard_normal((16, 3)) + 1j * rng.standard_normal((16, 3))
    g = rng.standard_normal(16) + 1j * rng.standard_normal(16)
    v = rng.standard_normal(3) + 1j * rng.standard_normal(3)
    x0 = np.ones(3, dtype=np.complex128)
    deltas = np.array([1.0, -1.0, 1j, -1j], dtype=np.complex128)
    previous = _accel.active_backend()
    for backend in ("numpy", "numba"):
        _accel.select_backend(backend)
        _accel.combine_product_table(coeffs, table, 4)
        _accel.irls_minimize(A, g, 3, 1e-8)
        _accel.pattern_search(A, v, x0, deltas, 1)
    _accel.select_backend(previous)
    yield
