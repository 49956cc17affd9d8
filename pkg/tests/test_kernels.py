"""Szego kernel values, series, Gram matrices, inner polynomials, combos."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from polylift.errors import DuplicatePoints, IllConditioned, NotAnalytic
from polylift.kernels import (
    KernelCombo,
    evaluate_combo,
    gram_matrix,
    is_inner_poly,
    szego_series,
    szego_value,
)
from polylift.tpoly import TorusGrid, TrigPoly, grid_norms, inner_l2

# eigenvalues of [[1,1],[1,4/3]]: roots of x^2 - (7/3)x + 1/3
GRAM_EIGS = ((7 - np.sqrt(37)) / 6, (7 + np.sqrt(37)) / 6)


def disc_points(n, count, seed):
    rng = np.random.default_rng(seed)
    pts = []
    while len(pts) < count:
        z = tuple(
            complex(a, b)
            for a, b in zip(rng.uniform(-0.6, 0.6, n), rng.uniform(-0.6, 0.6, n))
        )
        if all(max(abs(c - d) for c, d in zip(z, q)) > 1e-3 for q in pts):
            pts.append(z)
    return pts


# -------------------------------------------------------------- szego_value


def test_szego_value_examples():
    assert szego_value((0, 0), (0.3, -0.2j)) == 1.0
    assert abs(szego_value((0.5, 0), (0.5, 0)) - 4 / 3) < 1e-15
    assert abs(szego_value((0.5, 0.5), (0.5, 0)) - 4 / 3) < 1e-15


def test_szego_value_conjugate_symmetry():
    z, w = (0.3 + 0.1j, -0.2), (0.1, 0.4j)
    assert abs(szego_value(z, w) - np.conj(szego_value(w, z))) < 1e-15


# ------------------------------------------------------------- szego_series


def test_szego_series_examples():
    assert szego_series((0, 0), 5) == TrigPoly.constant(1.0, 2)
    s = szego_series((0.5, 0), 2)
    assert s == TrigPoly(2, {(0, 0): 1.0, (1, 0): 0.5, (2, 0): 0.25})


def test_szego_series_total_degree_truncation():
    s = szego_series((0.5, 0.5), 2)
    assert all(sum(k) <= 2 for k in s.coeffs)
    assert (1, 1) in s.coeffs  # mixed products up to the total degree included


@given(st.integers(0, 6), st.integers(0, 6))
@settings(max_examples=25)
def test_reproducing_property(k1, k2):
    f = TrigPoly.monomial((k1, k2), 0.7 - 0.3j)
    w = (0.4 + 0.2j, -0.35j)
    s = szego_series(w, k1 + k2)
    assert abs(inner_l2(f, s) - f.evaluate(w)) < 1e-12


def test_reproducing_z1_squared():
    w = (0.4 + 0.1j, 0.2)
    got = inner_l2(TrigPoly.monomial((2, 0)), szego_series(w, 3))
    assert abs(got - w[0] ** 2) < 1e-12


def test_backward_shift_identity_exact_on_dyadic_points():
    # H2 part of conj(z_i) * series(w, d) equals conj(w_i) * series(w, d-1);
    # for dyadic real coordinates every product is representable, so the two
    # computation orders agree bitwise
    w = (0.5, 0.25)
    d = 4
    for i, zbar in enumerate(((-1, 0), (0, -1))):
        shifted = TrigPoly.monomial(zbar) * szego_series(w, d)
        assert shifted.component("H2") == szego_series(w, d - 1) * np.conj(w[i])


def test_backward_shift_identity_generic():
    w = (0.37 - 0.21j, 0.14 + 0.4j)
    d = 4
    for i, zbar in enumerate(((-1, 0), (0, -1))):
        shifted = TrigPoly.monomial(zbar) * szego_series(w, d)
        lhs = shifted.component("H2")
        rhs = szego_series(w, d - 1) * np.conj(w[i])
        diff = lhs - rhs
        assert all(abs(a) < 1e-13 for a in diff.coeffs.values())


# -------------------------------------------------------------- gram_matrix


def test_gram_examples():
    assert np.allclose(gram_matrix([(0, 0)]), [[1.0]])
    G = gram_matrix([(0, 0), (0.5, 0)])
    assert np.allclose(G, [[1, 1], [1, 4 / 3]], atol=1e-15)
    assert np.allclose(sorted(np.linalg.eigvalsh(G)), GRAM_EIGS, atol=1e-12)


def test_gram_hermitian_and_positive():
    for seed in range(8):
        pts = disc_points(2, 4, seed)
        G = gram_matrix(pts)
        assert np.max(np.abs(G - G.conj().T)) <= 1e-14
        assert np.linalg.eigvalsh(G).min() > 0


def test_gram_rejects_duplicates_and_near_duplicates():
    with pytest.raises(DuplicatePoints):
        gram_matrix([(0.2, 0), (0.2, 0)])
    with pytest.raises(IllConditioned):
        gram_matrix([(0.5, 0), (0.5 + 1e-14, 0)])


# ------------------------------------------------------------ is_inner_poly


def test_is_inner_examples():
    assert is_inner_poly(TrigPoly.monomial((1, 2)))
    p = (TrigPoly.monomial((1, 0)) + TrigPoly.monomial((0, 1))) * (1 / np.sqrt(2))
    assert not is_inner_poly(p)
    assert not is_inner_poly(TrigPoly.monomial((1, 0), 0.5))
    assert is_inner_poly(TrigPoly.monomial((2,), np.exp(0.9j)))
    with pytest.raises(NotAnalytic):
        is_inner_poly(TrigPoly.monomial((-1, 0)))


def test_norm_bridge_statistics():
    # inner polynomials have grid L1 = 1; non-inner analytic ones sit strictly
    # below 1 after L2 normalization
    rng = np.random.default_rng(11)
    grid = TorusGrid(2, 256)
    for _ in range(100):
        k = (int(rng.integers(0, 4)), int(rng.integers(0, 4)))
        p = TrigPoly.monomial(k, np.exp(2j * np.pi * rng.random()))
        assert is_inner_poly(p)
        assert abs(grid_norms(p, grid)["l1"] - 1.0) <= 1e-3
    for _ in range(100):
        nterms = int(rng.integers(2, 5))
        coeffs = {}
        while len(coeffs) < nterms:
            k = (int(rng.integers(0, 4)), int(rng.integers(0, 4)))
            coeffs[k] = complex(rng.normal(), rng.normal())
        p = TrigPoly(2, coeffs)
        p = p * (1 / np.sqrt(inner_l2(p, p).real))
        if is_inner_poly(p):  # cancellation can leave a single term
            continue
        assert grid_norms(p, grid)["l1"] < 1 - 1e-4


# -------------------------------------------------------------- KernelCombo


def test_evaluate_combo_examples():
    one = KernelCombo(((0, 0),), np.array([1.0]))
    assert evaluate_combo(one, (0.3, 0.9j)) == 1.0
    psi = KernelCombo(((0, 0), (0.5, 0)), np.array([-1.5, 1.5]))
    assert abs(evaluate_combo(psi, (0, 0))) < 1e-15
    assert abs(evaluate_combo(psi, (0.5, 0)) - 0.5) < 1e-15


def test_combo_norm_matches_gram_form():
    pts = [(0.1, 0.2), (0.3 - 0.2j, 0)]
    c = np.array([1.0 - 0.5j, 0.25j])
    combo = KernelCombo(tuple(pts), c)
    G = gram_matrix(pts)
    want = float(np.real(c.conj() @ G @ c))
    assert abs(combo.norm_sq() - want) < 1e-14


def test_combo_coeff_at_matches_series():
    pts = ((0.3, 0.1), (0.2j, -0.4))
    c = np.array([0.7, -0.2 + 0.5j])
    combo = KernelCombo(pts, c)
    series = (
        szego_series(pts[0], 6) * c[0] + szego_series(pts[1], 6) * c[1]
    )
    for k in ((0, 0), (1, 0), (2, 1), (0, 3)):
        assert abs(combo.coeff_at(k) - series.coeffs.get(k, 0)) < 1e-14


def test_combo_pair_with_is_exact_pairing():
    # integral(phi * conj-combo) = sum conj(c_i) * (H2 part of phi)(z_i)
    pts = ((0.25, -0.1), (0.1 + 0.2j, 0.3))
    c = np.array([1.0, 2.0 - 1.0j])
    combo = KernelCombo(pts, c)
    phi = TrigPoly(2, {(1, 0): 0.5, (0, 2): 1.0j, (-1, 0): 3.0, (1, -1): 1.0})
    h2 = phi.component("H2")
    want = sum(
        np.conj(ci) * h2.evaluate(p) for ci, p in zip(c, pts)
    )
    assert abs(combo.pair_with(phi) - want) < 1e-14


def test_combo_truncate_matches_series_sum():
    pts = ((0.5, 0),)
    combo = KernelCombo(pts, np.array([2.0]))
    assert combo.truncate(2) == TrigPoly(2, {(0, 0): 2.0, (1, 0): 1.0, (2, 0): 0.5})


def test_combo_grid_values_match_evaluation():
    pts = ((0.3, 0.4j), (-0.2, 0.1))
    combo = KernelCombo(pts, np.array([1.0, -0.5j]))
    grid = TorusGrid(2, 6)
    vals = combo.grid_values(grid)
    flat = 0
    for a in range(6):
        for b in range(6):
            z = (np.exp(2j * np.pi * a / 6), np.exp(2j * np.pi * b / 6))
            assert abs(vals[flat] - evaluate_combo(combo, z)) < 1e-12
            flat += 1
