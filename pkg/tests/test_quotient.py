"""Quotient modules, compressions, module maps, operator norms, weak lifts."""

import numpy as np
import pytest
import scipy.linalg

from polylift.errors import (
    DegreeTooHigh,
    NotAModuleMap,
    NotAnalytic,
    NotInnerMonomial,
)
from polylift.quotient import (
    ModuleMap,
    QuotientModule,
    compress,
    diagonal_map,
    is_module_map,
    model_shifts,
    operator_norm,
    poly_decompose,
    weak_lift_symbol,
)
from polylift.tpoly import TrigPoly

S = 1 / np.sqrt(2)
TWO_NODES = ((0, 0), (0.5, 0))


def norm_oracle(X):
    """Operator norm on (Q, gram) via the generalized eigenproblem
    lambda_max(M^H G M, G), independently of the Cholesky-whitening path."""
    G = X.module.gram
    M = X.matrix
    vals = scipy.linalg.eigh(M.conj().T @ G @ M, G, eigvals_only=True)
    return float(np.sqrt(max(vals.max(), 0.0)))


def shift_adjoint_residual(Q, A, vals):
    # defining property via reproducing kernels: (G A)[l, j] = vals[l] G[l, j]
    G = Q.gram
    lhs = G @ A
    rhs = vals[:, None] * G
    return float(np.max(np.abs(lhs - rhs)))


# ------------------------------------------------------------------- basis


def test_homogeneous_basis_graded_order():
    Q = QuotientModule.homogeneous(2, 2)
    assert Q.exponents == ((0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2))
    assert Q.size == 6


def test_corank_basis_has_a_zero_exponent():
    Q = QuotientModule.corank(2, 3)
    assert Q.size == 7
    assert all(min(k) == 0 for k in Q.exponents)
    assert all(sum(k) <= 3 for k in Q.exponents)


def test_onevar_basis():
    Q = QuotientModule.onevar(3)
    assert Q.exponents == ((0,), (1,), (2,))
    assert np.allclose(Q.gram, np.eye(3))


def test_zero_based_gram():
    Q = QuotientModule.zero_based(TWO_NODES)
    assert np.allclose(Q.gram, [[1, 1], [1, 4 / 3]], atol=1e-15)


# ----------------------------------------------------------------- project


def test_project_homogeneous_restriction():
    Q = QuotientModule.homogeneous(2, 2)
    f = TrigPoly(2, {(0, 0): 1.0, (1, 0): 1.0, (3, 0): 1.0})
    d = Q.project(f)
    want = np.zeros(6)
    want[0] = want[1] = 1.0
    assert np.allclose(d, want)


def test_project_zero_based_examples():
    Q1 = QuotientModule.zero_based(((0, 0),))
    assert np.allclose(Q1.project(TrigPoly.constant(1.0, 2)), [1.0])
    Q2 = QuotientModule.zero_based(TWO_NODES)
    d = Q2.project(TrigPoly.monomial((1, 0)))
    assert np.allclose(d, [-1.5, 1.5], atol=1e-12)


def test_project_rejects_bad_input():
    Q = QuotientModule.zero_based(TWO_NODES, trunc=4)
    with pytest.raises(NotAnalytic):
        Q.project(TrigPoly.monomial((-1, 0)))
    with pytest.raises(DegreeTooHigh):
        Q.project(TrigPoly.monomial((5, 0)))


def test_project_idempotent_all_kinds():
    modules = [
        QuotientModule.zero_based(TWO_NODES),
        QuotientModule.homogeneous(2, 2),
        QuotientModule.corank(2, 3),
        QuotientModule.onevar(4),
    ]
    rng = np.random.default_rng(3)
    for Q in modules:
        d = rng.standard_normal(Q.size) + 1j * rng.standard_normal(Q.size)
        f = Q.reconstruct(d)
        again = Q.project(f)
        assert np.allclose(again, d, atol=1e-12)


# ------------------------------------------------------------ model shifts


def test_model_shifts_homogeneous_m1():
    Q = QuotientModule.homogeneous(1, 2)
    S1, S2 = model_shifts(Q)
    # basis (1, z1, z2): z1*1 = z1 stays, z1*z1 and z1*z2 truncate away
    assert np.allclose(S1, [[0, 0, 0], [1, 0, 0], [0, 0, 0]])
    assert np.allclose(S2, [[0, 0, 0], [0, 0, 0], [1, 0, 0]])


def test_model_shifts_zero_based_adjoint_diagonal():
    pts = ((0.1 + 0.2j, -0.3), (0.4, 0.25j))
    Q = QuotientModule.zero_based(pts)
    for i, A in enumerate(model_shifts(Q)):
        vals = np.array([p[i] for p in pts])
        assert shift_adjoint_residual(Q, A, vals) < 1e-12


def test_model_shift_onevar_jordan_block():
    Q = QuotientModule.onevar(2)
    (Sz,) = model_shifts(Q)
    assert np.allclose(Sz, [[0, 0], [1, 0]])
    assert np.allclose(Sz @ Sz, 0)


# ---------------------------------------------------------------- compress


def test_compress_homogeneous_example():
    Q = QuotientModule.homogeneous(1, 2)
    p = TrigPoly(2, {(1, 0): S, (0, 1): S})
    C = compress(Q, p).matrix
    assert np.allclose(C[:, 0], [0, S, S])
    assert np.allclose(C[:, 1:], 0)


def test_compress_identity():
    for Q in (
        QuotientModule.zero_based(TWO_NODES),
        QuotientModule.homogeneous(2, 2),
    ):
        C = compress(Q, TrigPoly.constant(1.0, 2)).matrix
        assert np.allclose(C, np.eye(Q.size), atol=1e-12)


def test_compress_zero_based_adjoint_diagonal():
    pts = ((0.2, 0.1), (-0.3, 0.4j), (0.1j, -0.2))
    Q = QuotientModule.zero_based(pts)
    phi = TrigPoly(2, {(1, 0): 0.3, (1, 1): -0.7j, (0, 2): 0.2})
    C = compress(Q, phi).matrix
    vals = np.array([phi.evaluate(p) for p in pts])
    assert shift_adjoint_residual(Q, C, vals) < 1e-12


def test_compress_commutes_with_shifts_everywhere():
    rng = np.random.default_rng(5)
    modules = [
        QuotientModule.zero_based(TWO_NODES),
        QuotientModule.zero_based(((0.2, 0.3j), (-0.4, 0.1), (0.25, -0.25))),
        QuotientModule.homogeneous(3, 2),
        QuotientModule.corank(2, 4),
        QuotientModule.onevar(5),
    ]
    for Q in modules:
        n = Q.dim
        coeffs = {}
        for _ in range(4):
            k = tuple(int(rng.integers(0, 3)) for _ in range(n))
            coeffs[k] = complex(rng.normal(), rng.normal())
        phi = TrigPoly(n, coeffs)
        C = compress(Q, phi).matrix
        for Sz in model_shifts(Q):
            comm = C @ Sz - Sz @ C
            assert np.linalg.norm(comm) <= 1e-10


# ------------------------------------------------------------ is_module_map


def test_is_module_map_examples():
    Q = QuotientModule.zero_based(TWO_NODES)
    assert is_module_map(diagonal_map(Q, np.array([0.3, -0.5j])))
    phi = TrigPoly(2, {(1, 0): 1.0, (0, 1): 2.0})
    assert is_module_map(compress(Q, phi))
    swap = ModuleMap(Q, np.array([[0.0, 1.0], [1.0, 0.0]]))
    assert not is_module_map(swap)
    # the commutator is far from zero, not a tolerance accident
    Sz = model_shifts(Q)[0]
    comm = swap.matrix @ Sz - Sz @ swap.matrix
    assert np.linalg.norm(comm) > 0.01


# ------------------------------------------------------------ operator_norm


def test_operator_norm_compression_of_unit_vector():
    Q = QuotientModule.homogeneous(1, 2)
    p = TrigPoly(2, {(1, 0): S, (0, 1): S})
    assert abs(operator_norm(compress(Q, p)) - 1.0) <= 1e-10


def test_operator_norm_zero():
    Q = QuotientModule.homogeneous(1, 2)
    assert operator_norm(ModuleMap(Q, np.zeros((3, 3)))) == 0.0


def test_operator_norm_matches_generalized_eig_oracle():
    Q = QuotientModule.zero_based(TWO_NODES)
    X = diagonal_map(Q, np.array([0.0, 0.5]))
    assert abs(operator_norm(X) - norm_oracle(X)) < 1e-10
    rng = np.random.default_rng(9)
    for _ in range(20):
        pts = tuple(
            (complex(a, b),)
            for a, b in zip(rng.uniform(-0.7, 0.7, 3), rng.uniform(-0.7, 0.7, 3))
        )
        if min(
            abs(pts[i][0] - pts[j][0]) for i in range(3) for j in range(i + 1, 3)
        ) < 1e-2:
            continue
        Q = QuotientModule.zero_based(pts)
        w = rng.standard_normal(3) + 1j * rng.standard_normal(3)
        X = diagonal_map(Q, w)
        assert abs(operator_norm(X) - norm_oracle(X)) < 1e-8 * (1 + norm_oracle(X))


# ------------------------------------------------------------- diagonal_map


def test_diagonal_map_examples():
    Q1 = QuotientModule.zero_based(((0.3, 0.1),))
    assert np.allclose(diagonal_map(Q1, np.array([0.7j])).matrix, [[0.7j]])
    Q = QuotientModule.zero_based(TWO_NODES)
    assert np.allclose(diagonal_map(Q, np.array([1.0, 1.0])).matrix, np.eye(2))
    phi = TrigPoly.monomial((1, 0))
    w = np.array([phi.evaluate(p) for p in TWO_NODES])
    assert np.allclose(
        diagonal_map(Q, w).matrix, compress(Q, phi).matrix, atol=1e-10
    )


# --------------------------------------------------------- weak_lift_symbol


def test_weak_lift_single_point_constant():
    Q = QuotientModule.zero_based(((0, 0),))
    X = ModuleMap(Q, np.array([[0.7 - 0.1j]]))
    psi = weak_lift_symbol(X)
    assert np.allclose(psi.coeffs, [0.7 - 0.1j])
    assert psi.evaluate((0.3, -0.5j)) == 0.7 - 0.1j


def test_weak_lift_interpolation_coefficients():
    Q = QuotientModule.zero_based(TWO_NODES)
    X = diagonal_map(Q, np.array([0.0, 0.5]))
    psi = weak_lift_symbol(X)
    assert np.allclose(psi.coeffs, [-1.5, 1.5], atol=1e-12)
    assert abs(psi.evaluate((0, 0))) < 1e-12
    assert abs(psi.evaluate((0.5, 0)) - 0.5) < 1e-12


def test_weak_lift_identity_round_trip():
    # X = I: psi = P_Q 1, and compressing its truncation recovers the identity
    Q = QuotientModule.zero_based(TWO_NODES)
    X = ModuleMap(Q, np.eye(2, dtype=np.complex128))
    psi = weak_lift_symbol(X)
    C = compress(Q, psi.truncate(Q.trunc)).matrix
    assert np.max(np.abs(C - np.eye(2))) <= 1e-9


def test_weak_lift_round_trip_random():
    rng = np.random.default_rng(17)
    pts = ((0.1, 0.3), (0.45, -0.2), (-0.3, 0.15))
    Q = QuotientModule.zero_based(pts)
    for _ in range(5):
        w = 0.7 * (rng.standard_normal(3) + 1j * rng.standard_normal(3))
        X = diagonal_map(Q, w)
        psi = weak_lift_symbol(X)
        C = compress(Q, psi.truncate(Q.trunc)).matrix
        assert np.max(np.abs(C - X.matrix)) <= 1e-9


def test_weak_lift_rejects_non_module_map():
    Q = QuotientModule.zero_based(TWO_NODES)
    with pytest.raises(NotAModuleMap):
        weak_lift_symbol(ModuleMap(Q, np.array([[0.0, 1.0], [1.0, 0.0]])))


# ------------------------------------------------------------ poly_decompose


def test_poly_decompose_examples():
    theta = TrigPoly.monomial((2,))
    p = TrigPoly(1, {(0,): 1.0, (1,): 1.0, (2,): 1.0, (3,): 1.0})
    f, g = poly_decompose(theta, p)
    assert f == TrigPoly(1, {(2,): 1.0, (3,): 1.0})
    assert g == TrigPoly(1, {(0,): 1.0, (1,): 1.0})

    f, g = poly_decompose(
        TrigPoly.monomial((1, 1)), TrigPoly(2, {(1, 0): 1.0, (1, 1): 1.0})
    )
    assert f == TrigPoly.monomial((1, 1))
    assert g == TrigPoly.monomial((1, 0))

    f, g = poly_decompose(TrigPoly.monomial((1,)), TrigPoly.constant(1.0, 1))
    assert f == TrigPoly.zero(1)
    assert g == TrigPoly.constant(1.0, 1)


def test_poly_decompose_rejects_non_inner():
    p = TrigPoly(2, {(1, 0): S, (0, 1): S})
    with pytest.raises(NotInnerMonomial):
        poly_decompose(p, TrigPoly.monomial((1, 0)))
    with pytest.raises(NotInnerMonomial):
        poly_decompose(TrigPoly.monomial((1, 0), 0.5), TrigPoly.monomial((1, 0)))


# -------------------------------------------------------- module identities


def test_onevar_conjugate_module_identity():
    # index sets of Q_theta^conj + zH2 and conj(theta) * zH2 agree inside the
    # window {-d, ..., D-d} for theta = z^d
    D = 16
    for d in range(1, 5):
        Q = QuotientModule.onevar(d)
        lhs = set()
        for j in range(Q.size):
            lhs.update(Q.basis_poly(j).conj().coeffs)
        for j in range(1, D + 1):
            if -d <= j <= D - d:
                lhs.add((j,))
        rhs = {(j - d,) for j in range(1, D + 1) if -d <= j - d <= D - d}
        lhs = {k for k in lhs if -d <= k[0] <= D - d}
        assert lhs == rhs


def test_json_descriptor_round_trips():
    modules = [
        QuotientModule.zero_based(TWO_NODES, trunc=10),
        QuotientModule.homogeneous(3, 2),
        QuotientModule.corank(2, 5),
        QuotientModule.onevar(4),
    ]
    for Q in modules:
        R = QuotientModule.from_json_dict(Q.to_json_dict())
        assert R.kind == Q.kind
        assert R.size == Q.size
        assert np.allclose(R.gram, Q.gram)
