"""Finite-dimensional quotient modules of H2 on the polydisc.

Four module kinds share one interface:

  zero_based   span of kernel functions S(., z_j) at distinct nodes; Gram
               matrix from the kernel, all exact evaluation via the rational
               formula, truncation degree only for TrigPoly views
  homogeneous  all monomials of total degree <= m in n variables
  corank       monomials of degree <= trunc with at least one zero exponent
               (finite truncation of ker prod T*_{z_i})
  onevar       single variable, basis 1, z, ..., z^{d-1}, i.e. H2 mod z^d H2

Compressions S_phi, model shifts, module-map detection, operator norms in the
module metric, and the weak lifting symbol X(P_Q 1) all live here.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as _iproduct
from typing import List, Sequence, Tuple

import numpy as np

from .errors import (
    DegreeTooHigh,
    DimensionMismatch,
    IllConditioned,
    NotAModuleMap,
    NotAnalytic,
    NotInnerMonomial,
)
from .kernels import KernelCombo, gram_matrix, szego_series, validate_point
from .tpoly import ANALYTIC, CONSTANT, TrigPoly, classify_index

DEFAULT_TRUNC = 24
MODULE_MAP_TOL = 1e-8


def _graded_key(k):
    # graded order, z1 before z2 within a grade
    return (sum(k), tuple(-e for e in k))


def _check_analytic(f: TrigPoly, what: str = "polynomial"):
    for k in f.coeffs:
        if classify_index(k) not in (CONSTANT, ANALYTIC):
            raise NotAnalytic(f"{what} has non-analytic index {k}")


class QuotientModule:
    """Immutable quotient module with an ordered basis and its Gram matrix."""

    __slots__ = ("kind", "dim", "points", "trunc", "exponents", "_gram", "params")

    def __init__(self, kind, dim, points=None, trunc=None, exponents=None, params=None):
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "trunc", trunc)
        object.__setattr__(self, "exponents", exponents)
        object.__setattr__(self, "params", params or {})
        if kind == "zero_based":
            g = gram_matrix(points)
        else:
            g = np.eye(len(exponents), dtype=np.complex128)
        object.__setattr__(self, "_gram", g)

    def __setattr__(self, name, value):
        raise AttributeError("QuotientModule is immutable")

    # --------------------------------------------------------- constructors

    @classmethod
    def zero_based(cls, points: Sequence, trunc: int = DEFAULT_TRUNC) -> "QuotientModule":
        pts = [validate_point(p) for p in points]
        dim = len(pts[0])
        pts = tuple(validate_point(p, dim=dim) for p in pts)
        return cls("zero_based", dim, points=pts, trunc=int(trunc))

    @classmethod
    def homogeneous(cls, m: int, n: int) -> "QuotientModule":
        if m < 0 or n < 1:
            raise ValueError(f"need m >= 0 and n >= 1, got m={m}, n={n}")
        exps = sorted(
            (k for k in _iproduct(range(m + 1), repeat=n) if sum(k) <= m),
            key=_graded_key,
        )
        return cls("homogeneous", n, exponents=tuple(exps), params={"m": m})

    @classmethod
    def corank(cls, n: int, trunc: int) -> "QuotientModule":
        if n < 1 or trunc < 0:
            raise ValueError(f"need n >= 1 and trunc >= 0, got n={n}, trunc={trunc}")
        exps = sorted(
            (
                k
                for k in _iproduct(range(trunc + 1), repeat=n)
                if sum(k) <= trunc and min(k) == 0
            ),
            key=_graded_key,
        )
        return cls("corank", n, trunc=int(trunc), exponents=tuple(exps))

    @classmethod
    def onevar(cls, d: int) -> "QuotientModule":
        if d < 1:
            raise ValueError(f"need d >= 1, got {d}")
        return cls(
            "onevar", 1, exponents=tuple((j,) for j in range(d)), params={"d": d}
        )

    # ------------------------------------------------------------ structure

    @property
    def size(self) -> int:
        if self.kind == "zero_based":
            return len(self.points)
        return len(self.exponents)

    @property
    def gram(self) -> np.ndarray:
        return self._gram

    def basis_poly(self, i: int) -> TrigPoly:
        """TrigPoly view of basis element i (truncated series for zero_based)."""
        if self.kind == "zero_based":
            return szego_series(self.points[i], self.trunc)
        return TrigPoly.monomial(self.exponents[i])

    def basis_combo(self, coeffs) -> KernelCombo:
        if self.kind != "zero_based":
            raise ValueError(f"no kernel combos on a {self.kind} module")
        return KernelCombo(self.points, coeffs)

    def reconstruct(self, coeffs) -> TrigPoly:
        coeffs = np.asarray(coeffs, dtype=np.complex128)
        out = TrigPoly.zero(self.dim)
        for i, c in enumerate(coeffs):
            if c != 0:
                out = out + self.basis_poly(i) * c
        return out

    # ------------------------------------------------------------ operators

    def project(self, f: TrigPoly) -> np.ndarray:
        """Expansion coefficients of P_Q f in the basis order.

        zero_based solves G d = (f(z_j))_j, which makes P_Q f - f orthogonal
        to every kernel function; monomial bases restrict coefficients.
        """
        if f.dim != self.dim:
            raise DimensionMismatch(f"poly dim {f.dim} != module dim {self.dim}")
        _check_analytic(f)
        if self.kind == "zero_based":
            if f.total_degree() > self.trunc:
                raise DegreeTooHigh(
                    f"degree {f.total_degree()} exceeds truncation {self.trunc}"
                )
            vals = np.array([f.evaluate(p) for p in self.points], dtype=np.complex128)
            return np.linalg.solve(self._gram, vals)
        lookup = {k: i for i, k in enumerate(self.exponents)}
        out = np.zeros(self.size, dtype=np.complex128)
        for k, a in f.coeffs.items():
            if k in lookup:
                out[lookup[k]] = a
        return out

    def p_q_one(self) -> np.ndarray:
        """Coefficients of P_Q 1; for zero_based this solves G d = (1,...,1)."""
        if self.kind == "zero_based":
            return np.linalg.solve(self._gram, np.ones(self.size, dtype=np.complex128))
        out = np.zeros(self.size, dtype=np.complex128)
        zero = (0,) * self.dim
        for i, k in enumerate(self.exponents):
            if k == zero:
                out[i] = 1.0
        return out

    def _adjoint_diagonal(self, diag_vals) -> np.ndarray:
        # operator whose adjoint is diag(conj(v_j)) on the kernel basis has
        # coefficient matrix G^{-1} diag(v_j) G
        vals = np.asarray(diag_vals, dtype=np.complex128)
        return np.linalg.solve(self._gram, vals[:, None] * self._gram)

    def model_shifts(self) -> List[np.ndarray]:
        """Matrices of the compressions S_{z_i} = P_Q T_{z_i}|_Q, one per axis."""
        if self.kind == "zero_based":
            return [
                self._adjoint_diagonal([p[a] for p in self.points])
                for a in range(self.dim)
            ]
        shifts = []
        lookup = {k: i for i, k in enumerate(self.exponents)}
        for a in range(self.dim):
            M = np.zeros((self.size, self.size), dtype=np.complex128)
            for j, k in enumerate(self.exponents):
                up = tuple(e + (1 if b == a else 0) for b, e in enumerate(k))
                if up in lookup:
                    M[lookup[up], j] = 1.0
            shifts.append(M)
        return shifts

    def compress(self, phi: TrigPoly) -> "ModuleMap":
        """Matrix of S_phi = P_Q T_phi|_Q for analytic phi."""
        if phi.dim != self.dim:
            raise DimensionMismatch(f"poly dim {phi.dim} != module dim {self.dim}")
        _check_analytic(phi, "symbol")
        if self.kind == "zero_based":
            vals = [phi.evaluate(p) for p in self.points]
            return ModuleMap(self, self._adjoint_diagonal(vals))
        lookup = {k: i for i, k in enumerate(self.exponents)}
        M = np.zeros((self.size, self.size), dtype=np.complex128)
        for j, k in enumerate(self.exponents):
            for kp, a in phi.coeffs.items():
                up = tuple(e1 + e2 for e1, e2 in zip(k, kp))
                if up in lookup:
                    M[lookup[up], j] += a
        return ModuleMap(self, M)

    def diagonal_map(self, w) -> "ModuleMap":
        """Module map on a zero_based module with adjoint diagonal conj(w_j)."""
        if self.kind != "zero_based":
            raise ValueError("diagonal_map needs a zero_based module")
        w = np.asarray(w, dtype=np.complex128)
        if w.shape != (self.size,):
            raise DimensionMismatch(
                f"{self.size} points but target shape {w.shape}"
            )
        return ModuleMap(self, self._adjoint_diagonal(w))

    def to_json_dict(self) -> dict:
        if self.kind == "zero_based":
            return {
                "type": "zero_based",
                "points": [
                    [{"re": v.real, "im": v.imag} for v in p] for p in self.points
                ],
                "trunc": self.trunc,
            }
        if self.kind == "homogeneous":
            return {"type": "homogeneous", "m": self.params["m"], "n": self.dim}
        if self.kind == "corank":
            return {"type": "corank", "n": self.dim, "trunc": self.trunc}
        return {"type": "onevar", "d": self.params["d"]}

    @classmethod
    def from_json_dict(cls, obj: dict) -> "QuotientModule":
        kind = obj.get("type")
        if kind == "zero_based":
            pts = [
                tuple(complex(v["re"], v.get("im", 0.0)) for v in p)
                for p in obj["points"]
            ]
            return cls.zero_based(pts, trunc=int(obj.get("trunc", DEFAULT_TRUNC)))
        if kind == "homogeneous":
            return cls.homogeneous(int(obj["m"]), int(obj["n"]))
        if kind == "corank":
            return cls.corank(int(obj["n"]), int(obj["trunc"]))
        if kind == "onevar":
            return cls.onevar(int(obj["d"]))
        raise ValueError(f"unknown module type {kind!r}")


@dataclass(frozen=True)
class ModuleMap:
    """Operator on a quotient module, stored as a matrix in the basis order."""

    module: QuotientModule
    matrix: np.ndarray

    def __post_init__(self):
        M = np.asarray(self.matrix, dtype=np.complex128)
        n = self.module.size
        if M.shape != (n, n):
            raise DimensionMismatch(f"matrix shape {M.shape}, basis size {n}")
        object.__setattr__(self, "matrix", M)

    def apply(self, coeffs) -> np.ndarray:
        return self.matrix @ np.asarray(coeffs, dtype=np.complex128)


def project(Q: QuotientModule, f: TrigPoly) -> np.ndarray:
    return Q.project(f)


def model_shifts(Q: QuotientModule) -> List[np.ndarray]:
    return Q.model_shifts()


def compress(Q: QuotientModule, phi: TrigPoly) -> ModuleMap:
    return Q.compress(phi)


def diagonal_map(Q: QuotientModule, w) -> ModuleMap:
    return Q.diagonal_map(w)


def is_module_map(X: ModuleMap, tol: float = MODULE_MAP_TOL) -> bool:
    """True iff X commutes with every model shift to Frobenius tolerance."""
    M = X.matrix
    worst = 0.0
    for S in X.module.model_shifts():
        worst = max(worst, float(np.linalg.norm(M @ S - S @ M)))
    return worst <= tol


def operator_norm(X: ModuleMap) -> float:
    """B(Q) operator norm: largest singular value after Gram whitening.

    With G = L L^H the norm of the coefficient matrix M in the module metric
    is the largest singular value of L^H M L^{-H}.
    """
    G = X.module.gram
    if X.module.kind != "zero_based":
        return float(np.linalg.norm(X.matrix, 2))
    try:
        L = np.linalg.cholesky(G)
    except np.linalg.LinAlgError as exc:
        raise IllConditioned(f"Gram Cholesky failed: {exc}") from exc
    W = L.conj().T
    A = W @ X.matrix
    # right-divide by W: solve Y W = A via the transposed system
    Y = np.linalg.solve(W.T, A.T).T
    return float(np.linalg.norm(Y, 2))


def weak_lift_symbol(X: ModuleMap, tol: float = MODULE_MAP_TOL) -> KernelCombo:
    """The kernel combination psi = X(P_Q 1) on a zero_based module.

    psi interpolates the adjoint eigenvalues: evaluate_combo(psi, z_j) = w_j,
    and compress(Q, psi) reproduces X.  Raises NotAModuleMap when X fails the
    commutation test.
    """
    Q = X.module
    if Q.kind != "zero_based":
        raise ValueError("weak_lift_symbol needs a zero_based module")
    if not is_module_map(X, tol):
        raise NotAModuleMap("operator does not commute with the model shifts")
    return KernelCombo(Q.points, X.matrix @ Q.p_q_one())


def poly_decompose(theta: TrigPoly, p: TrigPoly) -> Tuple[TrigPoly, TrigPoly]:
    """Split analytic p as f + g with f in theta*H2 and g orthogonal to it.

    theta must be a single analytic monomial with unit-modulus coefficient.
    f collects the terms whose exponent dominates theta's componentwise.
    """
    if theta.dim != p.dim:
        raise DimensionMismatch(f"dims differ: {theta.dim} vs {p.dim}")
    if len(theta.coeffs) != 1:
        raise NotInnerMonomial("theta must be a single monomial")
    ((kt, a),) = theta.coeffs.items()
    if classify_index(kt) not in (CONSTANT, ANALYTIC) or abs(abs(a) - 1.0) > 1e-10:
        raise NotInnerMonomial("theta must be analytic with unit-modulus coefficient")
    _check_analytic(p)
    f_terms = {}
    g_terms = {}
    for k, c in p.coeffs.items():
        if all(e >= et for e, et in zip(k, kt)):
            f_terms[k] = c
        else:
            g_terms[k] = c
    return TrigPoly(p.dim, f_terms), TrigPoly(p.dim, g_terms)
