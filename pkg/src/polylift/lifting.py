"""Lifting criteria as a certificate engine.

A contractive module map X on a quotient module Q lifts to a Schur multiplier
exactly when the functional X_Q f = integral(psi f) is contractive on M_Q
with the L1 norm, equivalently when the L1 distance from conj(psi)/||psi||_2^2
to M~ = (Q^conj minus the conj(psi) direction) + (mixed part + H2_0) is at
least 1.  This module turns both characterizations into machine-checkable
certificates:

  dual_lower_bound     an L-infinity symbol phi with |phi| <= 1, exactly
                       orthogonal to the subspace, pairing |int(phi g)| = lower
  upper_bound_min      an achieved element h of the subspace with grid L1 norm
                       of g + h = upper
  refute_contractivity an explicit f in M_Q with |int(psi f)| > ||f||_1

Verdicts: CertifiedYes iff lower >= 1 - yes_tol, CertifiedNo iff upper <=
1 - no_margin or a refutation witness validates, otherwise the honest
Inconclusive.  All pairings against subspace generators are exact (coefficient
or reproducing-kernel identities); grids enter only through L1 norm estimates.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as _iproduct
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from . import _accel
from .config import RunConfig
from .errors import (
    DimensionMismatch,
    DegreeTooHigh,
    NotAContraction,
    NotAModuleMap,
    NotAnalytic,
    NumericalError,
    ZeroFunction,
)
from .kernels import KernelCombo, szego_value
from .quotient import ModuleMap, QuotientModule, is_module_map, operator_norm
from .tpoly import (
    ANALYTIC,
    COANALYTIC,
    CONSTANT,
    MIXED,
    TorusGrid,
    TrigPoly,
    classify_index,
    inner_l2,
)

CERTIFIED_YES = "CertifiedYes"
CERTIFIED_NO = "CertifiedNo"
INCONCLUSIVE = "Inconclusive"

Symbol = Union[TrigPoly, KernelCombo]


def pair_integral(p: TrigPoly, q: TrigPoly) -> complex:
    """Exact bilinear pairing integral(p q) = sum_k p_k q_{-k}."""
    p._check_dim(q)
    total = 0j
    small, use_p = (p, True) if len(p.coeffs) <= len(q.coeffs) else (q, False)
    for k, a in small.coeffs.items():
        other = (q if use_p else p).coeffs.get(tuple(-e for e in k))
        if other is not None:
            total += a * other
    return total


def functional_value(psi: Symbol, f: TrigPoly) -> complex:
    """X_Q f = integral(psi f), exact.

    For polynomial psi this is the coefficient pairing sum_k psi_k f_{-k};
    for a kernel combination only the coanalytic-plus-constant part of f
    pairs, through the exact series coefficients of the combo.
    """
    if isinstance(psi, KernelCombo):
        if psi.dim != f.dim:
            raise DimensionMismatch(f"dims differ: {psi.dim} vs {f.dim}")
        total = 0j
        for k, a in f.coeffs.items():
            if all(e <= 0 for e in k):
                total += a * psi.coeff_at(tuple(-e for e in k))
        return total
    for k in psi.coeffs:
        if classify_index(k) not in (CONSTANT, ANALYTIC):
            raise NotAnalytic(f"symbol has non-analytic index {k}")
    return pair_integral(psi, f)


class ConjGenerator:
    """One generator of the subspace, held exactly.

    kind "poly": an explicit TrigPoly (conjugate monomials for Q^conj of
    monomial modules, mixed or analytic monomials for M_n and H2_0).
    kind "conj_combo": the conjugate of a kernel combination, kept in rational
    form so grid values and pairings carry no truncation error.
    """

    __slots__ = ("kind", "poly", "combo", "view_degree")

    def __init__(self, kind, poly=None, combo=None, view_degree=12):
        self.kind = kind
        self.poly = poly
        self.combo = combo
        self.view_degree = view_degree

    @classmethod
    def from_poly(cls, poly: TrigPoly) -> "ConjGenerator":
        return cls("poly", poly=poly)

    @classmethod
    def from_conj_combo(cls, combo: KernelCombo, view_degree: int) -> "ConjGenerator":
        return cls("conj_combo", combo=combo, view_degree=view_degree)

    @property
    def dim(self) -> int:
        return self.poly.dim if self.kind == "poly" else self.combo.dim

    def pair(self, phi: TrigPoly) -> complex:
        """Exact integral(phi * generator)."""
        if self.kind == "poly":
            return pair_integral(phi, self.poly)
        return self.combo.pair_with(phi)

    def grid_values(self, grid: TorusGrid) -> np.ndarray:
        if self.kind == "poly":
            return self.poly.grid_values(grid)
        return np.conj(self.combo.grid_values(grid))

    def as_poly(self) -> TrigPoly:
        if self.kind == "poly":
            return self.poly
        return self.combo.truncate(self.view_degree).conj()


def functional_against(psi: Symbol, gen: ConjGenerator) -> complex:
    """Exact integral(psi * generator); the refutation numerator entries."""
    if gen.kind == "poly":
        return functional_value(psi, gen.poly)
    u = gen.combo
    if isinstance(psi, KernelCombo):
        # <psi, combo u> through the kernel: sum_{i,j} conj(u_i) S(p_i, q_j) c_j
        total = 0j
        for i, pi in enumerate(u.points):
            for j, qj in enumerate(psi.points):
                total += u.coeffs[i].conjugate() * szego_value(pi, qj) * psi.coeffs[j]
        return total
    return u.pair_with(psi)


@dataclass(frozen=True)
class SubspaceSpec:
    """Finitely presented view of M_Q, M~ or L_n.

    qconj_basis lists the Q^conj generators exactly; the mixed part M_n and
    the analytic part H2_0 are present as whole spaces whenever their degree
    field is positive (the degree only caps the finite generator enumeration
    used by the primal minimization and the refutation search; the dual
    orthogonality test treats them structurally, i.e. in full).
    """

    dim: int
    qconj_basis: Tuple[ConjGenerator, ...]
    include_mixed_to_degree: int
    include_h2zero_to_degree: int

    @property
    def has_mixed(self) -> bool:
        return self.include_mixed_to_degree > 0 and self.dim >= 2

    @property
    def has_h2zero(self) -> bool:
        return self.include_h2zero_to_degree > 0

    def structurally_orthogonal(self, phi: TrigPoly) -> bool:
        """True iff phi is orthogonal to the full mixed and H2_0 parts.

        integral(phi v) pairs index k of phi with index -k of v, so phi is
        orthogonal to every mixed monomial iff it carries no mixed index, and
        to all of H2_0 iff it carries no coanalytic index.
        """
        for k in phi.coeffs:
            label = classify_index(k)
            if self.has_mixed and label == MIXED:
                return False
            if self.has_h2zero and label == COANALYTIC:
                return False
        return True

    def generator_list(self, cap: int) -> List[ConjGenerator]:
        """Exact generators for span searches: Q^conj first, then monomials
        of M_n and H2_0 by increasing total grade, stopping at cap."""
        gens: List[ConjGenerator] = list(self.qconj_basis[:cap])
        top = max(
            self.include_mixed_to_degree if self.has_mixed else 0,
            self.include_h2zero_to_degree if self.has_h2zero else 0,
        )
        for grade in range(1, top + 1):
            if len(gens) >= cap:
                break
            for k in _laurent_indices(self.dim, grade):
                label = classify_index(k)
                want = (
                    label == ANALYTIC
                    and self.has_h2zero
                    and grade <= self.include_h2zero_to_degree
                ) or (
                    label == MIXED
                    and self.has_mixed
                    and grade <= self.include_mixed_to_degree
                )
                if want:
                    gens.append(ConjGenerator.from_poly(TrigPoly.monomial(k)))
                    if len(gens) >= cap:
                        break
        return gens


def _laurent_indices(dim: int, grade: int):
    """All k in Z^dim with sum |k_i| = grade, in a fixed deterministic order."""
    out = [
        k
        for k in _iproduct(range(-grade, grade + 1), repeat=dim)
        if sum(abs(e) for e in k) == grade
    ]
    out.sort(key=lambda k: tuple(-e for e in k))
    return out


def _analytic_indices(dim: int, grade: int):
    out = [
        k
        for k in _iproduct(range(grade + 1), repeat=dim)
        if sum(k) == grade
    ]
    out.sort(key=lambda k: tuple(-e for e in k))
    return out


class Target:
    """The distance target g = conj(base)/scale, held exactly.

    base is the symbol psi (KernelCombo or analytic TrigPoly) or the
    perturbation polynomial f; scale the squared L2 norm.
    """

    __slots__ = ("base", "scale", "dim")

    def __init__(self, base: Symbol, scale: float):
        self.base = base
        self.scale = float(scale)
        self.dim = base.dim

    def pair(self, phi: TrigPoly) -> complex:
        """Exact integral(phi g)."""
        if isinstance(self.base, KernelCombo):
            return self.base.pair_with(phi) / self.scale
        return inner_l2(phi, self.base) / self.scale

    def grid_values(self, grid: TorusGrid) -> np.ndarray:
        return np.conj(self.base.grid_values(grid)) / self.scale


@dataclass(frozen=True)
class DualCertificate:
    symbol: TrigPoly
    value: float
    orthogonality_residual: float
    sup_estimate: float


@dataclass(frozen=True)
class DistanceEstimate:
    lower: float
    upper: Optional[float]
    lower_witness: Optional[DualCertificate] = None
    upper_witness: Optional[TrigPoly] = None


@dataclass(frozen=True)
class Verdict:
    outcome: str
    estimate: DistanceEstimate
    diagnostics: str
    refutation: Optional[dict] = None
    extras: dict = field(default_factory=dict)


def default_dictionary(target: Target, dim: int, max_degree: int):
    """Candidate dual symbols, each with exact sup norm 1.

    Order: a constant with phase adapted to the target, sixteen fixed
    unimodular constants, then monomials by total grade (analytic before
    coanalytic inside each grade).  The order is load bearing: the search
    stops at the first certificate reaching 1 - yes_tol.
    """
    c0 = target.pair(TrigPoly.constant(1.0, dim))
    if abs(c0) > 0:
        phase = np.exp(-1j * np.angle(complex(c0)))
        yield TrigPoly.constant(complex(phase), dim)
    for j in range(16):
        yield TrigPoly.constant(np.exp(2j * np.pi * j / 16), dim)
    for grade in range(1, max_degree + 1):
        for k in _analytic_indices(dim, grade):
            yield TrigPoly.monomial(k)
        for k in _analytic_indices(dim, grade):
            yield TrigPoly.monomial(tuple(-e for e in k))


def dual_lower_bound(
    target: Target,
    S: SubspaceSpec,
    config: RunConfig = None,
    dictionary: Sequence[TrigPoly] = None,
) -> DistanceEstimate:
    """Best certified lower bound on dist_L1(g, S) from the symbol dictionary.

    A symbol qualifies when its coefficient sum (an upper bound for its sup
    norm, exact for monomials and constants) is at most 1 + 1e-9, it is
    structurally orthogonal to the mixed and H2_0 parts of S, and its exact
    pairing against every Q^conj generator is below ortho_tol.  The value
    |integral(phi g)| of any qualifying phi is a true lower bound.
    """
    config = config or RunConfig()
    dict_degree = max(1, min(S.include_h2zero_to_degree or 1, config.trunc_degree))
    symbols = (
        dictionary
        if dictionary is not None
        else default_dictionary(target, target.dim, dict_degree)
    )
    best_val = 0.0
    best_cert = None
    for phi in symbols:
        sup_est = sum(abs(a) for a in phi.coeffs.values())
        if sup_est > 1.0 + 1e-9:
            continue
        if not S.structurally_orthogonal(phi):
            continue
        resid = 0.0
        ok = True
        for gen in S.qconj_basis:
            r = abs(gen.pair(phi))
            resid = max(resid, r)
            if r > config.ortho_tol:
                ok = False
                break
        if not ok:
            continue
        val = abs(target.pair(phi))
        if val > best_val:
            best_val = val
            best_cert = DualCertificate(
                symbol=phi,
                value=float(val),
                orthogonality_residual=float(resid),
                sup_estimate=float(sup_est),
            )
            if val >= 1.0 - config.yes_tol:
                break
    return DistanceEstimate(lower=float(best_val), upper=None, lower_witness=best_cert)


def upper_bound_min(
    target: Target,
    S: SubspaceSpec,
    grid: TorusGrid,
    config: RunConfig = None,
) -> Tuple[DistanceEstimate, dict]:
    """Achieved upper bound: grid L1 norm of g + h for an explicit h in S.

    The minimization (IRLS on a possibly coarser search grid) only proposes
    candidates; the reported value is always re-evaluated on the declared
    grid, so it is the grid L1 norm of an actual element of g + S.
    """
    config = config or RunConfig()
    gens = S.generator_list(config.primal_max_generators)
    g_decl = target.grid_values(grid)
    base_val = float(np.abs(g_decl).mean())
    best_val, best_x = base_val, None
    info = {"generators": len(gens), "search_grid": None, "irls_objective": None}
    if gens:
        sn = min(grid.n, config.search_grid_cap)
        sgrid = TorusGrid(grid.dim, sn)
        info["search_grid"] = sn
        A = np.column_stack([gen.grid_values(sgrid) for gen in gens])
        gs = target.grid_values(sgrid)
        obj, x = _accel.irls_minimize(A, gs, config.irls_iters, config.eps_irls)
        info["irls_objective"] = float(obj)
        res = g_decl.copy()
        for j, gen in enumerate(gens):
            if x[j] != 0:
                res += x[j] * gen.grid_values(grid)
        val = float(np.abs(res).mean())
        if val < best_val:
            best_val, best_x = val, x
    h_view = None
    if best_x is not None:
        h_view = TrigPoly.zero(target.dim)
        for j, gen in enumerate(gens):
            if abs(best_x[j]) > 1e-14:
                h_view = h_view + gen.as_poly() * best_x[j]
    est = DistanceEstimate(lower=0.0, upper=float(best_val), upper_witness=h_view)
    return est, info


def refute_contractivity(
    psi: Symbol,
    S: SubspaceSpec,
    config: RunConfig = None,
    grid: TorusGrid = None,
) -> Optional[dict]:
    """Search for f in M_Q with |integral(psi f)| > (1 + margin) ||f||_1.

    Seeded multi-start (the conj(psi) direction first, then random coefficient
    vectors) plus greedy coordinate descent on the ratio.  A candidate is
    returned only after re-validation: the numerator from exact pairings, the
    denominator re-evaluated on the declared grid and once more at double
    resolution with half the margin.
    """
    config = config or RunConfig()
    dim = psi.dim
    if grid is None:
        grid = TorusGrid(dim, config.grid_for(dim))
    gens = S.generator_list(config.refute_max_generators)
    if not gens:
        return None
    v = np.array([functional_against(psi, g) for g in gens], dtype=np.complex128)
    if float(np.abs(v).max()) < 1e-15:
        return None

    sn = min(grid.n, config.search_grid_cap)
    sgrid = TorusGrid(dim, sn)
    A = np.column_stack([gen.grid_values(sgrid) for gen in gens])

    starts = [_conj_direction(psi, gens)]
    rng = np.random.default_rng(config.seed)
    for _ in range(config.budget_iters):
        x = rng.standard_normal(len(gens)) + 1j * rng.standard_normal(len(gens))
        starts.append(x)

    deltas = np.array(
        [s * d for s in (1.0, 0.3, 0.1, 0.03, 0.01) for d in (1, -1, 1j, -1j)],
        dtype=np.complex128,
    )
    best_ratio, best_x = 0.0, None
    for x0 in starts:
        if x0 is None:
            continue
        scale = float(np.abs(x0).max())
        if scale == 0:
            continue
        ratio, x = _accel.pattern_search(A, v, x0 / scale, deltas, passes=3)
        if ratio > best_ratio:
            best_ratio, best_x = ratio, x

    if best_x is None or best_ratio <= 1.0 + config.refute_margin:
        return None

    num = abs(complex(np.dot(v, best_x)))
    den_decl = _span_l1(gens, best_x, grid)
    if den_decl <= 0 or num / den_decl <= 1.0 + config.refute_margin:
        return None
    dgrid = TorusGrid(dim, 2 * grid.n)
    den_dbl = _span_l1(gens, best_x, dgrid)
    if den_dbl <= 0 or num / den_dbl <= 1.0 + config.refute_margin / 2:
        return None

    f_view = TrigPoly.zero(dim)
    for j, gen in enumerate(gens):
        if abs(best_x[j]) > 1e-14:
            f_view = f_view + gen.as_poly() * best_x[j]
    return {
        "f": f_view,
        "ratio": float(num / den_decl),
        "ratio_double": float(num / den_dbl),
        "numerator": float(num),
        "coords": best_x,
    }


def _span_l1(gens, x, grid) -> float:
    res = None
    for j, gen in enumerate(gens):
        if x[j] != 0:
            vals = x[j] * gen.grid_values(grid)
            res = vals if res is None else res + vals
    if res is None:
        return 0.0
    return float(np.abs(res).mean())


def _conj_direction(psi: Symbol, gens) -> Optional[np.ndarray]:
    """Coordinates of conj(psi) in the generator list, when expressible."""
    x = np.zeros(len(gens), dtype=np.complex128)
    if isinstance(psi, KernelCombo):
        # full kernel-conjugate basis: generator j is conj(S(., z_j))
        for j, gen in enumerate(gens):
            if gen.kind != "conj_combo":
                continue
            if len(gen.combo.points) == 1 and gen.combo.coeffs[0] == 1.0:
                try:
                    idx = psi.points.index(gen.combo.points[0])
                except ValueError:
                    continue
                x[j] = psi.coeffs[idx].conjugate()
        return x if np.abs(x).max() > 0 else None
    for j, gen in enumerate(gens):
        if gen.kind != "poly" or len(gen.poly.coeffs) != 1:
            continue
        ((k, a),) = gen.poly.coeffs.items()
        src = psi.coeffs.get(tuple(-e for e in k))
        if src is not None:
            x[j] = src.conjugate() / a
    return x if np.abs(x).max() > 0 else None


# ----------------------------------------------------------- verdict engine


def subspace_for(
    Q: QuotientModule, psi: Symbol, exclude_symbol: bool
) -> SubspaceSpec:
    """M~ (exclude_symbol=True) or M_Q (False) for the given module.

    The Q^conj factor is presented exactly: conjugated kernel combinations for
    zero_based modules (an orthonormal complement of psi computed through the
    Cholesky factor of the Gram matrix), conjugated monomials otherwise.
    """
    if Q.kind == "zero_based":
        degree_cap = 2 * Q.trunc
        if exclude_symbol:
            c = np.asarray(psi.coeffs, dtype=np.complex128)
            L = np.linalg.cholesky(Q.gram)
            y = L.conj().T @ c
            qmat, _ = np.linalg.qr(
                np.column_stack([y, np.eye(len(c))]), mode="reduced"
            )
            basis = []
            for j in range(1, len(c)):
                u = np.linalg.solve(L.conj().T, qmat[:, j])
                basis.append(
                    ConjGenerator.from_conj_combo(
                        KernelCombo(Q.points, u), view_degree=Q.trunc
                    )
                )
        else:
            basis = []
            for j in range(Q.size):
                e = np.zeros(Q.size, dtype=np.complex128)
                e[j] = 1.0
                basis.append(
                    ConjGenerator.from_conj_combo(
                        KernelCombo(Q.points, e), view_degree=Q.trunc
                    )
                )
        return SubspaceSpec(
            dim=Q.dim,
            qconj_basis=tuple(basis),
            include_mixed_to_degree=degree_cap,
            include_h2zero_to_degree=degree_cap,
        )

    if Q.kind == "homogeneous":
        module_degree = Q.params["m"]
    elif Q.kind == "onevar":
        module_degree = Q.params["d"]
    else:
        module_degree = Q.trunc
    degree_cap = max(2, 2 * module_degree)
    if exclude_symbol:
        if not isinstance(psi, TrigPoly):
            raise ValueError("monomial-basis modules need a polynomial symbol")
        c = Q.project(psi)
        nc = float(np.linalg.norm(c))
        if nc == 0:
            raise ZeroFunction("cannot remove the zero direction")
        qmat, _ = np.linalg.qr(
            np.column_stack([c / nc, np.eye(Q.size)]), mode="reduced"
        )
        basis = tuple(
            ConjGenerator.from_poly(Q.reconstruct(qmat[:, j]).conj())
            for j in range(1, Q.size)
        )
    else:
        basis = tuple(
            ConjGenerator.from_poly(Q.basis_poly(j).conj()) for j in range(Q.size)
        )
    return SubspaceSpec(
        dim=Q.dim,
        qconj_basis=basis,
        include_mixed_to_degree=degree_cap,
        include_h2zero_to_degree=degree_cap,
    )


def symbol_of(Q: QuotientModule, X: ModuleMap) -> Symbol:
    """psi = X(P_Q 1): a KernelCombo on zero_based modules, else a TrigPoly."""
    if Q.kind == "zero_based":
        from .quotient import weak_lift_symbol

        return weak_lift_symbol(X)
    return Q.reconstruct(X.matrix @ Q.p_q_one())


def _symbol_norm_sq(psi: Symbol) -> float:
    if isinstance(psi, KernelCombo):
        return psi.norm_sq()
    return psi.l2_norm_sq()


def symbol_verdict(
    Q: QuotientModule,
    psi: Symbol,
    config: RunConfig = None,
    extras: dict = None,
    do_refute: bool = True,
) -> Verdict:
    """Distance verdict for the symbol psi on Q (the shared engine)."""
    config = config or RunConfig()
    extras = dict(extras or {})
    dim = Q.dim
    grid = TorusGrid(dim, config.grid_for(dim))
    extras.setdefault("grid_points_per_axis", grid.n)

    s2 = _symbol_norm_sq(psi)
    extras["symbol_norm_sq"] = s2
    if s2 <= 1e-30:
        est = DistanceEstimate(lower=1.0, upper=None)
        return Verdict(
            outcome=CERTIFIED_YES,
            estimate=est,
            diagnostics="zero symbol: the zero function is a lift",
            extras=extras,
        )

    target = Target(psi, s2)
    S_tilde = subspace_for(Q, psi, exclude_symbol=True)
    low = dual_lower_bound(target, S_tilde, config)
    if low.lower >= 1.0 - config.yes_tol:
        diag = (
            f"dual certificate value {low.lower:.12g} >= 1 - yes_tol; "
            f"orthogonality residual {low.lower_witness.orthogonality_residual:.3g}"
        )
        return Verdict(
            outcome=CERTIFIED_YES,
            estimate=low,
            diagnostics=diag,
            extras=extras,
        )

    witness = None
    if do_refute:
        S_full = subspace_for(Q, psi, exclude_symbol=False)
        witness = refute_contractivity(psi, S_full, config, grid)

    up, info = upper_bound_min(target, S_tilde, grid, config)
    extras["primal"] = info
    est = DistanceEstimate(
        lower=low.lower,
        upper=up.upper,
        lower_witness=low.lower_witness,
        upper_witness=up.upper_witness,
    )
    if est.upper is not None and est.lower > est.upper + 1e-9:
        raise NumericalError(
            f"bound inversion: lower {est.lower} > upper {est.upper}"
        )

    if witness is not None:
        diag = (
            f"refutation witness: |X_Q f| / ||f||_1 = {witness['ratio']:.6g} "
            f"(double grid {witness['ratio_double']:.6g}); upper bound {est.upper:.6g}"
        )
        return Verdict(
            outcome=CERTIFIED_NO,
            estimate=est,
            diagnostics=diag,
            refutation=witness,
            extras=extras,
        )
    if est.upper <= 1.0 - config.no_margin:
        diag = (
            f"upper bound {est.upper:.6g} <= 1 - no_margin with explicit h "
            f"({info['generators']} generators)"
        )
        return Verdict(
            outcome=CERTIFIED_NO, estimate=est, diagnostics=diag, extras=extras
        )
    diag = (
        f"bounds [{est.lower:.6g}, {est.upper:.6g}] do not separate at "
        f"yes_tol={config.yes_tol:g}, no_margin={config.no_margin:g}"
    )
    return Verdict(
        outcome=INCONCLUSIVE, estimate=est, diagnostics=diag, extras=extras
    )


def lift_verdict(Q: QuotientModule, X: ModuleMap, config: RunConfig = None) -> Verdict:
    """Certificate verdict on whether X lifts to a Schur multiplier."""
    config = config or RunConfig()
    if not is_module_map(X, config.module_map_tol):
        raise NotAModuleMap("operator does not commute with the model shifts")
    nrm = operator_norm(X)
    if nrm > 1.0 + config.contraction_slack:
        raise NotAContraction(f"operator norm {nrm:.12g} exceeds 1")
    psi = symbol_of(Q, X)
    return symbol_verdict(Q, psi, config, extras={"operator_norm": nrm})


def perturb_verdict(f: TrigPoly, config: RunConfig = None) -> Verdict:
    """Does some g orthogonal to f make f + g a Schur function?

    Equivalent to dist_L1(conj(f)/||f||_2^2, L_n) >= 1 with L_n the mixed
    part plus H2_0; decided by the same dual/primal machinery (there is no
    module, hence no refutation functional).
    """
    config = config or RunConfig()
    for k in f.coeffs:
        if classify_index(k) not in (CONSTANT, ANALYTIC):
            raise NotAnalytic(f"index {k} is not analytic")
    if f.is_zero():
        raise ZeroFunction("perturbation target must be nonzero")
    dim = f.dim
    grid = TorusGrid(dim, config.grid_for(dim))
    degree_cap = max(2, 2 * f.total_degree())
    S = SubspaceSpec(
        dim=dim,
        qconj_basis=(),
        include_mixed_to_degree=degree_cap,
        include_h2zero_to_degree=degree_cap,
    )
    s2 = f.l2_norm_sq()
    target = Target(f, s2)
    extras = {"symbol_norm_sq": s2, "grid_points_per_axis": grid.n}

    low = dual_lower_bound(target, S, config)
    if low.lower >= 1.0 - config.yes_tol:
        diag = f"dual certificate value {low.lower:.12g} >= 1 - yes_tol"
        return Verdict(CERTIFIED_YES, low, diag, extras=extras)
    up, info = upper_bound_min(target, S, grid, config)
    extras["primal"] = info
    est = DistanceEstimate(
        lower=low.lower,
        upper=up.upper,
        lower_witness=low.lower_witness,
        upper_witness=up.upper_witness,
    )
    if est.upper is not None and est.lower > est.upper + 1e-9:
        raise NumericalError(
            f"bound inversion: lower {est.lower} > upper {est.upper}"
        )
    if est.upper <= 1.0 - config.no_margin:
        diag = f"upper bound {est.upper:.6g} <= 1 - no_margin with explicit h"
        return Verdict(CERTIFIED_NO, est, diag, extras=extras)
    diag = f"bounds [{est.lower:.6g}, {est.upper:.6g}] do not separate"
    return Verdict(INCONCLUSIVE, est, diag, extras=extras)


def cf_verdict(p: TrigPoly, m: int, config: RunConfig = None) -> Verdict:
    """Coefficient-body verdict: can the degree <= m part p be completed by
    higher-order terms to a Schur function?  Equivalent to lifting S_p on the
    homogeneous module of degree m."""
    config = config or RunConfig()
    for k in p.coeffs:
        if classify_index(k) not in (CONSTANT, ANALYTIC):
            raise NotAnalytic(f"index {k} is not analytic")
    if p.total_degree() > m:
        raise DegreeTooHigh(f"degree {p.total_degree()} exceeds m = {m}")
    Q = QuotientModule.homogeneous(m, p.dim)
    X = Q.compress(p)
    return lift_verdict(Q, X, config)
