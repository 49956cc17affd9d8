"""Sparse trigonometric (Laurent) polynomials on the n-torus.

A TrigPoly is a finite Fourier sum f = sum_k a_k z^k with k in Z^n, stored as
a dict from exponent tuple to complex coefficient.  L2 structure (inner
products, Parseval norms) is exact in coefficients; L1 and sup norms are
estimated on equispaced tensor grids.  The index classification
Constant/Analytic/Coanalytic/Mixed mirrors the orthogonal splitting
L2 = conj(H2) + H2_0 + (mixed part).
"""

from __future__ import annotations

from typing import Dict, Iterable, Mapping, Tuple

import numpy as np

from . import _accel
from .errors import DimensionMismatch, EmptyGrid, PoleAtZero

Index = Tuple[int, ...]

CONSTANT = "Constant"
ANALYTIC = "Analytic"
COANALYTIC = "Coanalytic"
MIXED = "Mixed"

_TORUS_TOL = 1e-9


def classify_index(k: Index) -> str:
    """Partition label of a Fourier exponent: one of the four component names.

    Constant iff k = 0; Analytic iff k >= 0 and k != 0; Coanalytic iff k <= 0
    and k != 0; Mixed when the signs genuinely mix.
    """
    if all(e == 0 for e in k):
        return CONSTANT
    if all(e >= 0 for e in k):
        return ANALYTIC
    if all(e <= 0 for e in k):
        return COANALYTIC
    return MIXED


_TARGET_LABELS = {
    "H2": (CONSTANT, ANALYTIC),
    "H2zero": (ANALYTIC,),
    "H2conj": (CONSTANT, COANALYTIC),
    "Mixed": (MIXED,),
    "Constant": (CONSTANT,),
}


class TrigPoly:
    """Immutable Laurent polynomial on the torus T^dim.

    coeffs maps exponent tuples of length dim to nonzero complex numbers;
    exact zeros are pruned at construction so equality of supports is
    meaningful.
    """

    __slots__ = ("dim", "coeffs")

    def __init__(self, dim: int, coeffs: Mapping[Index, complex]):
        if dim < 1:
            raise DimensionMismatch(f"dim must be >= 1, got {dim}")
        clean: Dict[Index, complex] = {}
        for k, a in coeffs.items():
            k = tuple(int(e) for e in k)
            if len(k) != dim:
                raise DimensionMismatch(
                    f"index {k} has length {len(k)}, expected {dim}"
                )
            a = complex(a)
            if a != 0:
                clean[k] = clean.get(k, 0) + a
                if clean[k] == 0:
                    del clean[k]
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "coeffs", clean)

    def __setattr__(self, name, value):
        raise AttributeError("TrigPoly is immutable")

    # ----------------------------------------------------------- builders

    @classmethod
    def zero(cls, dim: int) -> "TrigPoly":
        return cls(dim, {})

    @classmethod
    def constant(cls, value: complex, dim: int) -> "TrigPoly":
        return cls(dim, {(0,) * dim: value})

    @classmethod
    def monomial(cls, k: Iterable[int], coeff: complex = 1.0) -> "TrigPoly":
        k = tuple(int(e) for e in k)
        return cls(len(k), {k: coeff})

    # ---------------------------------------------------------- structure

    def is_zero(self) -> bool:
        return not self.coeffs

    def total_degree(self) -> int:
        """Max of sum(|k_i|) over the support; 0 for the zero polynomial."""
        if not self.coeffs:
            return 0
        return max(sum(abs(e) for e in k) for k in self.coeffs)

    def sorted_terms(self):
        return sorted(self.coeffs.items())

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TrigPoly)
            and self.dim == other.dim
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.dim, frozenset(self.coeffs.items())))

    def __repr__(self):
        if not self.coeffs:
            return f"TrigPoly(dim={self.dim}, 0)"
        parts = [f"{a!r}*z^{k}" for k, a in self.sorted_terms()]
        return f"TrigPoly(dim={self.dim}, " + " + ".join(parts) + ")"

    # ---------------------------------------------------------- operators

    def __add__(self, other: "TrigPoly") -> "TrigPoly":
        self._check_dim(other)
        out = dict(self.coeffs)
        for k, a in other.coeffs.items():
            out[k] = out.get(k, 0) + a
        return TrigPoly(self.dim, out)

    def __sub__(self, other: "TrigPoly") -> "TrigPoly":
        return self + (other * -1)

    def __neg__(self) -> "TrigPoly":
        return self * -1

    def __mul__(self, other):
        if isinstance(other, TrigPoly):
            self._check_dim(other)
            out: Dict[Index, complex] = {}
            for k1, a1 in self.coeffs.items():
                for k2, a2 in other.coeffs.items():
                    k = tuple(e1 + e2 for e1, e2 in zip(k1, k2))
                    out[k] = out.get(k, 0) + a1 * a2
            return TrigPoly(self.dim, out)
        s = complex(other)
        return TrigPoly(self.dim, {k: a * s for k, a in self.coeffs.items()})

    __rmul__ = __mul__

    def conj(self) -> "TrigPoly":
        """Pointwise complex conjugate on the torus: a_k -> conj(a_k) at -k."""
        return TrigPoly(
            self.dim,
            {tuple(-e for e in k): a.conjugate() for k, a in self.coeffs.items()},
        )

    def _check_dim(self, other: "TrigPoly"):
        if self.dim != other.dim:
            raise DimensionMismatch(f"dims differ: {self.dim} vs {other.dim}")

    # ----------------------------------------------------------- analysis

    def evaluate(self, z) -> complex:
        """Point value sum a_k z^k.

        Negative exponents use conj(z_i)^{|k_i|} on the unit circle (the torus
        meaning of z_i^{-1}), 1/z_i^{|k_i|} off it, and raise PoleAtZero when
        z_i = 0.
        """
        z = [complex(v) for v in z]
        if len(z) != self.dim:
            raise DimensionMismatch(f"point has length {len(z)}, expected {self.dim}")
        total = 0j
        for k, a in self.coeffs.items():
            term = a
            for zi, e in zip(z, k):
                if e >= 0:
                    term *= zi ** e
                elif abs(abs(zi) - 1.0) <= _TORUS_TOL:
                    term *= zi.conjugate() ** (-e)
                elif zi == 0:
                    raise PoleAtZero(
                        f"exponent {e} with zero coordinate in index {k}"
                    )
                else:
                    term *= zi ** e
            total += term
        return total

    def component(self, target: str) -> "TrigPoly":
        """Coefficient restriction to one block of the L2 splitting.

        target is one of H2, H2zero, H2conj, Mixed, Constant.  The restriction
        is idempotent and the four basic labels tile the support.
        """
        try:
            labels = _TARGET_LABELS[target]
        except KeyError:
            raise ValueError(f"unknown component target {target!r}") from None
        return TrigPoly(
            self.dim,
            {k: a for k, a in self.coeffs.items() if classify_index(k) in labels},
        )

    def l2_norm_sq(self) -> float:
        return sum(abs(a) ** 2 for a in self.coeffs.values())

    def grid_values(self, grid: "TorusGrid") -> np.ndarray:
        """Values at all grid nodes, flat C order (axis 0 most significant)."""
        if grid.dim != self.dim:
            raise DimensionMismatch(f"grid dim {grid.dim} != poly dim {self.dim}")
        if not self.coeffs:
            return np.zeros(grid.size, dtype=np.complex128)
        terms = self.sorted_terms()
        coeffs = np.array([a for _, a in terms], dtype=np.complex128)
        table = np.empty((len(terms), self.dim, grid.n), dtype=np.complex128)
        for t, (k, _) in enumerate(terms):
            for a in range(self.dim):
                e = k[a]
                # grid nodes are unimodular, so z^-m is conj(z)^m there
                table[t, a] = grid.axis ** e if e >= 0 else np.conj(grid.axis) ** (-e)
        return _accel.combine_product_table(coeffs, table, grid.n)

    # -------------------------------------------------------------- json

    def to_json_dict(self) -> dict:
        return {
            "dim": self.dim,
            "terms": [
                {"k": list(k), "re": a.real, "im": a.imag}
                for k, a in self.sorted_terms()
            ],
        }

    @classmethod
    def from_json_dict(cls, obj: dict) -> "TrigPoly":
        dim = int(obj["dim"])
        coeffs: Dict[Index, complex] = {}
        for term in obj.get("terms", []):
            k = tuple(int(e) for e in term["k"])
            coeffs[k] = coeffs.get(k, 0) + complex(term.get("re", 0.0), term.get("im", 0.0))
        return cls(dim, coeffs)


def arithmetic(p: TrigPoly, q: TrigPoly, op: str, scalar: complex = None) -> TrigPoly:
    """Combine two polynomials; scalar, when given, multiplies q first."""
    if scalar is not None:
        q = q * scalar
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown op {op!r}")


def conjugate(p: TrigPoly) -> TrigPoly:
    return p.conj()


def inner_l2(p: TrigPoly, q: TrigPoly) -> complex:
    """Parseval pairing sum_k p_k conj(q_k), exact in coefficients."""
    p._check_dim(q)
    small, big = (p.coeffs, q.coeffs) if len(p.coeffs) <= len(q.coeffs) else (q.coeffs, p.coeffs)
    total = 0j
    for k in small:
        if k in big:
            total += p.coeffs[k] * q.coeffs[k].conjugate()
    return total


def evaluate(p: TrigPoly, z) -> complex:
    return p.evaluate(z)


def component_project(p: TrigPoly, target: str) -> TrigPoly:
    return p.component(target)


class TorusGrid:
    """Equispaced tensor grid of n**dim points exp(2*pi*i*j/n) per axis."""

    __slots__ = ("dim", "n", "axis")

    def __init__(self, dim: int, points_per_axis: int):
        if points_per_axis < 1:
            raise EmptyGrid(f"points_per_axis must be >= 1, got {points_per_axis}")
        if dim < 1:
            raise DimensionMismatch(f"dim must be >= 1, got {dim}")
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "n", int(points_per_axis))
        object.__setattr__(
            self,
            "axis",
            np.exp(2j * np.pi * np.arange(points_per_axis) / points_per_axis),
        )

    def __setattr__(self, name, value):
        raise AttributeError("TorusGrid is immutable")

    @property
    def size(self) -> int:
        return self.n ** self.dim

    def __repr__(self):
        return f"TorusGrid(dim={self.dim}, n={self.n})"


def grid_norms(p: TrigPoly, grid: TorusGrid) -> dict:
    """Grid estimates {l1, sup}: mean and max of |p| over the nodes.

    Both converge to the true torus norms as the per-axis count grows.
    """
    vals = np.abs(p.grid_values(grid))
    return {"l1": float(vals.mean()), "sup": float(vals.max())}
