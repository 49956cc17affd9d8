"""Certificates for Schur interpolation and commutant lifting on the polydisc.

The package decides, with machine-checkable certificates, whether
Nevanlinna-Pick data on the unit polydisc admits a Schur-class interpolant
and whether module maps on finite-dimensional quotients of the Hardy space
admit commutant lifts.  Verdicts are CertifiedYes, CertifiedNo, or an honest
Inconclusive; every Yes/No carries a witness that can be re-checked
independently of the search that found it.
"""

from ._accel import active_backend, select_backend
from .config import RunConfig
from .errors import (
    NumericalError,
    ParseError,
    PolyliftError,
    ValidationError,
)
from .interp import (
    InterpolationProblem,
    agler_feasibility,
    eg_construct,
    interpolation_verdict,
    pick_matrix_check,
    solve_psi,
)
from .kernels import KernelCombo, gram_matrix, szego_series, szego_value
from .lifting import (
    CERTIFIED_NO,
    CERTIFIED_YES,
    INCONCLUSIVE,
    Verdict,
    cf_verdict,
    functional_value,
    lift_verdict,
    pair_integral,
    perturb_verdict,
)
from .quotient import (
    ModuleMap,
    QuotientModule,
    compress,
    diagonal_map,
    is_module_map,
    model_shifts,
    operator_norm,
    weak_lift_symbol,
)
from .tpoly import TorusGrid, TrigPoly, grid_norms

__version__ = "0.1.0"

__all__ = [
    "CERTIFIED_NO",
    "CERTIFIED_YES",
    "INCONCLUSIVE",
    "InterpolationProblem",
    "KernelCombo",
    "ModuleMap",
    "NumericalError",
    "ParseError",
    "PolyliftError",
    "QuotientModule",
    "RunConfig",
    "TorusGrid",
    "TrigPoly",
    "ValidationError",
    "Verdict",
    "active_backend",
    "agler_feasibility",
    "cf_verdict",
    "compress",
    "diagonal_map",
    "eg_construct",
    "functional_value",
    "gram_matrix",
    "grid_norms",
    "interpolation_verdict",
    "is_module_map",
    "lift_verdict",
    "model_shifts",
    "operator_norm",
    "pair_integral",
    "perturb_verdict",
    "pick_matrix_check",
    "select_backend",
    "solve_psi",
    "szego_series",
    "szego_value",
    "weak_lift_symbol",
]
