"""Run configuration shared by the verdict engines and the CLI.

One frozen dataclass carries every tolerance, budget and grid size, and is
echoed verbatim into each JSON report so a verdict can be reproduced from the
report alone.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional


@dataclass(frozen=True)
class RunConfig:
    # grid resolution; None picks a per-dimension default
    grid_points_per_axis: Optional[int] = None
    # truncation degree for TrigPoly views; zero-based modules use twice this
    trunc_degree: int = 12
    seed: int = 0
    # random multi-starts in the contractivity refuter
    budget_iters: int = 32
    # verdict thresholds: CertifiedYes needs lower >= 1 - yes_tol,
    # CertifiedNo needs upper <= 1 - no_margin
    yes_tol: float = 1e-6
    no_margin: float = 1e-3
    refute_margin: float = 1e-4
    ortho_tol: float = 1e-10
    eps_irls: float = 1e-8
    irls_iters: int = 40
    # primal side caps: generator count and per-axis search grid
    primal_max_generators: int = 120
    refute_max_generators: int = 40
    search_grid_cap: int = 96
    module_map_tol: float = 1e-8
    contraction_slack: float = 1e-8
    psd_tol: float = 1e-8
    agler_max_iters: int = 400
    output_path: Optional[str] = None

    def grid_for(self, dim: int) -> int:
        if self.grid_points_per_axis is not None:
            return self.grid_points_per_axis
        if dim <= 2:
            return 256
        if dim == 3:
            return 64
        return 16

    def module_trunc(self) -> int:
        return 2 * self.trunc_degree

    def with_overrides(self, **kwargs) -> "RunConfig":
        return replace(self, **kwargs)

    def echo(self, dim: Optional[int] = None) -> dict:
        """Config snapshot for reports; grid resolved when dim is known."""
        out = {
            "grid_points_per_axis": (
                self.grid_for(dim) if dim is not None else self.grid_points_per_axis
            ),
            "trunc_degree": self.trunc_degree,
            "seed": self.seed,
            "budget_iters": self.budget_iters,
            "yes_tol": self.yes_tol,
            "no_margin": self.no_margin,
            "refute_margin": self.refute_margin,
            "ortho_tol": self.ortho_tol,
            "eps_irls": self.eps_irls,
            "irls_iters": self.irls_iters,
            "primal_max_generators": self.primal_max_generators,
            "refute_max_generators": self.refute_max_generators,
            "search_grid_cap": self.search_grid_cap,
            "module_map_tol": self.module_map_tol,
            "contraction_slack": self.contraction_slack,
            "psd_tol": self.psd_tol,
            "agler_max_iters": self.agler_max_iters,
        }
        return out
