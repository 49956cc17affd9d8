"""Canonical JSON for certificates and reports.

Reports are byte-identical across runs for identical inputs: keys sorted,
two-space indent, trailing newline, no timestamps, complex numbers as
{"re": x, "im": y}.
"""

from __future__ import annotations

import dataclasses
import json

import numpy as np

from .config import RunConfig
from .interp import AglerWitness
from .kernels import KernelCombo
from .lifting import CERTIFIED_NO, Verdict
from .tpoly import TrigPoly


def canonical_json(obj) -> str:
    return json.dumps(to_jsonable(obj), sort_keys=True, indent=2) + "\n"


def complex_json(z: complex) -> dict:
    z = complex(z)
    return {"re": z.real, "im": z.imag}


def combo_json(c: KernelCombo) -> dict:
    return {
        "points": [[complex_json(v) for v in p] for p in c.points],
        "coeffs": [complex_json(v) for v in c.coeffs],
    }


def to_jsonable(x):
    """Recursive conversion to plain JSON types."""
    if x is None or isinstance(x, (bool, int, str)):
        return x
    if isinstance(x, float):
        return x if np.isfinite(x) else repr(x)
    if isinstance(x, complex):
        return complex_json(x)
    if isinstance(x, (np.bool_,)):
        return bool(x)
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.floating):
        return to_jsonable(float(x))
    if isinstance(x, np.complexfloating):
        return complex_json(complex(x))
    if isinstance(x, TrigPoly):
        return x.to_json_dict()
    if isinstance(x, KernelCombo):
        return combo_json(x)
    if isinstance(x, np.ndarray):
        return [to_jsonable(v) for v in x.tolist()]
    if dataclasses.is_dataclass(x) and not isinstance(x, type):
        return {
            f.name: to_jsonable(getattr(x, f.name)) for f in dataclasses.fields(x)
        }
    if isinstance(x, dict):
        return {str(k): to_jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [to_jsonable(v) for v in x]
    return str(x)


def verdict_report(v: Verdict, config: RunConfig, dim: int = None) -> dict:
    """The external report shape for any distance verdict."""
    est = v.estimate
    certificate = None
    if v.extras.get("certificate_kind"):
        certificate = {"kind": v.extras["certificate_kind"]}
        if certificate["kind"] == "schur_interpolant":
            certificate["interpolant"] = to_jsonable(v.extras["schur_interpolant"])
            certificate["report"] = to_jsonable(
                v.extras["schur_interpolant_report"]
            )
    elif est.lower_witness is not None:
        certificate = {
            "kind": "dual_symbol",
            "symbol": to_jsonable(est.lower_witness.symbol),
            "value": est.lower_witness.value,
            "orthogonality_residual": est.lower_witness.orthogonality_residual,
            "sup_estimate": est.lower_witness.sup_estimate,
        }

    witness = None
    if v.refutation is not None:
        witness = dict(v.refutation)
        witness.setdefault("kind", "refutation")
        witness.pop("coords", None)
        witness = to_jsonable(witness)
    elif v.outcome == CERTIFIED_NO and est.upper_witness is not None:
        witness = {
            "kind": "upper_bound",
            "h": to_jsonable(est.upper_witness),
            "upper": est.upper,
        }

    extras = {k: to_jsonable(val) for k, val in v.extras.items()}
    return {
        "outcome": v.outcome,
        "lower": est.lower,
        "upper": est.upper,
        "certificate": certificate,
        "witness": witness,
        "diagnostics": v.diagnostics,
        "details": extras,
        "config_echo": config.echo(dim),
    }


def pick_report(result: dict) -> dict:
    return {
        "psd": bool(result["psd"]),
        "min_eigenvalue": float(result["min_eigenvalue"]),
        "matrix": to_jsonable(result["matrix"]),
    }


def agler_report(result: dict, config: RunConfig) -> dict:
    witness = result.get("witness")
    out = {
        "feasible": result["feasible"],
        "witness": None,
        "report": to_jsonable(result.get("report", {})),
        "config_echo": config.echo(2),
    }
    if isinstance(witness, AglerWitness):
        out["witness"] = {
            "gamma": to_jsonable(witness.gamma),
            "delta": to_jsonable(witness.delta),
            "residual": witness.residual,
        }
    return out
