"""Command line front end.

Subcommands: pick, interp, lift, perturb, cf, agler, validate, demo.  All
input and output is JSON; reports are canonical (sorted keys, stable layout)
so identical inputs produce byte-identical output.  Exit codes: 0 for
CertifiedYes / psd / feasible, 1 for CertifiedNo / not psd / infeasible,
2 for Inconclusive / unknown, 3 parse error, 4 validation error, 5 numerical
error.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import serialize
from .config import RunConfig
from .errors import ParseError, PolyliftError, ValidationError
from .interp import (
    InterpolationProblem,
    agler_feasibility,
    eg_construct,
    interpolation_verdict,
    pick_matrix_check,
    solve_psi,
)
from .lifting import CERTIFIED_NO, CERTIFIED_YES, cf_verdict, lift_verdict, perturb_verdict
from .quotient import ModuleMap, QuotientModule
from .tpoly import TrigPoly

OUTCOME_EXIT = {CERTIFIED_YES: 0, CERTIFIED_NO: 1, "Inconclusive": 2}


def _load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise ParseError(f"no such file: {path}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON in {path}: {exc}") from None


def _emit(report, out_path):
    text = serialize.canonical_json(report)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _config_from(args) -> RunConfig:
    return RunConfig(
        grid_points_per_axis=args.grid,
        trunc_degree=args.degree,
        seed=args.seed,
        budget_iters=args.budget,
        yes_tol=args.tol_yes,
        no_margin=args.tol_no,
        output_path=args.out,
    )


def _complex_from(obj) -> complex:
    return complex(obj["re"], obj.get("im", 0.0))


# ------------------------------------------------------------- subcommands


def cmd_pick(args) -> int:
    config = _config_from(args)
    prob = InterpolationProblem.from_json_dict(_load_json(args.problem))
    result = pick_matrix_check(prob)
    _emit(serialize.pick_report(result), config.output_path)
    return 0 if result["psd"] else 1


def cmd_interp(args) -> int:
    config = _config_from(args)
    prob = InterpolationProblem.from_json_dict(_load_json(args.problem))
    v = interpolation_verdict(prob, config)
    _emit(serialize.verdict_report(v, config, prob.n), config.output_path)
    return OUTCOME_EXIT[v.outcome]


def cmd_lift(args) -> int:
    config = _config_from(args)
    Q = QuotientModule.from_json_dict(_load_json(args.module))
    if args.symbol:
        p = TrigPoly.from_json_dict(_load_json(args.symbol))
        X = Q.compress(p)
    elif args.matrix:
        rows = _load_json(args.matrix)["matrix"]
        M = np.array(
            [[_complex_from(v) for v in row] for row in rows], dtype=np.complex128
        )
        X = ModuleMap(Q, M)
    else:
        raise ValidationError("lift needs --symbol or --matrix")
    v = lift_verdict(Q, X, config)
    _emit(serialize.verdict_report(v, config, Q.dim), config.output_path)
    return OUTCOME_EXIT[v.outcome]


def cmd_perturb(args) -> int:
    config = _config_from(args)
    f = TrigPoly.from_json_dict(_load_json(args.function))
    v = perturb_verdict(f, config)
    _emit(serialize.verdict_report(v, config, f.dim), config.output_path)
    return OUTCOME_EXIT[v.outcome]


def cmd_cf(args) -> int:
    config = _config_from(args)
    p = TrigPoly.from_json_dict(_load_json(args.symbol))
    v = cf_verdict(p, args.order, config)
    _emit(serialize.verdict_report(v, config, p.dim), config.output_path)
    return OUTCOME_EXIT[v.outcome]


def cmd_agler(args) -> int:
    config = _config_from(args)
    prob = InterpolationProblem.from_json_dict(_load_json(args.problem))
    result = agler_feasibility(prob, config)
    _emit(serialize.agler_report(result, config), config.output_path)
    if result["feasible"] is True:
        return 0
    if result["feasible"] is False:
        return 1
    return 2


def cmd_validate(args) -> int:
    config = _config_from(args)
    prob = InterpolationProblem.from_json_dict(_load_json(args.problem))
    report = {"status": "ok", "problem": prob.to_json_dict()}
    _emit(report, config.output_path)
    return 0


def cmd_demo(args) -> int:
    """Run the worked-example suite; exit 0 iff every expected outcome holds."""
    config = _config_from(args)
    checks = []

    def check(name, expected, got):
        checks.append(
            {
                "name": name,
                "expected": serialize.to_jsonable(expected),
                "got": serialize.to_jsonable(got),
                "pass": expected == got,
            }
        )

    s = 1 / np.sqrt(2)
    p = TrigPoly(2, {(1, 0): s, (0, 1): s})
    check("homogeneous_symbol_not_liftable", CERTIFIED_NO, cf_verdict(p, 1, config).outcome)

    prob2 = InterpolationProblem(((0, 0), (0.5, 0)), (0, 0.5))
    psi = solve_psi(prob2)
    c_ok = np.allclose(psi.coeffs, [-1.5, 1.5], atol=1e-9)
    i_ok = max(
        abs(psi.evaluate(z) - w) for z, w in zip(prob2.nodes, prob2.targets)
    ) <= 1e-10
    check("gram_solve_coefficients", True, bool(c_ok and i_ok))

    p1 = InterpolationProblem(((0,), (0.5,)), (0, 0.5))
    check("pick_psd_boundary_case", True, pick_matrix_check(p1)["psd"])
    p1b = InterpolationProblem(((0,), (0.5,)), (0, 0.9))
    check("pick_not_psd", False, pick_matrix_check(p1b)["psd"])

    f = TrigPoly(2, {(1, 0): 0.3, (0, 1): 0.4})
    v = perturb_verdict(f, config)
    check("perturbation_yes", CERTIFIED_YES, v.outcome)
    check("perturbation_lower_bound", True, abs(v.estimate.lower - 1.2) <= 1e-9)
    v2 = perturb_verdict(TrigPoly.constant(2.0, 2), config)
    check("perturbation_no", CERTIFIED_NO, v2.outcome)

    omega = np.exp(2j * np.pi / 3)
    b1 = 0.6 * np.array([1, omega, omega ** 2])
    b2 = 0.6 * np.array([1, omega ** 2, omega])
    nodes3 = tuple((b1[j], b2[j]) for j in range(3))
    out = eg_construct(nodes3, (0.3, 0, 0), [b1, b2])
    check("frame_interpolant_exact", True, out["report"]["max_interp_error"] <= 1e-10)

    a1 = agler_feasibility(InterpolationProblem(((0, 0),), (0.5,)), config)
    check("agler_one_node_feasible", True, a1["feasible"])
    a2 = agler_feasibility(prob2, config)
    check("agler_two_node_feasible", True, a2["feasible"])
    a3 = agler_feasibility(
        InterpolationProblem(((0, 0), (0.5, 0)), (0, 0.9)), config
    )
    check("agler_infeasible", False, a3["feasible"])

    bad = interpolation_verdict(
        InterpolationProblem(((0, 0), (0.5, 0)), (0, 0.9)), config
    )
    check("interp_negative_control", CERTIFIED_NO, bad.outcome)

    check("cf_monomial_liftable", CERTIFIED_YES,
          cf_verdict(TrigPoly.monomial((1, 1)), 2, config).outcome)

    ok = all(c["pass"] for c in checks)
    report = {
        "all_passed": ok,
        "checks": checks,
        "config_echo": config.echo(),
    }
    _emit(report, config.output_path)
    return 0 if ok else 1


# -------------------------------------------------------------------- main


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--grid", type=int, default=None, metavar="N",
                        help="grid points per axis (default: per-dimension)")
    common.add_argument("--degree", type=int, default=12, metavar="D",
                        help="truncation degree (default 12)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget", type=int, default=32, dest="budget",
                        help="refutation search multi-starts")
    common.add_argument("--tol-yes", type=float, default=1e-6, dest="tol_yes")
    common.add_argument("--tol-no", type=float, default=1e-3, dest="tol_no")
    common.add_argument("--out", default=None, metavar="FILE",
                        help="write the JSON report here instead of stdout")

    ap = argparse.ArgumentParser(
        prog="polylift",
        description="Certificates for Schur interpolation and commutant "
        "lifting on the polydisc.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("pick", parents=[common], help="Pick matrix PSD check")
    sp.add_argument("--problem", required=True)
    sp.set_defaults(func=cmd_pick)

    sp = sub.add_parser("interp", parents=[common],
                        help="Schur interpolation verdict")
    sp.add_argument("--problem", required=True)
    sp.set_defaults(func=cmd_interp)

    sp = sub.add_parser("lift", parents=[common],
                        help="commutant lifting verdict for a module map")
    sp.add_argument("--module", required=True, help="module descriptor JSON")
    sp.add_argument("--symbol", default=None, help="analytic symbol JSON")
    sp.add_argument("--matrix", default=None, help="operator matrix JSON")
    sp.set_defaults(func=cmd_lift)

    sp = sub.add_parser("perturb", parents=[common],
                        help="Schur completion of f by an orthogonal tail")
    sp.add_argument("--function", required=True, help="analytic TrigPoly JSON")
    sp.set_defaults(func=cmd_perturb)

    sp = sub.add_parser("cf", parents=[common],
                        help="coefficient-body completion verdict")
    sp.add_argument("--symbol", required=True)
    sp.add_argument("--order", required=True, type=int,
                    help="homogeneous module degree m")
    sp.set_defaults(func=cmd_cf)

    sp = sub.add_parser("agler", parents=[common],
                        help="two-variable Agler pair feasibility")
    sp.add_argument("--problem", required=True)
    sp.set_defaults(func=cmd_agler)

    sp = sub.add_parser("validate", parents=[common],
                        help="schema and invariant check of a problem file")
    sp.add_argument("--problem", required=True)
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("demo", parents=[common],
                        help="run the worked-example suite")
    sp.set_defaults(func=cmd_demo)
    return ap


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 3
    try:
        return args.func(args)
    except PolyliftError as exc:
        _emit(
            {"error": type(exc).__name__, "message": str(exc)},
            getattr(args, "out", None),
        )
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
