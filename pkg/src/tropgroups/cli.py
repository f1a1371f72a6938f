"""Command-line interface.

Every subcommand prints a report (JSON with ``--json``) and exits with
0 pass, 1 identity failure, 2 math input error, 3 precondition error,
4 validation error.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import random
import sys
import time
from pathlib import Path
from typing import Any

from . import samples
from .building import BuildingPoint, NotInMaximalCompact, alpha, evaluate_norm, norms_equal, normalize_projective, pi
from .cartan import cartan_decompose, theorem_d_check, trop_spherical
from .chains import DecorationError, MarkedFan, MetricChain, realize, trop_family, validate_decoration
from .jsonio import jsonable, matrix_from_json, rat_matrix, rational, scalar_list, stacky_fan_from_json
from .polyhedra import BudgetExceeded, Fan, hilbert_basis
from .rootdata import builtin_root_datum, weyl_fan
from .stacky import is_smooth_stacky_cone, validate_stacky_fan, weyl_equivariance_check
from .valfield import ExtRat, ScalarSyntaxError
from .valmatrix import SingularMatrixError

EXIT_PASS, EXIT_IDENTITY, EXIT_MATH, EXIT_PRECONDITION, EXIT_VALIDATION = range(5)


class CommandError(Exception):
    def __init__(self, code: int, message: str, witnesses: dict | None = None):
        super().__init__(message)
        self.code = code
        self.witnesses = witnesses or {}


def _digest(inputs: Any) -> str:
    blob = json.dumps(inputs, sort_keys=True, separators=(",", ":"), default=str)
    return hashlib.sha256(blob.encode()).hexdigest()


def _load(args, path: str) -> Any:
    """Read a JSON input and remember it on ``args`` so failing runs are digested too."""
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise CommandError(EXIT_MATH, f"cannot read {path}: {exc}") from None
    args.inputs = data
    return data


# ---- subcommands ------------------------------------------------------------
# Each returns (inputs, verdict_ok, witnesses) or raises CommandError.

def cmd_trop(args) -> tuple[Any, bool, dict]:
    data = _load(args, args.file)
    x = matrix_from_json(data)
    elim = cartan_decompose(x).lam
    minors = trop_spherical(x)
    return data, elim == minors, {"lambda": elim, "elimination": elim, "minors": minors,
                                  "agree": elim == minors}


def cmd_cartan(args) -> tuple[Any, bool, dict]:
    data = _load(args, args.file)
    x = matrix_from_json(data)
    form = cartan_decompose(x)
    ok = form.reconstruct() == x and form.g.is_integral_unit() and form.h.is_integral_unit()
    return data, ok, {"g": form.g, "lambda": form.lam, "h": form.h, "reconstructs": form.reconstruct() == x,
                      "g_integral_unit": form.g.is_integral_unit(), "h_integral_unit": form.h.is_integral_unit()}


def cmd_pi(args) -> tuple[Any, bool, dict]:
    data = _load(args, args.file)
    p = BuildingPoint.from_json(data)
    alpha(p)  # rejects singular frames
    return data, True, {"pi": pi(p), "normalized_lambda": normalize_projective(p).lam}


def _triple(data: dict) -> tuple:
    return rat_matrix(data["g"]), [rational(v) for v in data["lambda"]], matrix_from_json(data["h"])


def cmd_diagram(args) -> tuple[Any, bool, dict]:
    if args.random:
        rng = random.Random(args.seed)
        failures = []
        for i in range(args.random):
            n = rng.choice([2, 3])
            g, lam, h = samples.rational_matrix(n, rng), samples.weights(n, rng), samples.integral_unit(n, rng)
            rep = theorem_d_check(g, lam, h)
            if not rep.holds:
                failures.append({"g": g, "lambda": lam, "h": h, "lhs": rep.lhs, "rhs": rep.rhs})
        inputs = {"random": args.random, "seed": args.seed}
        return inputs, not failures, {"checked": args.random, "counterexamples": failures[:3]}
    if not args.file:
        raise CommandError(EXIT_MATH, "diagram needs a triple file or --random N")
    data = _load(args, args.file)
    g, lam, h = _triple(data)
    rep = theorem_d_check(g, lam, h)
    return data, rep.holds, {"lhs": rep.lhs, "rhs": rep.rhs, "x": rep.x}


def cmd_fan(args) -> tuple[Any, bool, dict]:
    if args.weyl_fan:
        R = builtin_root_datum(args.weyl_fan)
        fan = weyl_fan(R, rank_cap=args.rank_cap)
        data = fan.to_json()
        data["pairing"] = [list(r) for r in R.pairing]
    elif args.file:
        data = _load(args, args.file)
        fan = Fan(data["rays"], data["cones"], data.get("lattice_rank"), basis=data.get("basis"))
    else:
        raise CommandError(EXIT_MATH, "fan needs a fan file or --weyl-fan KIND")
    if fan.ambient_dim > args.rank_cap:
        raise CommandError(EXIT_PRECONDITION, f"lattice rank {fan.ambient_dim} exceeds the cap {args.rank_cap}")
    violations = fan.violations()
    out: dict = {"valid": not violations, "cones": len(fan.cones),
                 "maximal_cones": [sorted(c) for c in fan.maximal_cones]}
    if violations:
        raise CommandError(EXIT_VALIDATION, "invalid fan",
                           {"valid": False, "witness": [sorted(c) for c in violations[0].cones],
                            "detail": violations[0].detail})
    stacky = stacky_fan_from_json(data, fan)
    if args.stacky:
        problems = validate_stacky_fan(stacky)
        out["stacky_valid"] = not problems
        if problems:
            raise CommandError(EXIT_VALIDATION, "incompatible Kummer data",
                               {"stacky_valid": False, "witness": [sorted(c) for c in problems[0].cones],
                                "face": sorted(problems[0].face)})
    if args.smooth:
        smooth = {",".join(map(str, sorted(k))): is_smooth_stacky_cone(stacky.datum(k)) for k in fan.maximal_cones}
        out["smooth"] = smooth
        out["all_smooth"] = all(smooth.values())
        try:
            out["monoid_generators"] = {
                key: len(hilbert_basis(fan.cone(k).dual(), budget=args.budget, rank_cap=args.rank_cap))
                for key, k in zip(smooth, fan.maximal_cones)}
        except BudgetExceeded as exc:
            out["monoid_generators"] = f"skipped: {exc}"
    if args.weyl:
        R = builtin_root_datum(args.weyl)
        if R.rank != fan.ambient_dim:
            raise CommandError(EXIT_PRECONDITION, f"{args.weyl} has rank {R.rank}, the fan has rank {fan.ambient_dim}")
        out["weyl_equivariant"] = weyl_equivariance_check(stacky, R)
    return data, True, out


def cmd_chain(args) -> tuple[Any, bool, dict]:
    data = _load(args, args.file)
    mf = MarkedFan.from_json(data["fan"])
    dec = data["decoration"]
    if "params" in data:
        params = scalar_list(data["params"], int(data.get("d", 1)))
        sigma = validate_decoration(dec, mf)
        try:
            chain, point = trop_family(params, dec, mf)
        except ValueError as exc:
            raise CommandError(EXIT_PRECONDITION, str(exc)) from None
    else:
        chain = MetricChain(tuple(ExtRat(str(v)) for v in data["lengths"]))
        sigma = validate_decoration(dec, mf)
        point = realize(chain, dec, mf)
    return data, True, {"lengths": chain.lengths, "cone": sigma, "point": point}


def cmd_norm_eq(args) -> tuple[Any, bool, dict]:
    data = _load(args, args.file)
    a, b = BuildingPoint.from_json(data["a"]), BuildingPoint.from_json(data["b"])
    na, nb = alpha(a), alpha(b)
    cross_ab = [evaluate_norm(na, nb.frame_vector(j)) for j in range(nb.n)]
    cross_ba = [evaluate_norm(nb, na.frame_vector(j)) for j in range(na.n)]
    return data, True, {"equal": norms_equal(na, nb), "a_on_b_frame": cross_ab, "b_weights": nb.weights,
                        "b_on_a_frame": cross_ba, "a_weights": na.weights, "pi_a": pi(a), "pi_b": pi(b)}


COMMANDS = {
    "trop": cmd_trop,
    "cartan": cmd_cartan,
    "pi": cmd_pi,
    "diagram": cmd_diagram,
    "fan": cmd_fan,
    "chain": cmd_chain,
    "norm-eq": cmd_norm_eq,
}


def _common_flags(suppress: bool) -> argparse.ArgumentParser:
    # subcommands suppress their defaults so flags given before the subcommand survive
    common = argparse.ArgumentParser(add_help=False)

    def default(value):
        return argparse.SUPPRESS if suppress else value

    common.add_argument("--json", action="store_true", default=default(False), help="print the report as JSON")
    common.add_argument("--seed", type=int, default=default(0), help="seed for randomized self-checks")
    common.add_argument("--budget", type=int, default=default(200_000), help="lattice-point enumeration budget")
    common.add_argument("--rank-cap", type=int, default=default(4), help="largest lattice rank for enumeration")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags(suppress=True)
    parser = argparse.ArgumentParser(prog="tropgroups", parents=[_common_flags(suppress=False)],
                                     description="Exact tropicalization checks for reductive groups.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in [("trop", "spherical tropicalization of an invertible matrix"),
                            ("cartan", "Cartan decomposition g * diag(t^lam) * h"),
                            ("pi", "project a building point to the dominant chamber"),
                            ("chain", "realize a decorated metric chain in its fan"),
                            ("norm-eq", "decide equality of two Goldman-Iwahori norms")]:
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("file")
    p = sub.add_parser("diagram", parents=[common], help="check pi o trop_build = trop on (g, lam, h)")
    p.add_argument("file", nargs="?")
    p.add_argument("--random", type=int, default=0, metavar="N", help="check N random triples instead")
    p = sub.add_parser("fan", parents=[common], help="validate a (stacky) fan")
    p.add_argument("file", nargs="?")
    p.add_argument("--weyl-fan", metavar="KIND", help="use the Weyl fan of GL(n), SL(n) or PGL(n)")
    p.add_argument("--stacky", action="store_true", help="check Kummer face compatibility")
    p.add_argument("--smooth", action="store_true", help="report smoothness of each maximal cone")
    p.add_argument("--weyl", metavar="KIND", help="check equivariance under the Weyl group of KIND")
    return parser


def _emit(report: dict, as_json: bool, stream) -> None:
    if as_json:
        stream.write(json.dumps(report, indent=2, sort_keys=True) + "\n")
        return
    stream.write(f"{report['command']}: {report['verdict']}\n")
    if "error" in report:
        stream.write(f"error: {report['error']}\n")
    for key, value in report["witnesses"].items():
        stream.write(f"  {key}: {json.dumps(value)}\n")


def run(argv: list[str] | None = None, stream=None) -> int:
    stream = stream or sys.stdout
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    inputs: Any = {"argv": argv}
    try:
        inputs, ok, witnesses = COMMANDS[args.command](args)
        code = EXIT_PASS if ok else EXIT_IDENTITY
        error = None
    except CommandError as exc:
        code, error, witnesses = exc.code, str(exc), exc.witnesses
    except SingularMatrixError as exc:
        code, error, witnesses = EXIT_MATH, f"singular: {exc}", {}
    except NotInMaximalCompact as exc:
        code, error, witnesses = EXIT_PRECONDITION, f"precondition: {exc}", {}
    except BudgetExceeded as exc:
        code, error, witnesses = EXIT_PRECONDITION, f"budget: {exc}", {}
    except DecorationError as exc:
        code, error, witnesses = EXIT_VALIDATION, str(exc), {"kind": exc.kind}
    except (ScalarSyntaxError, ValueError, KeyError, TypeError, ZeroDivisionError) as exc:
        code, error, witnesses = EXIT_MATH, f"bad input: {exc}", {}
    if error is not None:
        inputs = getattr(args, "inputs", inputs)
    report = {
        "command": args.command,
        "inputs_digest": _digest(inputs),
        "verdict": "pass" if code == EXIT_PASS else "fail",
        "exit_code": code,
        "witnesses": jsonable(witnesses),
        "timing_ms": int((time.perf_counter() - start) * 1000),
    }
    if error is not None:
        report["error"] = error
    _emit(report, args.json, stream)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
