"""Command-line front end.

Every subcommand reads one JSON document (``--example``, ``--input``,
``--nerve`` or inline ``--json``) and writes a JSON report.  Exit status is
0 for positive outcomes, 1 for mathematical negatives and 2 for malformed
input.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import serialize as S
from .cech import (
    NoSolution,
    cohomology,
    nonabelian_defect,
    solve_coboundary,
    validate_system,
)
from .cohomology import (
    CoefficientModule,
    completeness_det_test,
    gauge_equivalent,
    h0,
    h1,
    radiance_class,
)
from .exceptions import AffGerbeError, NotTranslational, UnknownExample
from .examples import EXAMPLES, builtin_example
from .fibration import (
    equivariance_check,
    induced_h1_action,
    radiance_map,
    validate_fibration,
)
from .ladder import replay_corrections, run_ladder, validate_ladder
from .presentation import verify_representation


class InputError(Exception):
    pass


def _load(args) -> dict:
    if getattr(args, "example", None):
        return builtin_example(args.example).payload
    path = getattr(args, "input", None) or getattr(args, "nerve", None)
    try:
        if path:
            with open(path) as fh:
                return json.load(fh)
        if getattr(args, "json", None):
            return json.loads(args.json)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(str(exc)) from None
    raise InputError("no input: pass --example, --input, --nerve or --json")


def _representation(payload: dict):
    if "images" not in payload and "representation" in payload:
        payload = payload["representation"]
    return S.representation_from_json(payload)


def _system(payload: dict):
    if "system" in payload and "vertices" not in payload:
        payload = payload["system"]
    return S.system_from_json(payload)


def _report_issues(report) -> list:
    return S.to_jsonable([{k: v for k, v in issue.items() if k != "value"} for issue in report.issues])


# -- handlers: each returns (exit code, report dict) -------------------------

def cmd_verify_rep(args, payload):
    report = verify_representation(_representation(payload))
    return (0 if report.passed else 1), {"status": report.status, "issues": _report_issues(report)}


def cmd_h0(args, payload):
    rep = _representation(payload)
    basis = h0(CoefficientModule.linear_part(rep))
    return 0, {"status": "OK", "dim": len(basis), "basis": S.to_jsonable(basis)}


def cmd_h1(args, payload):
    spaces = h1(CoefficientModule.linear_part(_representation(payload)))
    return 0, {
        "status": "OK",
        "dim": spaces.h1_dim,
        "z1_dim": spaces.z1_dim,
        "b1_dim": spaces.b1_dim,
        "complement_basis": S.to_jsonable([c.values for c in (
            spaces.representative([int(i == j) for i in range(spaces.h1_dim)])
            for j in range(spaces.h1_dim))]),
    }


def cmd_radiance(args, payload):
    cls = radiance_class(_representation(payload))
    return 0, {"status": "OK", "h1_dim": cls.spaces.h1_dim,
               "coordinates": S.to_jsonable(cls.coordinates), "radiant": cls.is_zero()}


def cmd_gauge_check(args, payload):
    c1, c2, candidates = S.gauge_from_json(payload)
    verdict = gauge_equivalent(c1, c2, candidates)
    return (0 if verdict.equivalent else 1), {
        "status": verdict.status, "candidate": verdict.candidate,
        "coordinates": S.to_jsonable(c1.coordinates), "other_coordinates": S.to_jsonable(c2.coordinates)}


def cmd_complete_det(args, payload):
    verdict = completeness_det_test(_representation(payload))
    return (0 if verdict.verdict == "NONZERO" else 1), {"status": verdict.verdict, "det": S.q(verdict.det)}


def cmd_fibration_check(args, payload):
    report = validate_fibration(S.fibration_from_json(payload))
    return (0 if report.passed else 1), {"status": report.status, "issues": _report_issues(report),
                                         "details": S.to_jsonable(report.details)}


def cmd_alt_check(args, payload):
    r = radiance_map(S.fibration_from_json(payload))
    alt = r.is_constant()
    return (0 if alt else 1), {"status": "ALT" if alt else "NOT_ALT", "alt": alt,
                               "constant_part": S.to_jsonable(r.constant_part),
                               "linear_part": S.to_jsonable(r.linear_part)}


def cmd_induced_action(args, payload):
    d = S.fibration_from_json(payload)
    gens = [args.gen] if args.gen is not None else range(d.ambient.presentation.generator_count)
    return 0, {"status": "OK", "actions": {str(g): S.to_jsonable(induced_h1_action(d, g)) for g in gens}}


def _default_points(n: int) -> list:
    seeds = [Fraction(0), Fraction(1), Fraction(-1, 2), Fraction(2, 3)]
    return [[seeds[(k + i) % 4] + i for i in range(n)] for k in range(3)]


def cmd_equivariance(args, payload):
    d = S.fibration_from_json(payload)
    if args.points:
        points = [S.vector_from_json(p) for p in json.loads(args.points)]
    else:
        points = _default_points(d.split.base_dim)
    gens = [args.gen] if args.gen is not None else range(d.ambient.presentation.generator_count)
    results, ok = {}, True
    for g in gens:
        report = equivariance_check(d, g, points)
        ok = ok and report.passed
        results[str(g)] = {"status": report.status, "points": S.to_jsonable(report.details["points"])}
    return (0 if ok else 1), {"status": "PASS" if ok else "FAIL", "generators": results}


def cmd_cech_validate(args, payload):
    report = validate_system(_system(payload))
    return (0 if report.passed else 1), {"status": report.status, "issues": _report_issues(report)}


def cmd_cech_cohomology(args, payload):
    s = _system(payload)
    if not validate_system(s).passed:
        raise InputError("local system failed validation")
    ks = [args.k] if args.k is not None else list(range(s.nerve.dimension + 1))
    out = {}
    for k in ks:
        c = cohomology(s, k)
        out[str(k)] = {"dim": c.dim,
                       "cocycle_basis": [S.cochain_to_json(z) for z in c.cocycle_basis],
                       "coboundary_basis": [S.cochain_to_json(b) for b in c.coboundary_basis]}
    report = {"status": "OK", "degrees": out}
    if args.k is not None:
        report.update(out[str(args.k)])
    return 0, report


def cmd_solve_coboundary(args, payload):
    s = _system(payload)
    z = S.cochain_from_json(payload["cochain"], s)
    a = solve_coboundary(s, z)
    if isinstance(a, NoSolution):
        return 1, {"status": "NoSolution", "class_coordinates": S.to_jsonable(a.class_coordinates)}
    return 0, {"status": "Solvable", "solution": S.cochain_to_json(a)}


def cmd_defect(args, payload):
    nerve = S.nerve_from_json(payload)
    gluing = S.gluing_from_json(payload["gluing"])
    try:
        d = nonabelian_defect(nerve, gluing)
    except NotTranslational as exc:
        return 1, {"status": "NotTranslational", "simplices": S.to_jsonable(exc.simplices)}
    return 0, {"status": "TRANSLATIONAL", "cochain": S.cochain_to_json(d.cochain),
               "exact": d.cochain.is_zero()}


def cmd_ladder(args, payload):
    spec = S.ladder_from_json(payload)
    report = validate_ladder(spec)
    if not report.passed:
        raise InputError(f"invalid ladder: {report.issues}")
    v = run_ladder(spec, validate=False)
    out = {"status": v.label(), "rung": v.rung,
           "corrections": {str(r): S.cochain_to_json(c) for r, c in sorted(v.corrections.items())},
           "certificate": None if v.certificate is None else S.to_jsonable(v.certificate),
           "certificate_degree": v.certificate_degree}
    if v.solvable:
        replay = replay_corrections(spec, v)
        out["replay"] = replay.status
        if not replay.passed:
            out["replay_issues"] = S.to_jsonable(replay.issues)
            return 1, out
        return 0, out
    return 1, out


def cmd_example(args, payload=None):
    name = args.name or args.example
    if not name:
        return 0, {"status": "OK", "available": sorted(EXAMPLES)}
    ex = builtin_example(name)
    return 0, {"status": "OK", "name": ex.name, "kind": ex.kind, "description": ex.description,
               "payload": ex.payload,
               "expected": [{"check": label, "ok": ok} for label, ok in ex.verify()]}


COMMANDS = {
    "verify-rep": (cmd_verify_rep, "check that relators evaluate to the identity"),
    "h0": (cmd_h0, "fixed vectors of the linear holonomy"),
    "h1": (cmd_h1, "first cohomology with coefficients in the linear holonomy"),
    "radiance": (cmd_radiance, "radiance class of the translation cocycle"),
    "gauge-check": (cmd_gauge_check, "search candidate gauges relating two radiance classes"),
    "complete-det": (cmd_complete_det, "top exterior power test for translation lattices"),
    "fibration-check": (cmd_fibration_check, "validate fibration data"),
    "alt-check": (cmd_alt_check, "is the radiance map constant"),
    "induced-action": (cmd_induced_action, "action of ambient generators on fiber H^1"),
    "equivariance": (cmd_equivariance, "check equivariance of the radiance map"),
    "cech-validate": (cmd_cech_validate, "face closure and flatness of a local system"),
    "cech-cohomology": (cmd_cech_cohomology, "Cech cohomology of a local system"),
    "solve-coboundary": (cmd_solve_coboundary, "solve coboundary(a) = z"),
    "defect": (cmd_defect, "defect 2-cochain of gluing maps"),
    "ladder": (cmd_ladder, "run the obstruction ladder"),
    "example": (cmd_example, "print a built-in dataset"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="affgerbe", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--example", help="built-in dataset name")
        p.add_argument("--input", help="path to a JSON document")
        p.add_argument("--nerve", help="path to a nerve or local-system JSON document")
        p.add_argument("--json", help="inline JSON document")
        p.add_argument("--output", help="write the report here instead of stdout")
        if name == "cech-cohomology":
            p.add_argument("--k", type=int, help="degree (default: all degrees)")
        if name in ("induced-action", "equivariance"):
            p.add_argument("--gen", type=int, help="ambient generator index (default: all)")
        if name == "equivariance":
            p.add_argument("--points", help="JSON list of base points")
        if name == "example":
            p.add_argument("--name", help="dataset name (default: list names)")
    return parser


def render(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handler = COMMANDS[args.command][0]
    try:
        payload = None if args.command == "example" else _load(args)
        code, report = handler(args, payload)
    except UnknownExample as exc:
        code, report = 2, {"status": "ERROR", "error": str(exc), "available": exc.available}
    except (InputError, AffGerbeError, ValueError, KeyError, TypeError, IndexError) as exc:
        code, report = 2, {"status": "ERROR", "error": f"{type(exc).__name__}: {exc}"}
    report = {"command": args.command, **report}
    text = render(report)
    if code == 2:
        print(report["error"], file=sys.stderr)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
