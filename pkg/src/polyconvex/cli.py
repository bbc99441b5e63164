"""Command-line front end.

Exit codes: 0 success, 2 unreadable input, 3 precondition violated,
4 a checked identity failed (always a bug).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Callable, Optional

from . import epigraph as ep
from . import structure as st
from .errors import InvariantViolation, PreconditionError
from .generators import FAMILIES, FUNCTION_FAMILIES, generate
from .linalg import Q, Subspace
from .lp import Infeasible, Optimal, Unbounded, lp_maximize
from .polyhedron import dd_h_to_v, dd_v_to_h, set_equal
from .report import Report, jsonable
from .representation import HPolyhedron
from .serialize import (SchemaError, f_from_json, f_to_json, h_from_json, h_to_json, is_v_json,
                        subspace_from_json, v_from_json, v_to_json)
from .verify import verify_all, verify_generated

EXIT_OK, EXIT_PARSE, EXIT_PRECONDITION, EXIT_INVARIANT = 0, 2, 3, 4


class InputError(Exception):
    """Unreadable or schema-violating input (exit code 2)."""


# --------------------------------------------------------------------------
# argument helpers


def _parse_vector(text: Optional[str], n: int, flag: str):
    if text is None:
        raise InputError(f"{flag} is required for this command")
    text = text.strip()
    try:
        raw = json.loads(text) if text.startswith("[") else text.split(",")
        vec = tuple(Q(str(a).strip()) for a in raw)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise InputError(f"{flag}: {exc}") from exc
    if len(vec) != n:
        raise InputError(f"{flag}: expected {n} coordinates, got {len(vec)}")
    return vec


def _parse_subspace(text: Optional[str], n: int) -> Optional[Subspace]:
    if text is None:
        return None
    try:
        return subspace_from_json(json.loads(text), n)
    except (json.JSONDecodeError, SchemaError) as exc:
        raise InputError(f"--subspace: {exc}") from exc


def _load_json(path: Optional[str]):
    try:
        if path is None or path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read input: {exc}") from exc


def _as_polyhedron(obj) -> HPolyhedron:
    try:
        return dd_v_to_h(v_from_json(obj)) if is_v_json(obj) else h_from_json(obj)
    except SchemaError as exc:
        raise InputError(str(exc)) from exc


def _as_function(obj) -> ep.PLFunction:
    try:
        return f_from_json(obj)
    except SchemaError as exc:
        raise InputError(str(exc)) from exc


# --------------------------------------------------------------------------
# commands on polyhedra; each maps (raw input object, args) to a JSON value


def _report(rep: Report) -> dict:
    out = rep.to_json()
    if not rep.passed:
        raise _FailedReport(out)
    return out


class _FailedReport(Exception):
    def __init__(self, payload):
        super().__init__("report has failing clauses")
        self.payload = payload


def cmd_convert(obj, args):
    if is_v_json(obj):
        G = _v(obj)
        H = dd_v_to_h(G)
        back = dd_h_to_v(H)
        ok = set_equal(dd_v_to_h(back), H)
        if not ok:
            raise InvariantViolation("V -> H -> V round trip changed the set")
        return {"h": h_to_json(H), "v": v_to_json(back), "round_trip_set_equal": ok}
    P = _as_polyhedron(obj)
    G = dd_h_to_v(P)
    H = dd_v_to_h(G)
    ok = set_equal(H, P)
    if not ok:
        raise InvariantViolation("H -> V -> H round trip changed the set")
    return {"h": h_to_json(H), "v": v_to_json(G), "round_trip_set_equal": ok}


def _v(obj):
    try:
        return v_from_json(obj)
    except SchemaError as exc:
        raise InputError(str(exc)) from exc


def _subspace_json(S: Subspace):
    return {"dim": S.dim, "basis": jsonable(S.basis)}


def cmd_recession(obj, args):
    return h_to_json(st.recession_cone(_as_polyhedron(obj)))


def cmd_lineality(obj, args):
    return _subspace_json(st.lineality_space(_as_polyhedron(obj)))


def cmd_slice(obj, args):
    C = _as_polyhedron(obj)
    return h_to_json(st.slice(C, _parse_subspace(args.subspace, C.dim)))


def cmd_project(obj, args):
    C = _as_polyhedron(obj)
    return h_to_json(st.project_onto(C, _parse_subspace(args.subspace, C.dim)))


def cmd_minimal_faces(obj, args):
    C = _as_polyhedron(obj)
    mf = st.minimal_faces(C, _parse_subspace(args.subspace, C.dim))
    return dict(mf.to_json(), count=len(mf), flat_dim=mf.lin_basis.dim)


def cmd_is_translated_cone(obj, args):
    tc = st.translated_cone_apex(_as_polyhedron(obj))
    if tc is None:
        return {"translated_cone": False}
    return {"translated_cone": True, "apex": jsonable(tc[0]), "lineality": _subspace_json(tc[1])}


def cmd_decompose_motzkin(obj, args):
    dec = st.motzkin_decompose(_as_polyhedron(obj))
    return {"compact_part": v_to_json(dec.compact_part), "cone_part": h_to_json(dec.cone_part)}


def cmd_normal_cone(obj, args):
    C = _as_polyhedron(obj)
    return h_to_json(st.normal_cone_at(C, _parse_vector(args.point, C.dim, "--point")))


def cmd_total_normal_cone(obj, args):
    return st.total_normal_cone(_as_polyhedron(obj)).to_json()


def cmd_polar(obj, args):
    return h_to_json(st.polar_cone(_as_polyhedron(obj)))


def cmd_support(obj, args):
    C = _as_polyhedron(obj)
    c = _parse_vector(args.direction, C.dim, "--direction")
    out = lp_maximize(C, c)
    if isinstance(out, Optimal):
        return {"status": "optimal", "value": str(out.value), "point": jsonable(out.point)}
    if isinstance(out, Unbounded):
        return {"status": "unbounded", "feasible_point": jsonable(out.feasible_point),
                "improving_ray": jsonable(out.improving_ray)}
    assert isinstance(out, Infeasible)
    return {"status": "infeasible", "farkas_certificate": jsonable(out.farkas_certificate)}


def cmd_is_gm(obj, args):
    ok, cert = st.is_generalized_minkowski(_as_polyhedron(obj))
    return {"generalized_minkowski": ok, "minimal_faces": cert["minimal_faces"].to_json(),
            "witness": jsonable(cert["witness"])}


def cmd_gm_synthesize(obj, args):
    C0 = _v(obj)
    L = _parse_subspace(args.subspace, C0.dim) or Subspace.zero(C0.dim)
    return h_to_json(st.gm_synthesize(C0, L))


def cmd_pareto(obj, args):
    C = _as_polyhedron(obj)
    x = _parse_vector(args.point, C.dim, "--point")
    member = st.pareto_membership(C, x)
    if member != st.pareto_membership_lp(C, x):
        raise InvariantViolation("generator and LP Pareto tests disagree")
    return {"member": member}


def cmd_rbd_check(obj, args):
    return _report(st.rbd_slice_check(_as_polyhedron(obj)))


def cmd_motzkin_criteria(obj, args):
    return _report(st.verify_motzkin_normal_criteria(_as_polyhedron(obj)))


# --------------------------------------------------------------------------
# commands on PL functions


def cmd_epi(obj, args):
    return h_to_json(ep.epi(_as_function(obj)))


def cmd_epi_recession(obj, args):
    return f_to_json(ep.recession_function(_as_function(obj)))


def cmd_epi_lin(obj, args):
    return _subspace_json(ep.lin_f(_as_function(obj)))


def cmd_epi_subdifferential(obj, args):
    f = _as_function(obj)
    return h_to_json(ep.subdifferential_at(f, _parse_vector(args.point, f.dim, "--point")).as_h)


def cmd_epi_range(obj, args):
    return {"pieces": [h_to_json(P) for P in ep.subdifferential_range(_as_function(obj)).pieces]}


def cmd_epi_sublinear_shift(obj, args):
    out = ep.sublinear_shift(_as_function(obj))
    if out is None:
        return {"sublinear_after_shift": False}
    return {"sublinear_after_shift": True, "u": jsonable(out[0]), "v": str(out[1])}


def cmd_epi_shift_criterion(obj, args):
    f = _as_function(obj)
    return _report(ep.verify_sublinear_shift_criterion(f, _parse_vector(args.point, f.dim, "--point")))


def cmd_epi_polar(obj, args):
    return ep.polar_epi_sublinear(_as_function(obj)).to_json()


def cmd_epi_motzkin(obj, args):
    return _report(ep.verify_motzkin_function_criteria(_as_function(obj)))


def cmd_epi_is_gm(obj, args):
    ok, cert = st.is_generalized_minkowski(ep.epi(_as_function(obj)))
    return {"generalized_minkowski": ok, "witness": jsonable(cert["witness"])}


POLYHEDRON_COMMANDS: dict[str, Callable] = {
    "convert": cmd_convert,
    "recession": cmd_recession,
    "lineality": cmd_lineality,
    "slice": cmd_slice,
    "project": cmd_project,
    "minimal-faces": cmd_minimal_faces,
    "is-translated-cone": cmd_is_translated_cone,
    "decompose-motzkin": cmd_decompose_motzkin,
    "normal-cone": cmd_normal_cone,
    "total-normal-cone": cmd_total_normal_cone,
    "polar": cmd_polar,
    "support": cmd_support,
    "is-gm": cmd_is_gm,
    "gm-synthesize": cmd_gm_synthesize,
    "pareto": cmd_pareto,
    "rbd-check": cmd_rbd_check,
    "motzkin-criteria": cmd_motzkin_criteria,
}

FUNCTION_COMMANDS: dict[str, Callable] = {
    "epi": cmd_epi,
    "epi-recession": cmd_epi_recession,
    "epi-lin": cmd_epi_lin,
    "epi-subdifferential": cmd_epi_subdifferential,
    "epi-range": cmd_epi_range,
    "epi-sublinear-shift": cmd_epi_sublinear_shift,
    "epi-shift-criterion": cmd_epi_shift_criterion,
    "epi-polar": cmd_epi_polar,
    "epi-motzkin": cmd_epi_motzkin,
    "epi-is-gm": cmd_epi_is_gm,
}


def _instance_json(inst) -> dict:
    out = {"family": inst.family, "index": inst.index}
    if inst.function is not None:
        out["function"] = f_to_json(inst.function)
    else:
        out["polyhedron"] = h_to_json(inst.polyhedron)
        if inst.apex is not None:
            out["apex"] = jsonable(inst.apex)
    return out


def _run(args) -> object:
    cmd = args.command
    if cmd == "generate":
        family = args.generate or "mixed"
        return {"family": family, "seed": args.seed,
                "instances": [_instance_json(i) for i in generate(family, args.seed, args.count)]}
    if cmd == "verify-all":
        if args.generate is not None or args.input is None:
            out = verify_generated(args.generate or "mixed", args.seed, args.count, args.threads)
        else:
            obj = _load_json(args.input)
            from .generators import Instance
            if isinstance(obj, dict) and "pieces" in obj:
                inst = Instance("pl-function", 0, function=_as_function(obj))
            else:
                inst = Instance("input", 0, polyhedron=_as_polyhedron(obj))
            out = verify_all([inst], args.seed, 1)
        if not out["passed"]:
            raise _FailedReport(out)
        return out
    func = POLYHEDRON_COMMANDS.get(cmd) or FUNCTION_COMMANDS[cmd]
    if args.generate is not None:
        wants_function = cmd in FUNCTION_COMMANDS
        if (args.generate in FUNCTION_FAMILIES) != wants_function:
            raise InputError(f"family {args.generate!r} does not fit command {cmd!r}")
        results = []
        for inst in generate(args.generate, args.seed, args.count):
            obj = f_to_json(inst.function) if wants_function else h_to_json(inst.polyhedron)
            results.append({"index": inst.index, "result": func(obj, args)})
        return {"family": args.generate, "seed": args.seed, "results": results}
    return func(_load_json(args.input), args)


def _text(obj, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        lines = []
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.append(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {json.dumps(v)}")
        return "\n".join(lines)
    if isinstance(obj, list):
        return "\n".join(f"{pad}- {json.dumps(v, sort_keys=True)}" for v in obj)
    return f"{pad}{json.dumps(obj)}"


def _emit(payload, args) -> None:
    text = (_text(payload) if args.format == "text"
            else json.dumps(payload, sort_keys=True, indent=2)) + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="JSON instance (polyhedron.v1 or plfunction.v1); '-' for stdin")
    common.add_argument("--output", help="write the result here instead of stdout")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--count", type=int, default=10)
    common.add_argument("--generate", nargs="?", const="mixed", choices=FAMILIES + ("mixed",),
                        help="use seeded random instances of a family instead of --input")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--point", help="comma-separated rationals or a JSON list")
    common.add_argument("--direction", help="comma-separated rationals or a JSON list")
    common.add_argument("--subspace", help="JSON list of spanning vectors")
    common.add_argument("--format", choices=("json", "text"), default="json")

    parser = argparse.ArgumentParser(prog="polyconvex", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in list(POLYHEDRON_COMMANDS) + list(FUNCTION_COMMANDS) + ["verify-all", "generate"]:
        sub.add_parser(name, parents=[common])
    return parser


def main(argv: Optional[list] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.count < 0 or args.threads < 1:
        print("error: --count must be >= 0 and --threads >= 1", file=sys.stderr)
        return EXIT_PARSE
    try:
        payload = _run(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except PreconditionError as exc:
        print(f"precondition violated: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except InvariantViolation as exc:
        print(f"invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except _FailedReport as exc:
        _emit(exc.payload, args)
        print("report has failing clauses", file=sys.stderr)
        return EXIT_INVARIANT
    _emit(payload, args)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
