"""Batch command-line front end.

Reads a JSON problem description, dispatches to the library, writes a
structured JSON result (stdout or --out) plus a human summary on
stderr.  Exit codes: 0 success, 2 validation error, 3 cap exceeded,
4 internal invariant failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import codes, intlin, lattice as lat, torus
from .errors import CapExceededError, InternalError, ValidationError
from .grading import Degree, ToricSetup, setup_from_beta, setup_from_rays


def _load_setup(doc) -> ToricSetup:
    try:
        variety = doc["variety"]
        q = int(doc["field"]["q"])
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"malformed problem document: missing {exc}") from exc
    max_cones = variety.get("max_cones")
    if "rays" in variety and "beta" in variety:
        return ToricSetup(variety["rays"], variety["beta"], [], q, max_cones)
    if "rays" in variety:
        return setup_from_rays(variety["rays"], q, max_cones)
    if "beta" in variety:
        return setup_from_beta(variety["beta"], q, max_cones)
    raise ValidationError("variety needs either 'rays' or 'beta'")


def _int_matrix(rows, what, width=None, signed=True):
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise ValidationError(f"{what} must be a list of integer rows")
    out = []
    for r in rows:
        row = []
        for x in r:
            if not isinstance(x, int):
                raise ValidationError(f"{what} has a non-integer entry {x!r}")
            if not signed and x < 0:
                raise ValidationError(f"{what} must be nonnegative")
            row.append(x)
        out.append(row)
    if out and width is not None and any(len(r) != width for r in out):
        raise ValidationError(f"{what} rows must have length {width}")
    if out:
        intlin.shape(out)
    return out


def _lattice_from_task(task, setup):
    rows = _int_matrix(task.get("lattice", []), "lattice", width=setup.r)
    return intlin.transpose(rows) if rows else [[] for _ in range(setup.r)]


def _alpha_from(args, task, setup) -> Degree:
    if args.alpha is not None:
        vals = [int(x) for x in args.alpha.split(",")]
    elif "alpha" in task:
        vals = [int(x) for x in task["alpha"]]
    else:
        raise ValidationError("no degree given (task 'alpha' or --alpha)")
    if len(vals) != setup.k:
        raise ValidationError(f"degree must have {setup.k} coordinates")
    return Degree(free=tuple(vals))


def _point_set_from_task(task, setup, args=None):
    if "a" in task:
        h = int(task.get("h", setup.q - 1))
        Y, _ = torus.degenerate_torus(list(task["a"]), h, setup)
        return Y
    if "lattice" in task:
        return torus.zero_set_in_torus(_lattice_from_task(task, setup), setup)
    if "generators" in task:
        gens = [
            torus.point_from_rep(list(s), setup)
            for s in _int_matrix(task["generators"], "generators", width=setup.r)
        ]
        return torus.subgroup_closure(gens, setup)
    raise ValidationError("task needs one of 'a', 'lattice', 'generators'")


def _presentation_doc(pres):
    return [
        {"m": list(b.m), "text": b.text()} for b in pres.binomials
    ]


def cmd_parameterize(args, doc, setup):
    L = _lattice_from_task(doc["task"], setup)
    A = lat.parameterize_zero_set(L, setup)
    Y = torus.points_from_parameterization(
        intlin.transpose(A), setup.q - 1, setup
    )
    result = {
        "A": A,
        "num_points": len(Y),
        "points": sorted([list(p.canon) for p in Y]) if len(Y) <= 512 else None,
    }
    summary = f"parameterizing matrix A ({setup.r}x{setup.r}); zero set has {len(Y)} torus points"
    return result, summary


def cmd_degenerate_lattice(args, doc, setup):
    task = doc["task"]
    if "a" not in task:
        raise ValidationError("degenerate-lattice needs the exponent vector 'a'")
    h = int(task.get("h", setup.q - 1))
    res = lat.degenerate_lattice(list(task["a"]), h, setup)
    ci = lat.complete_intersection(res.L, setup)
    result = {
        "D": res.D,
        "lattice": intlin.transpose(res.L),
        "generators": _presentation_doc(res.gens),
        "complete_intersection": ci,
    }
    summary = (
        f"D = diag{tuple(res.D)}; I(Y) = <{', '.join(res.gens.texts())}>; "
        f"complete intersection: {ci}"
    )
    return result, summary


def cmd_ci_check(args, doc, setup):
    task = doc["task"]
    rows = _int_matrix(task.get("matrix", task.get("lattice", [])), "matrix")
    if not rows:
        raise ValidationError("ci-check needs a basis 'matrix'")
    gamma = intlin.transpose(rows)
    mixed = lat.is_mixed(gamma)
    dominating = lat.is_dominating(gamma)
    result = {
        "mixed": mixed,
        "dominating": dominating,
        "complete_intersection": mixed and dominating,
    }
    summary = f"mixed: {mixed}; dominating: {dominating}; CI: {mixed and dominating}"
    return result, summary


def cmd_torus_ideal(args, doc, setup):
    pres = lat.torus_ideal(setup)
    result = {"generators": _presentation_doc(pres)}
    return result, f"I(T_X) = <{', '.join(pres.texts())}>"


def cmd_subgroup_info(args, doc, setup):
    Y = _point_set_from_task(doc["task"], setup)
    if not Y.is_group:
        raise ValidationError("the described point set is not a subgroup")
    gs = torus.group_structure(Y, setup)
    result = {
        "order": len(Y),
        "invariant_factors": list(gs.orders),
        "generators": [list(p.rep) for p in gs.generators],
        "Q": gs.Q,
        "h": gs.h,
    }
    summary = (
        f"subgroup of order {len(Y)}; invariant factors {list(gs.orders)}; "
        f"parameterized over the order-{gs.h} subgroup of F_{setup.q}*"
    )
    return result, summary


def cmd_code(args, doc, setup):
    task = doc["task"]
    Y = _point_set_from_task(task, setup)
    alpha = _alpha_from(args, task, setup)
    summary_obj = codes.code_parameters(
        Y, alpha, setup, compute_d=args.min_distance, cap=args.cap
    )
    result = {
        "N": summary_obj.N,
        "k": summary_obj.k,
        "d": summary_obj.d,
        "alpha": list(alpha.free),
        "F0": list(summary_obj.F0) if summary_obj.F0 is not None else None,
        "note": summary_obj.note,
    }
    dtxt = f", d = {summary_obj.d}" if summary_obj.d is not None else ""
    return result, f"code parameters: N = {summary_obj.N}, k = {summary_obj.k}{dtxt}"


def cmd_hilbert_table(args, doc, setup):
    task = doc["task"]
    Y = _point_set_from_task(task, setup)
    try:
        first = [int(x) for x in task["alpha1_values"]]
        second = [int(x) for x in task["alpha2_values"]]
    except KeyError as exc:
        raise ValidationError(f"hilbert-table needs {exc} in the task") from exc
    grid = codes.hilbert_table(Y, first, second, setup)
    result = {
        "alpha1_values": first,
        "alpha2_values": second,
        "grid": grid,
    }
    return result, f"{len(second)}x{len(first)} Hilbert table on {len(Y)} points"


def cmd_point_ideal(args, doc, setup):
    task = doc["task"]
    if "point" not in task:
        raise ValidationError("point-ideal needs an exponent vector 'point'")
    s = [int(x) for x in task["point"]]
    P = torus.point_from_rep(s, setup)
    gens = lat.point_ideal(P, setup)
    result = {
        "point_canonical": list(P.canon),
        "generators": [
            {"m": list(b.m), "scale": b.scale, "text": b.text()} for b in gens
        ],
    }
    return result, f"I([P]) has {len(gens)} shifted binomial generators"


COMMANDS = {
    "parameterize": cmd_parameterize,
    "degenerate-lattice": cmd_degenerate_lattice,
    "ci-check": cmd_ci_check,
    "torus-ideal": cmd_torus_ideal,
    "subgroup-info": cmd_subgroup_info,
    "code": cmd_code,
    "hilbert-table": cmd_hilbert_table,
    "point-ideal": cmd_point_ideal,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="torilat",
        description="Exact lattice-ideal and toric-code computations.",
    )
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("problem", help="JSON problem description")
    p.add_argument("--alpha", help="degree as comma-separated integers")
    p.add_argument(
        "--min-distance", action="store_true", help="also compute minimum distance"
    )
    p.add_argument(
        "--cap", type=int, default=codes.DEFAULT_MESSAGE_CAP,
        help="projective-message cap for minimum distance",
    )
    p.add_argument("--out", help="write the JSON result to this file")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        with open(args.problem) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: cannot read problem document: {exc}", file=sys.stderr)
        return 2
    try:
        # ci-check is a pure matrix test and works without a variety block
        if args.command == "ci-check" and "variety" not in doc:
            setup = None
        else:
            setup = _load_setup(doc)
        if "task" not in doc:
            doc = dict(doc, task={})
        result, summary = COMMANDS[args.command](args, doc, setup)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CapExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except InternalError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 4
    payload = json.dumps(result, indent=2, sort_keys=True)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(payload + "\n")
    else:
        print(payload)
    print(summary, file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
