"""Command-line interface.

Deterministic by construction: no randomness, no timestamps, stable key
order in machine-readable output.  Exit codes: 0 all checks passed or the
computation succeeded, 1 at least one verification check failed (the
report is still emitted), 2 malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import charts as ch
from . import decomposition as dec
from . import models as mo
from .rationals import ParseError, PoleError
from .reporting import Check, Report
from .symplectic import (
    COV, CON, SymplecticSpace, Tensor, cotorsion_lower, tensor_from_json,
    tensor_to_json, torsion_lower,
)


class InputError(Exception):
    """Anything wrong with the command inputs (exit code 2)."""


def _load_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except OSError as err:
        raise InputError(f"cannot read {path}: {err}") from None
    except json.JSONDecodeError as err:
        raise InputError(f"{path}: invalid JSON at line {err.lineno}, column {err.colno}") from None


def _emit(args, command: str, report: Report, artifacts: dict | None = None) -> int:
    artifacts = artifacts or {}
    if args.json:
        payload = {"command": command, "checks": report.to_json(), "artifacts": artifacts}
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(report.render_text())
        for name in sorted(artifacts):
            print(f"artifact {name}: {json.dumps(artifacts[name], sort_keys=True)}")
    return 0 if report.passed else 1


def _parse_point(text: str) -> dict[str, Fraction]:
    point = {}
    for piece in text.split(","):
        piece = piece.strip()
        if not piece:
            continue
        if "=" not in piece:
            raise InputError(f"bad point assignment {piece!r}; expected name=value")
        name, value = piece.split("=", 1)
        try:
            point[name.strip()] = Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise InputError(f"bad rational value in {piece!r}") from None
    if not point:
        raise InputError("empty point specification")
    return point


def _load_tensor_arg(path: str, n: int, space_kind: str) -> Tensor:
    data = _load_json(path)
    try:
        tensor = tensor_from_json(data)
    except (ValueError, KeyError) as err:
        raise InputError(f"{path}: {err}") from None
    if tensor.dim != 2 * n:
        raise InputError(
            f"{path}: tensor declares n={tensor.dim // 2} but --n is {n}")
    space = SymplecticSpace(n)
    tensor = Tensor(tensor.dim, tensor.valence, tensor.comps, space=space)
    if tensor.valence == (COV, COV, COV):
        return tensor
    if tensor.valence == (COV, COV, CON):
        lower = torsion_lower if space_kind == "torsion" else cotorsion_lower
        try:
            return lower(tensor)
        except ValueError as err:
            raise InputError(f"{path}: {err}") from None
    raise InputError(f"{path}: expected a (0,3) or (1,2) tensor")


def _chart_from_args(args) -> ch.Chart:
    name = getattr(args, "chart", None)
    if name in ch.EXAMPLE_FILES:
        return ch.load_example(name)
    data = _load_json(name)
    try:
        return ch.chart_from_json(data)
    except ch.ChartFormatError as err:
        raise InputError(f"{name}: {err}") from None


def _structure_for_chart(chart: ch.Chart, args) -> Tensor:
    structure_name = getattr(args, "structure", None)
    xi_name = getattr(args, "xi", None)
    if structure_name:
        try:
            tensor = chart.field_tensor(structure_name)
        except KeyError as err:
            raise InputError(str(err)) from None
        if tensor.valence != (COV, COV, CON):
            raise InputError(f"field {structure_name!r} is not a (1,2) tensor field")
        return tensor
    name = xi_name or "xi"
    try:
        xi = chart.field_tensor(name)
    except KeyError:
        raise InputError(
            f"chart has no vector field {name!r}; pass --xi or --structure") from None
    if xi.valence != (CON,):
        raise InputError(f"field {name!r} is not a vector field")
    return ch.linear_type_structure(chart, xi)


# -- subcommands ------------------------------------------------------------------


def cmd_dims(args) -> int:
    rows = dec.dimension_table(args.n_max)
    report = Report(title="class dimensions")
    artifacts = {"table": []}
    for row in rows:
        entry = {"n": row.n, **{k: v for k, v in sorted(row.computed.items())},
                 "ambient_cotorsion": row.ambient_cotorsion,
                 "ambient_torsion": row.ambient_torsion,
                 "notes": list(row.notes)}
        artifacts["table"].append(entry)
        sum_s = sum(row.computed[k] for k in dec.COTORSION_LABELS)
        sum_t = sum(row.computed[k] for k in dec.TORSION_LABELS)
        report.checks.append(Check(
            f"n={row.n}_cotorsion_sum", sum_s == row.ambient_cotorsion,
            f"{sum_s} vs ambient {row.ambient_cotorsion}"))
        report.checks.append(Check(
            f"n={row.n}_torsion_sum", sum_t == row.ambient_torsion,
            f"{sum_t} vs ambient {row.ambient_torsion}"))
    if not args.json:
        header = ["n", *dec.SUBMODULE_LABELS, "dim S-space", "dim T-space"]
        print("  ".join(f"{h:>4}" for h in header))
        for row in rows:
            cells = [row.n, *(row.computed[k] for k in dec.SUBMODULE_LABELS),
                     row.ambient_cotorsion, row.ambient_torsion]
            print("  ".join(f"{c:>4}" for c in cells))
        for row in rows:
            for note in row.notes:
                print(f"note (n={row.n}): {note}")
    return _emit(args, "dims", report, artifacts)


def cmd_decompose(args, classify_only: bool = False) -> int:
    tensor = _load_tensor_arg(args.tensor, args.n, args.space)
    try:
        result = (dec.decompose_torsion(tensor) if args.space == "torsion"
                  else dec.decompose_cotorsion(tensor))
    except ValueError as err:
        raise InputError(str(err)) from None
    labels = dec.TORSION_LABELS if args.space == "torsion" else dec.COTORSION_LABELS
    report = Report(title=f"{args.space} decomposition")
    for label in labels:
        nonzero = label in result.type_set
        report.checks.append(Check(f"{label}_part",
                                   True, "nonzero" if nonzero else "zero"))
    artifacts = {"type_set": sorted(result.type_set)}
    if not classify_only and args.parts:
        artifacts["parts"] = {label: tensor_to_json(result.part(label))
                              for label in labels}
    command = "classify" if classify_only else "decompose"
    if not args.json:
        print(f"type set: {{{', '.join(sorted(result.type_set)) or ''}}}")
        for label in labels:
            status = "nonzero" if label in result.type_set else "zero"
            print(f"  {label}: {status}")
    return _emit(args, command, report, artifacts)


def cmd_classify(args) -> int:
    return cmd_decompose(args, classify_only=True)


def cmd_symplectify(args) -> int:
    tensor = _load_tensor_arg(args.tensor, args.n, "torsion")
    try:
        s = dec.symplectify_torsion(tensor)
    except ValueError as err:
        report = Report(title="symplectification",
                        checks=[Check("solvable_in_cotorsion_space", False, str(err))])
        return _emit(args, "symplectify", report)
    report = Report(title="symplectification",
                    checks=[Check("solvable_in_cotorsion_space", True, None)])
    return _emit(args, "symplectify", report, {"structure": tensor_to_json(s)})


def cmd_check_model(args) -> int:
    data = _load_json(args.model)
    try:
        model = mo.model_from_json(data)
    except (ValueError, KeyError) as err:
        raise InputError(f"{args.model}: {err}") from None
    return _emit(args, "check-model", mo.check_model_axioms(model))


def cmd_nomizu(args) -> int:
    data = _load_json(args.model)
    try:
        model = mo.model_from_json(data)
        algebra = mo.nomizu_algebra(model)
    except (ValueError, KeyError) as err:
        raise InputError(f"{args.model}: {err}") from None
    h0 = algebra.subspaces.get("h0", ())
    report = Report(title="Nomizu construction", checks=[
        Check("jacobi_identity", True, None),
        Check("isotropy_dimension", True, str(len(h0))),
    ])
    return _emit(args, "nomizu", report,
                 {"presentation": mo.presentation_to_json(algebra)})


def cmd_transvection(args) -> int:
    data = _load_json(args.model)
    try:
        model = mo.model_from_json(data)
        algebra = mo.transvection_algebra(model)
    except (ValueError, KeyError) as err:
        raise InputError(f"{args.model}: {err}") from None
    h0p = algebra.subspaces.get("h0", ())
    report = Report(title="transvection construction", checks=[
        Check("jacobi_identity", True, None),
        Check("contained_in_stabilizer", True, None),
        Check("holonomy_dimension", True, str(len(h0p))),
    ])
    return _emit(args, "transvection", report,
                 {"presentation": mo.presentation_to_json(algebra)})


def cmd_bianchi(args) -> int:
    data = _load_json(args.algebra)
    try:
        algebra = mo.presentation_from_json(data)
    except (ValueError, KeyError) as err:
        raise InputError(f"{args.algebra}: {err}") from None
    try:
        result = mo.bianchi_classify(algebra)
    except ValueError as err:
        raise InputError(str(err)) from None
    artifacts = {"type": result.tag}
    if result.parameters is not None:
        artifacts["parameters"] = sorted(str(p) for p in result.parameters)
    if result.invariant is not None:
        artifacts["trace_squared_over_det"] = str(result.invariant)
    if result.notes:
        artifacts["notes"] = result.notes
    report = Report(title="Bianchi classification",
                    checks=[Check("classified", True, result.tag)])
    return _emit(args, "bianchi", report, artifacts)


def cmd_verify_chart(args) -> int:
    chart = _chart_from_args(args)
    report = Report(title="chart verification")
    report.extend(ch.verify_chart_structure(chart))
    structure = _structure_for_chart(chart, args)
    if args.suite in ("as", "all"):
        _extend_unique(report, ch.verify_as_conditions(chart, structure))
    if args.suite in ("linear-type", "all"):
        xi_name = args.xi or "xi"
        try:
            xi = chart.field_tensor(xi_name)
        except KeyError:
            raise InputError(f"linear-type suite needs the vector field {xi_name!r}") from None
        try:
            _extend_unique(report, ch.verify_linear_type_suite(chart, xi))
        except ValueError as err:
            raise InputError(str(err)) from None
        candidate = None
        if args.hamiltonian:
            from .rationals import parse_ratfun
            try:
                candidate = parse_ratfun(args.hamiltonian, chart.coords)
            except ParseError as err:
                raise InputError(f"--hamiltonian: {err}") from None
        ham = ch.hamiltonian_oneform(chart, xi, candidate=candidate)
        report.checks.append(Check(
            "hamiltonian_oneform_closed", ham.closed,
            None if ham.closed else
            f"d(alpha) nonzero at {tuple(i + 1 for i in ham.closedness_witness)}"))
        if candidate is not None:
            report.checks.append(Check(
                "hamiltonian_candidate_matches", bool(ham.candidate_matches),
                None if ham.candidate_matches else
                "the differential of the candidate is not the contraction 1-form"))
    return _emit(args, "verify-chart", report)


def _extend_unique(report: Report, other: Report) -> None:
    seen = {c.name for c in report.checks}
    report.checks.extend(c for c in other.checks if c.name not in seen)


def cmd_linear_type(args) -> int:
    chart = _chart_from_args(args)
    xi_name = args.xi or "xi"
    try:
        xi = chart.field_tensor(xi_name)
    except KeyError as err:
        raise InputError(str(err)) from None
    structure = ch.linear_type_structure(chart, xi)
    lowered = cotorsion_lower(structure, omega=chart.omega)
    symmetric = lowered.is_symmetric_in(0, 1)
    report = Report(title="linear-type structure", checks=[
        Check("lowered_form_symmetric", symmetric, None),
    ])
    comps = {}
    for idx in structure.indices():
        value = structure[idx]
        if not value.is_zero():
            comps[",".join(str(i + 1) for i in idx)] = str(value)
    artifact = {"valence": list(structure.valence), "components": comps}
    return _emit(args, "linear-type", report, {"structure_field": artifact})


def cmd_obstruction(args) -> int:
    chart = _chart_from_args(args)
    point = _parse_point(args.at)
    structure = _structure_for_chart(chart, args)
    try:
        s_point = ch.evaluate_tensor(structure, point)
        omega_p = ch.evaluate_matrix(chart.omega, point)
    except PoleError as err:
        raise InputError(str(err)) from None
    except ValueError as err:
        raise InputError(str(err)) from None
    try:
        verdict = ch.metric_obstruction(s_point, omega_p)
    except ch.NotLinearTypeError as err:
        raise InputError(str(err)) from None
    if verdict.degenerate_input:
        witness = "structure tensor vanishes; any nondegenerate metric works"
    else:
        witness = ("every compatible symmetric form is degenerate"
                   if verdict.obstructed else "a nondegenerate compatible metric exists")
    report = Report(title="metric obstruction", checks=[
        Check("verdict_computed", True, witness),
    ])
    artifacts = {
        "obstructed": verdict.obstructed,
        "degenerate_input": verdict.degenerate_input,
        "compatible_solution_dimension": verdict.solution_dimension,
    }
    if verdict.xi is not None:
        artifacts["xi"] = [str(v) for v in verdict.xi]
    return _emit(args, "obstruction", report, artifacts)


def cmd_model_at_point(args) -> int:
    chart = _chart_from_args(args)
    point = _parse_point(args.at)
    structure = _structure_for_chart(chart, args)
    try:
        model, basis = ch.model_at_point(chart, structure, point)
    except PoleError as err:
        raise InputError(str(err)) from None
    except ValueError as err:
        raise InputError(str(err)) from None
    report = mo.check_model_axioms(model)
    artifacts = {
        "model": mo.model_to_json(model),
        "basis_columns": [[str(basis[r][c]) for c in range(len(basis))]
                          for r in range(len(basis))],
    }
    return _emit(args, "model-at-point", report, artifacts)


def cmd_examples(args) -> int:
    if args.export:
        import os
        os.makedirs(args.export, exist_ok=True)
        written = []
        for name, filename in sorted(ch.EXAMPLE_FILES.items()):
            data = ch._load_fixture(filename)
            path = os.path.join(args.export, filename)
            with open(path, "w", encoding="utf-8") as handle:
                json.dump(data, handle, indent=2, sort_keys=True)
                handle.write("\n")
            written.append(path)
        if args.json:
            print(json.dumps({"command": "examples", "checks": [],
                              "artifacts": {"written": written}},
                             indent=2, sort_keys=True))
        else:
            for path in written:
                print(f"wrote {path}")
        return 0
    if args.show:
        if args.show not in ch.EXAMPLE_FILES:
            raise InputError(f"unknown example {args.show!r}; "
                             f"choose from {sorted(ch.EXAMPLE_FILES)}")
        print(json.dumps(ch._load_fixture(ch.EXAMPLE_FILES[args.show]),
                         indent=2, sort_keys=True))
        return 0
    if args.json:
        print(json.dumps({"command": "examples", "checks": [],
                          "artifacts": {"available": sorted(ch.EXAMPLE_FILES)}},
                         indent=2, sort_keys=True))
    else:
        for name in sorted(ch.EXAMPLE_FILES):
            print(name)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fedosov",
        description="Exact-arithmetic verification toolkit for homogeneous "
                    "structures on symplectic and Fedosov manifolds.")
    parser.add_argument("--json", action="store_true", default=False,
                        help="machine-readable report on stdout")
    # accepted before or after the subcommand
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True,
                                parser_class=lambda **kw: argparse.ArgumentParser(
                                    parents=[shared], **kw))

    p = sub.add_parser("dims", help="class dimension table")
    p.add_argument("--n-max", type=int, default=3)
    p.set_defaults(func=cmd_dims)

    for name, func in (("decompose", cmd_decompose), ("classify", cmd_classify)):
        p = sub.add_parser(name, help=f"{name} a tensor into invariant classes")
        p.add_argument("tensor", help="tensor JSON file ((0,3) or (1,2))")
        p.add_argument("--space", choices=("torsion", "cotorsion"), required=True,
                       help="which lowering convention / ambient space applies")
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--parts", action="store_true",
                       help="emit the exact component tensors of every part")
        p.set_defaults(func=func)

    p = sub.add_parser("symplectify",
                       help="solve for a cotorsion structure producing a torsion")
    p.add_argument("tensor")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_symplectify)

    p = sub.add_parser("check-model", help="verify the infinitesimal model axioms")
    p.add_argument("model")
    p.set_defaults(func=cmd_check_model)

    p = sub.add_parser("nomizu", help="Nomizu construction of a model")
    p.add_argument("model")
    p.set_defaults(func=cmd_nomizu)

    p = sub.add_parser("transvection", help="transvection algebra of a model")
    p.add_argument("model")
    p.set_defaults(func=cmd_transvection)

    p = sub.add_parser("bianchi", help="classify a 3-dimensional Lie algebra")
    p.add_argument("algebra")
    p.set_defaults(func=cmd_bianchi)

    p = sub.add_parser("verify-chart", help="run chart verification suites")
    p.add_argument("chart", help="chart JSON file or built-in example name")
    p.add_argument("--suite", choices=("as", "linear-type", "all"), default="as")
    p.add_argument("--structure", help="(1,2) field name to use as the structure tensor")
    p.add_argument("--xi", help="vector field name for the linear-type structure")
    p.add_argument("--hamiltonian", metavar="TEXT",
                   help="candidate rational Hamiltonian to verify against the "
                        "contraction 1-form (linear-type suite only)")
    p.set_defaults(func=cmd_verify_chart)

    p = sub.add_parser("linear-type", help="build the linear-type structure field")
    p.add_argument("chart")
    p.add_argument("--xi")
    p.set_defaults(func=cmd_linear_type)

    p = sub.add_parser("obstruction", help="pointwise metric-compatibility obstruction")
    p.add_argument("chart")
    p.add_argument("--at", required=True, help="point, e.g. x=1,y=0")
    p.add_argument("--structure")
    p.add_argument("--xi")
    p.set_defaults(func=cmd_obstruction)

    p = sub.add_parser("model-at-point", help="evaluate a chart into a model")
    p.add_argument("chart")
    p.add_argument("--at", required=True)
    p.add_argument("--structure")
    p.add_argument("--xi")
    p.set_defaults(func=cmd_model_at_point)

    p = sub.add_parser("examples", help="list, show or export the built-in charts")
    p.add_argument("--export", metavar="DIR")
    p.add_argument("--show", metavar="NAME")
    p.set_defaults(func=cmd_examples)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as err:
        print(f"input error: {err}", file=sys.stderr)
        return 2
    except ParseError as err:
        print(f"input error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
