"""Batch entry point: load instances from JSON files, run checks, emit reports.

File format: a JSON object with ``version: 1``, a ``kind`` tag and a
kind-specific payload. Rationals serialize as ``"p/q"`` strings so fixtures
stay exact and diffable. Reports are deterministic for a fixed seed; the
timestamp field is suppressed by ``--no-timestamp``.

Exit codes: 0 all checks pass, 1 a law or evaluation fails, 2 unreadable or
schema-invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import __version__
from .action import (
    ActionData,
    check_action,
    check_characteristic_class,
    fiber_count_class,
    fiber_count_transport,
    iso_action,
    module_action,
    orbit,
    pullback_action,
    self_action,
)
from .bimod import (
    AlgebraMap,
    Bimodule,
    FinDimAlgebra,
    alg_double_category,
    tensor_over,
)
from .cobord import (
    Cobordism1,
    Cobordism2,
    Component,
    cobordism_double_category,
    compose_cobordism,
)
from .core import EXHAUSTIVE, LawReport, LawResult, check_double_category
from .diagram import (
    Span,
    compose_spans,
    iso_double_category,
    monoidal_action_double_category,
    monoidal_trivialbase,
    morph_double_category,
    span_double_category,
)
from .errors import StructureError
from .finset import FinFunction, FinMorphism, FinSet, validate_fin_category
from .ratmat import RationalMatrix, frac
from .tqft import FrobeniusAlgebra, Theory1d, check_axioms, evaluate

PASS, FAIL, BAD_INPUT = 0, 1, 2

KNOWN_KINDS = (
    "fincat",
    "morph",
    "iso",
    "span",
    "monoidal",
    "bimod",
    "cobord0",
    "cobord1",
    "action",
    "theory1d",
    "frobenius",
)


class InputError(Exception):
    pass


def _load_document(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise InputError(f"{path}: top level must be an object")
    if doc.get("version") != 1:
        raise InputError(f"{path}: unsupported or missing format version")
    kind = doc.get("kind")
    if kind not in KNOWN_KINDS:
        raise InputError(f"{path}: unknown kind {kind!r}")
    return doc


def _matrix(rows) -> RationalMatrix:
    return RationalMatrix.from_rows(rows)


def _load_fincat(payload: dict):
    try:
        objects = list(payload["objects"])
        morphisms = [FinMorphism(m["name"], m["src"], m["tgt"]) for m in payload["morphisms"]]
        identities = dict(payload["identities"])
        composition = {(f, g): h for f, g, h in payload["composition"]}
    except (KeyError, TypeError) as exc:
        raise InputError(f"bad category payload: {exc}") from exc
    return validate_fin_category(
        objects, morphisms, identities, composition, name=payload.get("name", "category")
    )


def _load_universe(payload: dict) -> list[FinSet]:
    uni = payload.get("universe")
    if not isinstance(uni, dict) or not uni:
        raise InputError("payload needs a nonempty 'universe' object")
    return [FinSet(tuple(elems)) for elems in uni.values()]


def _load_algebra(spec: dict) -> FinDimAlgebra:
    table = tuple(
        tuple(tuple(frac(x) for x in vec) for vec in row) for row in spec["table"]
    )
    return FinDimAlgebra(
        int(spec["dim"]), table, tuple(frac(x) for x in spec["unit"]), name=spec.get("name", "algebra")
    )


def _parse_point(token: str):
    side, idx = token[0], token[1:]
    if side not in ("s", "t") or not idx.isdigit():
        raise InputError(f"bad boundary point {token!r} (expected like 's0' or 't2')")
    return (side, int(idx))


def _load_cobordism(spec: dict, dim: int):
    src = tuple(spec["src"])
    tgt = tuple(spec["tgt"])
    if dim == 0:
        pairs = tuple(
            (_parse_point(p), _parse_point(q)) for p, q in spec.get("pairs", [])
        )
        return Cobordism1(src, tgt, pairs, int(spec.get("loops", 0)))
    comps = tuple(
        Component(int(c["genus"]), frozenset(_parse_point(p) for p in c["boundary"]))
        for c in spec.get("components", [])
    )
    return Cobordism2(src, tgt, comps)


def _load_span(spec: dict, universe_by_name: dict) -> Span:
    def fset(name):
        if name not in universe_by_name:
            raise InputError(f"span references unknown set {name!r}")
        return universe_by_name[name]

    left, apex, right = fset(spec["left"]), fset(spec["apex"]), fset(spec["right"])
    return Span(
        left,
        apex,
        right,
        FinFunction.from_dict(apex, left, spec["left_leg"]),
        FinFunction.from_dict(apex, right, spec["right_leg"]),
    )


def build_instance(doc: dict):
    """The double-category instance a laws-checkable file describes."""
    kind = doc["kind"]
    seed = int(doc.get("seed", 0))
    try:
        if kind == "morph":
            return morph_double_category(_load_fincat(doc["category"]), seed=seed)
        if kind == "iso":
            return iso_double_category(_load_fincat(doc["category"]))
        if kind == "span":
            return span_double_category(
                _load_universe(doc),
                seed=seed,
                max_spans=int(doc.get("max_spans", 36)),
                max_cells=int(doc.get("max_cells", 60)),
            )
        if kind == "monoidal":
            universe = _load_universe(doc)
            if doc.get("variant", "trivial_base") == "trivial_base":
                return monoidal_trivialbase(universe, seed=seed)
            return monoidal_action_double_category(universe, seed=seed)
        if kind == "bimod":
            if doc.get("standard", False):
                return alg_double_category(seed=seed, max_cells=int(doc.get("max_cells", 36)))
            algebras = {name: _load_algebra(spec) for name, spec in doc["algebras"].items()}
            maps = [
                AlgebraMap(algebras[m["src"]], algebras[m["tgt"]], _matrix(m["matrix"]))
                for m in doc.get("maps", [])
            ]
            bims = [
                Bimodule(
                    algebras[b["left"]],
                    algebras[b["right"]],
                    int(b["dim"]),
                    tuple(_matrix(m) for m in b["left_action"]),
                    tuple(_matrix(m) for m in b["right_action"]),
                    name=b.get("name", "module"),
                )
                for b in doc.get("bimodules", [])
            ]
            return alg_double_category(
                list(algebras.values()), maps, bims or None, seed=seed,
                max_cells=int(doc.get("max_cells", 36)),
            )
        if kind in ("cobord0", "cobord1"):
            dim = 0 if kind == "cobord0" else 1
            return cobordism_double_category(
                dim,
                bound=int(doc.get("bound", 3)),
                seed=seed,
                n_cobordisms=int(doc.get("n_cobordisms", 48)),
                n_cells=int(doc.get("n_cells", 36)),
                max_genus=int(doc.get("max_genus", 2)),
            )
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad {kind} payload: {exc}") from exc
    raise InputError(f"kind {kind!r} does not describe a double category")


def build_action(doc: dict) -> ActionData:
    variant = doc.get("variant")
    seed = int(doc.get("seed", 0))
    try:
        if variant == "self":
            inner = build_instance(doc["instance"])
            return self_action(inner, doc.get("side", "left"))
        if variant == "pullback":
            return pullback_action(_load_universe(doc), seed=seed)
        if variant == "module":
            return module_action(seed=seed, max_cells=int(doc.get("max_cells", 24)))
        if variant == "iso":
            return iso_action(_load_universe(doc), seed=seed)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad action payload: {exc}") from exc
    raise InputError(f"unknown action variant {variant!r}")


def build_theory(doc: dict):
    kind = doc["kind"]
    try:
        if kind == "theory1d":
            return Theory1d(int(doc["dim"])), 0
        if kind == "frobenius":
            algebra = _load_algebra(doc["algebra"])
            return FrobeniusAlgebra(algebra, tuple(frac(x) for x in doc["counit"])), 1
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad theory payload: {exc}") from exc
    raise InputError(f"kind {kind!r} is not a theory")


def load_named_cells(doc: dict) -> dict:
    """Named composable cells a file carries for ``compose`` and ``tqft``."""
    kind = doc["kind"]
    if kind in ("cobord0", "cobord1"):
        dim = 0 if kind == "cobord0" else 1
        return {
            name: _load_cobordism(spec, dim)
            for name, spec in doc.get("cobordisms", {}).items()
        }
    if kind == "span":
        universe_by_name = {
            name: FinSet(tuple(elems)) for name, elems in doc.get("universe", {}).items()
        }
        return {
            name: _load_span(spec, universe_by_name)
            for name, spec in doc.get("spans", {}).items()
        }
    if kind == "bimod":
        algebras = {name: _load_algebra(spec) for name, spec in doc.get("algebras", {}).items()}
        return {
            b["name"]: Bimodule(
                algebras[b["left"]],
                algebras[b["right"]],
                int(b["dim"]),
                tuple(_matrix(m) for m in b["left_action"]),
                tuple(_matrix(m) for m in b["right_action"]),
                name=b["name"],
            )
            for b in doc.get("bimodules", [])
        }
    raise InputError(f"kind {kind!r} carries no named cells")


# ---------------------------------------------------------------------------
# report assembly
# ---------------------------------------------------------------------------


def report_document(report: LawReport, *, timestamp: bool) -> dict:
    doc = {
        "version": 1,
        "tool": {"name": "doublecat", "version": __version__},
        "subject": report.subject,
        "budget": report.budget,
        "seed": report.seed,
        "results": [
            {
                "law": r.law,
                "passed": r.passed,
                "checked": r.checked,
                **({"counterexample": r.counterexample} if r.counterexample else {}),
            }
            for r in report.results
        ],
        "failures": len(report.failures),
    }
    if timestamp:
        doc["timestamp"] = time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime())
    return doc


def _emit(doc: dict, report: LawReport | None, args) -> None:
    if args.json:
        print(json.dumps(doc, indent=2, sort_keys=True))
    elif report is not None:
        print(report.summary())
    else:
        print(json.dumps(doc, indent=2, sort_keys=True))


def _budget(args):
    if getattr(args, "exhaustive", False):
        return EXHAUSTIVE
    return args.budget


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_laws(args) -> int:
    doc = _load_document(args.file)
    kind = doc["kind"]
    if kind == "fincat":
        try:
            _load_fincat(doc)
            report = LawReport("category-tables", EXHAUSTIVE, 0, (LawResult("category-laws", True, 1),))
        except StructureError as exc:
            report = LawReport(
                "category-tables", EXHAUSTIVE, 0, (LawResult("category-laws", False, 1, str(exc)),)
            )
    elif kind in ("theory1d", "frobenius"):
        theory, dim = build_theory(doc)
        report = check_axioms(theory, dim, seed=int(doc.get("seed", 0)))
    elif kind == "action":
        report = check_action(build_action(doc), _budget(args), seed=args.seed)
    else:
        instance = build_instance(doc)
        if args.weak and instance.strict:
            raise InputError(f"--weak requested but {instance.name} is strict")
        report = check_double_category(instance, _budget(args), seed=args.seed)
    _emit(report_document(report, timestamp=not args.no_timestamp), report, args)
    return PASS if report.ok else FAIL


def _serialize_cell(cell) -> dict:
    if isinstance(cell, Cobordism1):
        return {
            "kind": "cobordism0",
            "src": list(cell.src),
            "tgt": list(cell.tgt),
            "pairs": [[f"{p[0]}{p[1]}", f"{q[0]}{q[1]}"] for p, q in cell.pairs],
            "loops": cell.loops,
        }
    if isinstance(cell, Cobordism2):
        return {
            "kind": "cobordism1",
            "src": list(cell.src),
            "tgt": list(cell.tgt),
            "components": [
                {"genus": c.genus, "boundary": sorted(f"{p[0]}{p[1]}" for p in c.boundary)}
                for c in cell.components
            ],
        }
    if isinstance(cell, Span):
        return {
            "kind": "span",
            "left": list(cell.left_foot.elements),
            "apex": [repr(e) for e in cell.apex.elements],
            "right": list(cell.right_foot.elements),
            "apex_size": len(cell.apex),
        }
    if isinstance(cell, Bimodule):
        return {
            "kind": "bimodule",
            "left": cell.left.name,
            "right": cell.right.name,
            "dim": cell.dim,
            "left_action": [m.to_strings() for m in cell.left_action],
            "right_action": [m.to_strings() for m in cell.right_action],
        }
    raise InputError(f"cannot serialize composite {cell!r}")


def cmd_compose(args) -> int:
    doc = _load_document(args.file)
    cells = load_named_cells(doc)
    names = [n.strip() for n in args.cells.split(",")]
    if len(names) != 2:
        raise InputError("--cells wants exactly two comma-separated names")
    missing = [n for n in names if n not in cells]
    if missing:
        raise InputError(f"no cell named {missing[0]!r} in {args.file}")
    first, second = cells[names[0]], cells[names[1]]
    try:
        if isinstance(first, (Cobordism1, Cobordism2)):
            composite = compose_cobordism(first, second)
        elif isinstance(first, Span):
            composite = compose_spans(first, second)
        elif isinstance(first, Bimodule):
            composite = tensor_over(first, second).module
        else:
            raise InputError("cells of this kind do not compose")
    except StructureError as exc:
        print(f"not composable: {exc}", file=sys.stderr)
        return FAIL
    out = {"version": 1, "composite": _serialize_cell(composite), "of": names}
    print(json.dumps(out, indent=2, sort_keys=True))
    return PASS


def cmd_tqft(args) -> int:
    theory_doc = _load_document(args.theory)
    cob_doc = _load_document(args.cobordism)
    theory, dim = build_theory(theory_doc)
    expected_kind = "cobord0" if dim == 0 else "cobord1"
    if cob_doc["kind"] != expected_kind:
        raise InputError(
            f"theory dimension {dim} needs a {expected_kind} file, got {cob_doc['kind']}"
        )
    cells = load_named_cells(cob_doc)
    if args.cell not in cells:
        raise InputError(f"no cobordism named {args.cell!r} in {args.cobordism}")
    value = evaluate(theory, cells[args.cell])
    doc = {
        "version": 1,
        "tool": {"name": "doublecat", "version": __version__},
        "source": list(value.source),
        "target": list(value.target),
        "matrix": value.matrix.to_strings(),
    }
    exit_code = PASS
    if args.check_axioms:
        report = check_axioms(theory, dim, seed=int(theory_doc.get("seed", 0)))
        doc["axioms"] = report_document(report, timestamp=False)["results"]
        exit_code = PASS if report.ok else FAIL
    if not args.no_timestamp:
        doc["timestamp"] = time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime())
    if args.json:
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        print(f"Z: {value.source} => {value.target}")
        for row in value.matrix.to_strings():
            print("  [" + ", ".join(row) + "]")
        if args.check_axioms:
            status = "pass" if exit_code == PASS else "FAIL"
            print(f"axioms: {status}")
    return exit_code


def cmd_action(args) -> int:
    doc = _load_document(args.file)
    if doc["kind"] != "action":
        raise InputError(f"{args.file} is not an action file")
    data = build_action(doc)
    if args.subcommand == "check":
        report = check_action(data, _budget(args), seed=args.seed)
        _emit(report_document(report, timestamp=not args.no_timestamp), report, args)
        return PASS if report.ok else FAIL
    if args.subcommand == "orbit":
        idx = args.seed_object
        if idx is None or not (0 <= idx < len(data.acted.objects)):
            raise InputError(
                f"--seed-object must index the acted objects (0..{len(data.acted.objects) - 1})"
            )
        start = data.acted.objects[idx]
        result = orbit(data, [start], budget=args.budget if isinstance(args.budget, int) else 2000)
        out = {
            "version": 1,
            "seed_object": repr(start),
            "orbit_objects": sorted(repr(o) for o in result.objects),
            "orbit_morphisms": len(result.morphisms),
            "trace": sorted(
                f"{o!r} <- ({xi!r}) * ({m!r})" for o, (xi, m) in result.trace.items()
            ),
        }
        print(json.dumps(out, indent=2, sort_keys=True))
        return PASS
    if args.subcommand == "charclass":
        if doc.get("variant") != "pullback":
            raise InputError("the fiber-cardinality class is registered for pullback actions only")
        report = check_characteristic_class(
            data, fiber_count_transport, fiber_count_class, _budget(args), seed=args.seed
        )
        _emit(report_document(report, timestamp=not args.no_timestamp), report, args)
        return PASS if report.ok else FAIL
    raise InputError(f"unknown action subcommand {args.subcommand!r}")


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--budget", type=int, default=300, help="law instances per law")
    parser.add_argument("--exhaustive", action="store_true", help="check every law instance")
    parser.add_argument("--seed", type=int, default=0, help="sampling seed")
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    parser.add_argument("--text", action="store_true", help="human-readable output (default)")
    parser.add_argument("--no-timestamp", action="store_true", help="omit the timestamp field")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="doublecat",
        description="Law checking and evaluation for double categories over exact rationals.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_laws = sub.add_parser("laws", help="check the axioms of an instance file")
    p_laws.add_argument("file")
    p_laws.add_argument("--weak", action="store_true", help="insist the instance is weak")
    _add_common(p_laws)
    p_laws.set_defaults(fn=cmd_laws)

    p_comp = sub.add_parser("compose", help="compose two named cells from a file")
    p_comp.add_argument("file")
    p_comp.add_argument("--cells", required=True, help="two names, comma separated")
    _add_common(p_comp)
    p_comp.set_defaults(fn=cmd_compose)

    p_tqft = sub.add_parser("tqft", help="evaluate a theory on a cobordism")
    p_tqft.add_argument("theory")
    p_tqft.add_argument("cobordism")
    p_tqft.add_argument("--cell", default="main", help="name of the cobordism to evaluate")
    p_tqft.add_argument("--check-axioms", action="store_true")
    _add_common(p_tqft)
    p_tqft.set_defaults(fn=cmd_tqft)

    p_act = sub.add_parser("action", help="check, orbit or characteristic-class an action file")
    p_act.add_argument("file")
    p_act.add_argument("subcommand", choices=["check", "orbit", "charclass"])
    p_act.add_argument("--seed-object", type=int, default=None, help="index of the orbit seed")
    _add_common(p_act)
    p_act.set_defaults(fn=cmd_action)

    return parser


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (InputError, StructureError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
