"""Command-line front end: validation, analysis, retraction, extension
building, brace operations, construction families, isomorphism testing,
enumeration, and catalog access over the JSON document formats.

Exit codes: 0 success / mathematically positive answer, 1 mathematical
negative (invalid object, non-isomorphic, failed checks), 2 usage or
schema error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys

from . import brace as braces
from . import construct as constructs
from . import cycleset as cyclesets
from . import extension as extensions
from .perm import are_orthogonal, block_systems, iso_type
from .serial import SchemaError, dump, dumps, load_file, parse_perm


def _fail_usage(msg: str) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return 2


def _note(msg: str):
    print(msg, file=sys.stderr)


# ---------------------------------------------------------------------------
# validate


def cmd_validate(args) -> int:
    obj = load_file(args.file)
    if isinstance(obj, cyclesets.CycleSet):
        report = cyclesets.validate(obj)
        print(report.describe())
        return 0 if report.ok else 1
    if isinstance(obj, cyclesets.SolutionMap):
        report = cyclesets.validate_solution(obj)
        for name in ("braid", "involutive", "nondegenerate"):
            print(f"{name}: {'pass' if getattr(report, name) else 'FAIL'}")
        if report.witness:
            print(f"witness: {report.witness}")
        return 0 if report.ok else 1
    if isinstance(obj, braces.LeftBrace):
        report = braces.validate_brace(obj)
        print(f"additive group: {'pass' if report.additive_group else 'FAIL'}")
        print(
            f"multiplicative group: "
            f"{'pass' if report.multiplicative_group else 'FAIL'}"
        )
        print(f"brace law: {'pass' if report.brace_law else 'FAIL'}")
        if report.witness:
            print(f"witness: {report.witness}")
        return 0 if report.ok else 1
    if isinstance(obj, extensions.OneVarCocycle):
        witness = obj.compatibility_witness()
        if witness is None:
            print("compatibility: pass")
            return 0
        print(f"compatibility: FAIL at (x,y)={witness}")
        return 1
    if isinstance(obj, extensions.FullCocycle):
        report = extensions.validate_cocycle(obj)
        print(f"cocycle equation: {'pass' if report.valid else 'FAIL'}")
        print(f"constant: {report.constant}")
        if report.witness:
            print(f"witness: {report.witness}")
        return 0 if report.valid else 1
    return _fail_usage(f"nothing to validate for {type(obj).__name__}")


# ---------------------------------------------------------------------------
# analyze


def _analysis_report(cs: cyclesets.CycleSet) -> dict:
    doc = dumps(cs)
    report: dict = {
        "digest": hashlib.sha256(doc.encode()).hexdigest(),
        "n": cs.n,
    }
    v = cyclesets.validate(cs)
    report["axioms"] = {
        "rows_bijective": v.rows_bijective,
        "cycloid": v.cycloid,
        "nondegenerate": v.nondegenerate,
    }
    if not v.ok:
        return report
    report["latin"] = cyclesets.is_latin(cs)
    report["indecomposable"] = cyclesets.is_indecomposable(cs)
    report["uniconnected"] = cyclesets.is_uniconnected(cs)
    g = cyclesets.permutation_group(cs)
    fp = iso_type(g)
    report["group"] = {
        "order": fp.order,
        "abelian": fp.abelian,
        "invariant_factors": list(fp.invariant_factors)
        if fp.invariant_factors
        else None,
        "name": fp.name,
    }
    tower = cyclesets.retraction_tower(cs)
    mpl = cyclesets.multipermutation_level(cs)
    report["multipermutation_level"] = mpl
    report["irretractable"] = cyclesets.is_irretractable(cs)
    report["retraction_tower"] = [t.n for t in tower]
    systems = block_systems(g)
    report["block_systems"] = [[list(b) for b in s.blocks] for s in systems]
    report["orthogonal_pairs"] = [
        [i, j]
        for i in range(len(systems))
        for j in range(i + 1, len(systems))
        if are_orthogonal(systems[i], systems[j])
    ]
    return report


def _print_human(report: dict, indent: str = ""):
    for key, value in report.items():
        if isinstance(value, dict):
            print(f"{indent}{key}:")
            _print_human(value, indent + "  ")
        else:
            print(f"{indent}{key}: {value}")


def cmd_analyze(args) -> int:
    obj = load_file(args.file)
    if isinstance(obj, cyclesets.SolutionMap):
        obj = cyclesets.from_solution(obj)
    if not isinstance(obj, cyclesets.CycleSet):
        return _fail_usage("analyze expects a cycle_set or solution document")
    report = _analysis_report(obj)
    if args.json:
        print(json.dumps(report, sort_keys=True, indent=2))
    else:
        _print_human(report)
    return 0 if all(report["axioms"].values()) else 1


# ---------------------------------------------------------------------------
# retract / extend


def cmd_retract(args) -> int:
    obj = load_file(args.file)
    if not isinstance(obj, cyclesets.CycleSet):
        return _fail_usage("retract expects a cycle_set document")
    cs = cyclesets.require_valid(obj)
    for _ in range(args.steps):
        cs = cyclesets.retract(cs)[0]
    sys.stdout.write(dumps(cs))
    return 0


def cmd_extend(args) -> int:
    base = load_file(args.base)
    cocycle = load_file(args.cocycle)
    if not isinstance(base, cyclesets.CycleSet):
        return _fail_usage("extend expects a cycle_set base document")
    if isinstance(cocycle, extensions.OneVarCocycle):
        if cocycle.base != base:
            return _fail_usage("cocycle document embeds a different base")
        ext = extensions.build_constant_orthogonal(cocycle)
        _note(f"indecomposable: {ext.indecomposable}")
        _note(f"orthogonal: {ext.orthogonal}")
        sys.stdout.write(dumps(ext.cycle_set))
        return 0
    if isinstance(cocycle, extensions.FullCocycle):
        if cocycle.base != base:
            return _fail_usage("cocycle document embeds a different base")
        cs = extensions.build_extension(cocycle)
        sys.stdout.write(dumps(cs))
        return 0
    return _fail_usage("extend expects a onevar_cocycle or full_cocycle document")


# ---------------------------------------------------------------------------
# brace


def cmd_brace(args) -> int:
    obj = load_file(args.file)
    if not isinstance(obj, braces.LeftBrace):
        return _fail_usage("brace commands expect a left_brace document")
    b = braces.require_valid_brace(obj)
    if args.action == "lambda":
        for a in range(b.n):
            print(f"lambda_{a} = {list(b.lam(a).images)}")
        return 0
    if args.action == "socle":
        series = braces.socle_series(b)
        print(f"socle: {sorted(braces.socle(b))}")
        for i, layer in enumerate(series):
            print(f"soc_{i}: {sorted(layer)}")
        return 0
    if args.action == "mpl":
        mpl = braces.brace_mpl(b)
        print("none" if mpl is None else mpl)
        return 0 if mpl is not None else 1
    if args.action == "to-cs":
        if args.g is None:
            return _fail_usage("to-cs requires --g")
        for base in braces.transitive_cycle_bases(b):
            if args.g in base.points:
                cs = braces.brace_to_cycleset(b, base, args.g)
                _note(f"cycle base: {list(base.points)}")
                sys.stdout.write(dumps(cs))
                return 0
        print("no transitive cycle base contains g", file=sys.stderr)
        return 1
    if args.action == "semidirect":
        if args.h is None or args.alpha is None:
            return _fail_usage("semidirect requires <h> and <alpha> files")
        h = load_file(args.h)
        if not isinstance(h, braces.LeftBrace):
            return _fail_usage("h must be a left_brace document")
        try:
            with open(args.alpha) as fh:
                alpha_doc = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            return _fail_usage(f"cannot read alpha file: {exc}")
        if isinstance(alpha_doc, dict):
            alpha_doc = alpha_doc.get("alpha")
        if not isinstance(alpha_doc, list):
            return _fail_usage("alpha file must hold a list of permutations")
        alpha = [parse_perm(a, h.n) for a in alpha_doc]
        product = braces.semidirect_braces(b, h, alpha)
        sys.stdout.write(dumps(product))
        return 0
    return _fail_usage(f"unknown brace action {args.action!r}")


# ---------------------------------------------------------------------------
# construct


def cmd_construct(args) -> int:
    try:
        with open(args.params) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        return _fail_usage(f"cannot read params file: {exc}")
    try:
        if args.family == "cyclic":
            params = _cyclic_params(doc)
            cs = constructs.build_cyclic(params)
        elif args.family == "prop22":
            ext = constructs.family_prop22(
                int(doc["p"]), int(doc["s"]), int(doc.get("k", 1))
            )
            cs = ext.cycle_set
        elif args.family == "prop23":
            params = _cyclic_params(doc.get("cyclic", doc))
            cs = constructs.family_prop23(params, int(doc["s"]))
        else:
            return _fail_usage(f"unknown family {args.family!r}")
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, constructs.ConstructionError):
            print(f"construction failed: {exc}", file=sys.stderr)
            return 1
        return _fail_usage(f"bad params document: {exc}")
    sys.stdout.write(dumps(cs))
    return 0


def _cyclic_params(doc: dict) -> constructs.CyclicConstructionParams:
    return constructs.CyclicConstructionParams(
        p=int(doc["p"]),
        k=int(doc["k"]),
        n=int(doc["n"]),
        j=tuple(int(v) for v in doc["j"]),
        f=tuple(tuple(int(v) for v in fm) for fm in doc["f"]),
        k_reading=doc.get("k_reading", "j"),
    )


# ---------------------------------------------------------------------------
# iso / enumerate / catalog


def cmd_iso(args) -> int:
    a = load_file(args.a)
    b = load_file(args.b)
    if isinstance(a, cyclesets.SolutionMap):
        a = cyclesets.from_solution(a)
    if isinstance(b, cyclesets.SolutionMap):
        b = cyclesets.from_solution(b)
    if isinstance(a, cyclesets.CycleSet) and isinstance(b, cyclesets.CycleSet):
        mapping = cyclesets.are_isomorphic(a, b)
    elif isinstance(a, braces.LeftBrace) and isinstance(b, braces.LeftBrace):
        mapping = braces.brace_isomorphism(a, b)
    else:
        return _fail_usage("iso expects two documents of the same kind")
    if mapping is None:
        print("non-isomorphic")
        return 1
    print(json.dumps(list(mapping.images)))
    return 0


def cmd_enumerate(args) -> int:
    raw = list(
        cyclesets.enumerate_cycle_sets(
            args.n,
            indecomposable=args.indecomposable,
            latin=args.latin,
            irretractable=args.irretractable,
            workers=args.threads,
        )
    )
    reps = cyclesets.unique_up_to_iso(raw)
    print(f"raw: {len(raw)}")
    print(f"up to isomorphism: {len(reps)}")
    if args.dump:
        import os

        os.makedirs(args.dump, exist_ok=True)
        for i, cs in enumerate(reps):
            path = os.path.join(args.dump, f"cycle_set_{args.n}_{i:04d}.json")
            with open(path, "w") as fh:
                fh.write(dumps(cs))
        _note(f"wrote {len(reps)} files to {args.dump}")
    return 0


def cmd_catalog(args) -> int:
    if args.name is None:
        for name in constructs.catalog_names():
            print(name)
        return 0
    try:
        entry = constructs.catalog(args.name)
    except KeyError as exc:
        return _fail_usage(str(exc))
    obj = entry.obj
    if isinstance(obj, extensions.ConstantExtension):
        obj = obj.cycle_set
    for label, ok in entry.checks.items():
        _note(f"{label}: {'pass' if ok else 'FAIL'}")
    sys.stdout.write(dumps(obj))
    return 0 if entry.ok else 1


# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ybe",
        description="Finite cycle sets, involutive solutions, and left braces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check the axioms of a document")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("analyze", help="full structural report of a cycle set")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("retract", help="apply the retraction")
    p.add_argument("file")
    p.add_argument("--steps", type=int, default=1)
    p.set_defaults(func=cmd_retract)

    p = sub.add_parser("extend", help="build a dynamical extension")
    p.add_argument("base")
    p.add_argument("cocycle")
    p.set_defaults(func=cmd_extend)

    p = sub.add_parser("brace", help="left brace operations")
    p.add_argument("file")
    p.add_argument(
        "action", choices=["lambda", "socle", "mpl", "to-cs", "semidirect"]
    )
    p.add_argument("h", nargs="?")
    p.add_argument("alpha", nargs="?")
    p.add_argument("--g", type=int)
    p.set_defaults(func=cmd_brace)

    p = sub.add_parser("construct", help="build a family instance")
    p.add_argument("family", choices=["cyclic", "prop22", "prop23"])
    p.add_argument("--params", required=True)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("iso", help="isomorphism test")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_iso)

    p = sub.add_parser("enumerate", help="enumerate cycle sets of size n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--indecomposable", action="store_true")
    p.add_argument("--latin", action="store_true")
    p.add_argument("--irretractable", action="store_true")
    p.add_argument("--dump")
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("catalog", help="named fixtures with their checks")
    p.add_argument("name", nargs="?")
    p.set_defaults(func=cmd_catalog)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except SchemaError as exc:
        return _fail_usage(str(exc))
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
