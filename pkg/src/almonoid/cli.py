"""Command-line front end.

Exit status: 0 when nothing was found, 1 for a finding (a failing axiom or
claim, a counterexample, an incompatible partition), 2 for usage or input
errors.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import congruence as con
from . import constructions as cons
from . import structure as st
from .algebra import AlgebraError, FiniteAlgebra, MalformedTable, NoUnity, SizeLimit, WindowedAlgebra, builtin
from .catalog import run_catalog
from .profiles import PROFILE_NAMES, check_profile
from .search import SearchSpec, enumerate_models, independence_report, searchable_profiles
from .terms import ClaimSyntaxError, check_claim, default_jobs, parse_claims
from .textformat import AlgebraParseError, format_algebra, parse_algebras


class UsageError(Exception):
    pass


def algebra_to_dict(A: FiniteAlgebra) -> dict:
    d = {"name": A.name, "size": A.size, "zero": A.zero}
    for op in ("plus", "join", "meet", "star"):
        T = A.table(op)
        d[op] = None if T is None else [list(r) for r in T]
    return d


def _load(spec: str, force_builtin: bool, bound):
    """Models named by a file path or a built-in URI."""
    if force_builtin or not os.path.exists(spec):
        try:
            A = builtin(spec)
        except ValueError:
            if force_builtin:
                raise UsageError(f"unknown built-in model {spec!r}")
            raise UsageError(f"no such file or built-in model: {spec}")
        if bound is not None and isinstance(A, WindowedAlgebra) and ":" not in spec:
            A = A.widened(bound)
        return [A]
    with open(spec) as fh:
        text = fh.read()
    algebras = parse_algebras(text)
    base = os.path.basename(spec)
    out = []
    for k, A in enumerate(algebras):
        if not A.name:
            A = A.with_tables(name=base if len(algebras) == 1 else f"{base}#{k + 1}")
        out.append(A)
    return out


def _load_all(args):
    models = []
    for spec in args.inputs:
        models.extend(_load(spec, args.builtin, args.bound))
    return models


def _finite(A, what):
    if not isinstance(A, FiniteAlgebra):
        raise UsageError(f"{what} needs a finite model, got {A.name}")
    return A


def _emit(args, text_lines, payload):
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        for line in text_lines:
            print(line)


# --- commands -------------------------------------------------------------

def cmd_check(args) -> int:
    models = _load_all(args)
    lines, out, finding = [], [], False
    for A in models:
        rep = check_profile(A, args.profile, fast=args.fast, jobs=args.jobs)
        finding |= rep.fails
        out.append({"model": A.name, **rep.to_dict()})
        lines.append(f"{A.name}: {args.profile} {rep.verdict}")
        for r in rep.axioms.values():
            lines.append("  " + r.describe(A))
    _emit(args, lines, out)
    return 1 if finding else 0


def cmd_claims(args) -> int:
    extra = []
    if args.claims:
        with open(args.claims) as fh:
            extra = parse_claims(fh.read())
    models = _load_all(args)
    lines, out, finding = [], [], False
    for A in models:
        reports = run_catalog(A, jobs=args.jobs) + [check_claim(A, c, jobs=args.jobs) for c in extra]
        fails = [r.id for r in reports if r.fails]
        inconclusive = [r.id for r in reports if r.verdict == "Inconclusive"]
        finding |= bool(fails)
        out.append({"model": A.name, "claims": [r.to_dict() for r in reports],
                    "fails": fails, "inconclusive": inconclusive})
        lines.append(f"{A.name}: {len(fails)} failing, {len(inconclusive)} inconclusive, "
                     f"{len(reports) - len(fails) - len(inconclusive)} holding")
        for r in reports:
            lines.append("  " + r.describe(A))
    _emit(args, lines, out)
    return 1 if finding else 0


def cmd_search(args) -> int:
    try:
        spec = SearchSpec(args.size, args.satisfy, args.violate, args.limit, args.canonical)
    except KeyError as e:
        raise UsageError(str(e.args[0]))
    models = list(enumerate_models(spec, args.jobs))
    if args.format == "json":
        print(json.dumps([algebra_to_dict(A) for A in models], indent=2))
    else:
        print("\n---\n".join(format_algebra(A, A.name) for A in models), end="\n" if models else "")
    print(f"# {len(models)} model(s)", file=sys.stderr)
    return 1 if args.violate and models else 0


def cmd_analyze(args) -> int:
    wanted = [k for k in ("invertibles", "idempotents", "complemented", "isometries", "cone")
              if getattr(args, k)] or ["invertibles", "idempotents", "complemented", "isometries", "cone"]
    lines, out, finding = [], [], False
    for A in _load_all(args):
        A = _finite(A, "analyze")
        u, urep = st.find_unity(A)
        reports = {"unity": urep}
        if "invertibles" in wanted:
            reports["invertibles"] = st.invertibles(A)
            reports["invertible-formulas"] = st.invertible_formulas_check(A)
        if "idempotents" in wanted:
            reports["idempotents"] = st.idempotents(A)
        if "complemented" in wanted:
            try:
                reports["complemented"] = st.complemented(A)
            except NoUnity:
                reports["complemented"] = st.StructureReport("complemented", notes=["no unity"])
        if "isometries" in wanted:
            reports["translation-isometries"] = st.translation_isometry_scan(A)
            reports["star-isometries"] = st.star_translation_scan(A)
        entry = {"model": A.name, "reports": {k: r.to_dict() for k, r in reports.items()}}
        lines.append(f"{A.name}:")
        for k, r in reports.items():
            finding |= not r.holds
            extra = f" failed {r.failed()}" if r.failed() else ""
            notes = f" ({'; '.join(r.notes)})" if r.notes else ""
            lines.append(f"  {k}: {{{', '.join(map(str, r.elements))}}}{extra}{notes}")
        if "cone" in wanted:
            try:
                C, prep = st.positive_cone(A)
                finding |= not prep.holds
                entry["cone"] = {"elements": list(prep.extra["embedding"]), **prep.to_dict()}
                lines.append(f"  cone: {{{', '.join(map(str, prep.extra['embedding']))}}} drl {prep.verdict}")
            except st.NotClosed as e:
                finding = True
                entry["cone"] = {"error": str(e)}
                lines.append(f"  cone: {e}")
        out.append(entry)
    _emit(args, lines, out)
    return 1 if finding else 0


def _classes_text(theta):
    return json.dumps(con.classes(theta), separators=(",", ":"))


def cmd_congruences(args) -> int:
    parts = [k for k in ("lattice", "permutable", "distributive", "pixley") if getattr(args, k)] or [
        "lattice", "permutable", "distributive", "pixley"]
    lines, out, finding = [], [], False
    for A in _load_all(args):
        A = _finite(A, "congruences")
        entry = {"model": A.name}
        lines.append(f"{A.name}:")
        cs = con.all_congruences(A, args.max_size)
        if "lattice" in parts:
            entry["congruences"] = [con.classes(t) for t in cs]
            lines.append(f"  {len(cs)} congruence(s)")
            lines += ["    " + _classes_text(t) for t in cs]
        checks = {}
        if "permutable" in parts:
            checks["permutable"] = con.check_con_permutable(A, cs)
        if "distributive" in parts:
            checks["distributive"] = con.check_con_distributive(A, cs)
        for k, r in checks.items():
            entry[k] = r.to_dict()
            wit = "" if r.holds else f" witness {r.witness}"
            lines.append(f"  {k}: {r.holds}{wit}")
        if "pixley" in parts:
            pix = con.pixley_check(A)
            entry["pixley"] = [r.to_dict() for r in pix]
            lines += ["  " + r.describe(A) for r in pix]
            # a Pixley term forces both properties; anything else is a finding
            if all(r.holds for r in pix):
                finding |= not all(r.holds for r in checks.values())
        out.append(entry)
    _emit(args, lines, out)
    return 1 if finding else 0


def _one(spec, args):
    models = _load(spec, args.builtin, args.bound)
    if len(models) != 1:
        raise UsageError(f"{spec}: expected exactly one model")
    return models[0]


def _partition(text: str, n: int):
    data = json.loads(text)
    if data and all(isinstance(x, list) for x in data):
        return con.from_classes(n, data)
    if len(data) != n:
        raise UsageError("partition must list a class id per element")
    return con.normalize(data)


def cmd_construct(args) -> int:
    op, operands = args.operation, args.operands
    need = {"product": 2, "quotient": 2, "sub": 2, "drl2al": 1}[op]
    if len(operands) != need:
        raise UsageError(f"construct {op} takes {need} operand(s)")
    A = _one(operands[0], args)
    try:
        if op == "product":
            R = cons.product(_finite(A, op), _finite(_one(operands[1], args), op))
        elif op == "quotient":
            src = operands[1]
            text = open(src).read() if os.path.exists(src) else src
            R, _ = cons.congruence_quotient(_finite(A, op), _partition(text, A.size))
        elif op == "sub":
            seed = [int(x) for x in operands[1].split(",") if x.strip()]
            if any(not 0 <= x < A.size for x in seed):
                raise UsageError("seed element out of range")
            R, _ = cons.subalgebra(_finite(A, op), seed)
        else:
            R = cons.drl_to_al(A)
    except (cons.IncompatiblePartition, cons.NotDRl) as e:
        print(f"{A.name}: {e}", file=sys.stderr)
        return 1
    if args.format == "json":
        print(json.dumps(algebra_to_dict(R), indent=2))
    else:
        print(format_algebra(R, R.name))
    return 0


def cmd_independence(args) -> int:
    rep = independence_report(args.search_bound, args.jobs)
    lines = []
    for d in rep["directions"]:
        lines.append(f"{d['direction']}: {d['verdict']} ({d.get('name') or d['model'] or 'no model'})")
        if "other_axioms" in d:
            lines += [f"  {k}: {v}" for k, v in d["other_axioms"].items()]
            lines.append(f"  AX2: {d['AX2']['verdict']} witness {d['AX2']['witness']}")
            lines.append(f"  at (V, U): {d['explicit']['computation']}")
        elif d["direction"] == "not-AX4":
            if d["model"]:
                lines.append(f"  AX4 fails at {d['AX4']['witness']}")
                lines += ["  " + s for s in d["model"].splitlines()]
            else:
                lines.append("  " + d["note"])
    _emit(args, lines, rep)
    return 0


# --- parser ---------------------------------------------------------------

def _positive(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--jobs", type=_positive, default=None,
                        help="worker processes (default: $ALMONOID_JOBS or 1)")
    common.add_argument("--bound", type=_positive, default=None,
                        help="window bound for built-in integer models given without one")
    common.add_argument("--builtin", action="store_true",
                        help="treat inputs as built-in model names (boolean:k, mv:n, int:B, intu:B, intuv:B)")

    p = argparse.ArgumentParser(prog="almonoid", description="Check, analyze and search small AL-monoids.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", parents=[common], help="check models against an axiom profile")
    c.add_argument("inputs", nargs="+")
    c.add_argument("--profile", choices=PROFILE_NAMES, default="al-monoid")
    c.add_argument("--fast", action="store_true", help="stop at the first failing axiom")
    c.set_defaults(func=cmd_check)

    c = sub.add_parser("claims", parents=[common], help="run the claim catalog and optional user claims")
    c.add_argument("inputs", nargs="+")
    c.add_argument("--claims", help="file of user claims")
    c.set_defaults(func=cmd_claims)

    c = sub.add_parser("search", parents=[common], help="enumerate small models")
    c.add_argument("--size", type=_positive, required=True)
    c.add_argument("--satisfy", default="al-monoid", choices=searchable_profiles())
    c.add_argument("--violate", help="axiom label or claim id the models must fail")
    c.add_argument("--limit", type=_positive)
    c.add_argument("--canonical", action=argparse.BooleanOptionalAction, default=False,
                   help="drop isomorphic copies")
    c.set_defaults(func=cmd_search)

    c = sub.add_parser("analyze", parents=[common], help="structural analysis of finite models")
    c.add_argument("inputs", nargs="+")
    for flag in ("invertibles", "idempotents", "complemented", "isometries", "cone"):
        c.add_argument(f"--{flag}", action="store_true")
    c.set_defaults(func=cmd_analyze)

    c = sub.add_parser("congruences", parents=[common], help="congruence lattice and Pixley identities")
    c.add_argument("inputs", nargs="+")
    c.add_argument("--max-size", type=_positive, default=con.DEFAULT_MAX_SIZE)
    for flag in ("lattice", "permutable", "distributive", "pixley"):
        c.add_argument(f"--{flag}", action="store_true")
    c.set_defaults(func=cmd_congruences)

    c = sub.add_parser("construct", parents=[common], help="product, quotient, subalgebra, drl2al")
    c.add_argument("operation", choices=("product", "quotient", "sub", "drl2al"))
    c.add_argument("operands", nargs="+")
    c.set_defaults(func=cmd_construct)

    c = sub.add_parser("independence", parents=[common], help="independence witnesses for AX2 and AX4")
    c.add_argument("--search-bound", type=_positive, default=5)
    c.set_defaults(func=cmd_independence)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    if args.jobs is None:
        args.jobs = default_jobs()
    try:
        return args.func(args)
    except (UsageError, AlgebraParseError, MalformedTable, ClaimSyntaxError, SizeLimit,
            json.JSONDecodeError, OSError, ValueError) as e:
        print(f"almonoid: error: {e}", file=sys.stderr)
        return 2
    except AlgebraError as e:
        print(f"almonoid: error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
