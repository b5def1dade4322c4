"""Command-line entry point: ``dgcoalg <command> [options] <file>``.

Exit status: 0 when every check passes, 1 when a mathematical check fails,
2 for invalid input (unreadable or malformed fixture, unknown names, bad flags).
"""

from __future__ import annotations

import argparse
import sys
from typing import List, Optional

from .coalgebra import (StructureError, validate_bicomodule, validate_coalgebra, validate_comodule,
                        validate_morphism)
from .cyclic import WindowError, h_cohomology, hc, hoch, hoch_bicomodule, operator_identities
from .coalgebra import regular_bicomodule
from .invariance import check_morita_context, check_quasi_iso_invariance, verify_cotilting
from .io import FixtureDocument, FixtureError, emit, parse, parse_field
from .resolution import ResolutionError

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise InputError(f"{self.prog}: error: {message}")


def build_parser() -> argparse.ArgumentParser:
    def global_flags(parser, defaults: bool):
        # subcommands repeat the flags without defaults so a value given before the subcommand survives
        keep = {} if defaults else {"default": argparse.SUPPRESS}
        parser.add_argument("--format", choices=("text", "json"), **({"default": "text"} if defaults else keep))
        parser.add_argument("--field", help='override the document field: "Q" or "F<p>", e.g. F5', **keep)

    common = argparse.ArgumentParser(add_help=False)
    global_flags(common, False)

    p = _Parser(prog="dgcoalg", description="Exact computations with finite-dimensional dg coalgebras.")
    global_flags(p, True)
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    v = sub.add_parser("validate", parents=[common], help="check every object's structure identities")
    v.add_argument("file")

    c = sub.add_parser("cohomology", parents=[common], help="Hoch, H or HC dimensions by degree")
    c.add_argument("--theory", choices=("hoch", "h", "hc"), required=True)
    c.add_argument("--max-degree", type=int, required=True)
    c.add_argument("--levels", type=int, help="resolution levels p (default: enough for the window)")
    c.add_argument("--coefficients", help="name of a C-C bicomodule (theories hoch and h)")
    c.add_argument("--coalgebra", help="restrict to one coalgebra of the document")
    c.add_argument("file")

    o = sub.add_parser("operators", parents=[common], help="check the cyclic operator relations")
    o.add_argument("--arity", type=int, required=True)
    o.add_argument("--check", action="store_true", help="run the relation checks (the only mode)")
    o.add_argument("--coalgebra")
    o.add_argument("file")

    q = sub.add_parser("check-qiso", parents=[common], help="quasi-isomorphism invariance pipeline")
    q.add_argument("--map", required=True)
    q.add_argument("--max-degree", type=int, default=3)
    q.add_argument("file")

    t = sub.add_parser("check-cotilting", parents=[common], help="verify cotilting certificates")
    t.add_argument("--n-max", type=int, help="override the certificate's Ext bound")
    t.add_argument("--name", help="only this certificate")
    t.add_argument("file")

    m = sub.add_parser("check-morita", parents=[common], help="verify Morita contexts")
    m.add_argument("--max-degree", type=int, default=3)
    m.add_argument("--name", help="only this context")
    m.add_argument("file")
    return p


def _dims(d):
    return {str(k): v for k, v in sorted(d.items())}


def _pick(table: dict, name: Optional[str], what: str) -> dict:
    if name is None:
        return dict(sorted(table.items()))
    if name not in table:
        raise InputError(f"no {what} named {name!r} in the document")
    return {name: table[name]}


def cmd_validate(doc: FixtureDocument, args) -> dict:
    results = []
    for kind, table, fn in (("coalgebra", doc.coalgebras, validate_coalgebra),
                            ("comodule", doc.comodules, validate_comodule),
                            ("bicomodule", doc.bicomodules, validate_bicomodule),
                            ("morphism", doc.morphisms, validate_morphism)):
        for name, obj in sorted(table.items()):
            rep = fn(obj)
            results.append({"kind": kind, "name": name, "ok": rep.ok,
                            "checks": list(rep.checks), "failures": [f.as_dict() for f in rep.failures]})
    return {"results": results, "ok": all(r["ok"] for r in results)}


def cmd_cohomology(doc: FixtureDocument, args) -> dict:
    if args.max_degree < 0:
        raise InputError("--max-degree must be non-negative")
    coalgebras = _pick(doc.coalgebras, args.coalgebra, "coalgebra")
    coeff = None
    if args.coefficients is not None:
        if args.theory == "hc":
            raise InputError("HC takes no coefficients")
        coeff = _pick(doc.bicomodules, args.coefficients, "bicomodule")[args.coefficients]
        coalgebras = {n: c for n, c in coalgebras.items() if coeff.left == c and coeff.right == c}
        if not coalgebras:
            raise InputError(f"{args.coefficients!r} is not a bicomodule over a coalgebra of the document")
    results = []
    for name, c in coalgebras.items():
        N = args.max_degree
        if args.theory == "hoch":
            dims = hoch(c, N) if coeff is None else hoch_bicomodule(coeff, c, N, args.levels)
        elif args.theory == "h":
            dims = h_cohomology(coeff if coeff is not None else regular_bicomodule(c), c, N, args.levels)
        else:
            dims = hc(c, N)
        results.append({"coalgebra": name, "coefficients": args.coefficients or name, "dims": _dims(dims),
                        "vector": [dims[k] for k in sorted(dims)]})
    return {"theory": args.theory, "max_degree": args.max_degree, "results": results, "ok": True}


def cmd_operators(doc: FixtureDocument, args) -> dict:
    if args.arity < 0:
        raise InputError("--arity must be non-negative")
    results = []
    for name, c in _pick(doc.coalgebras, args.coalgebra, "coalgebra").items():
        rel = operator_identities(c, args.arity)
        results.append({"coalgebra": name, "relations": rel, "ok": all(rel.values())})
    return {"arity": args.arity, "results": results, "ok": all(r["ok"] for r in results)}


def cmd_check_qiso(doc: FixtureDocument, args) -> dict:
    f = _pick(doc.morphisms, args.map, "morphism")[args.map]
    rep = check_quasi_iso_invariance(f, args.max_degree)
    return {"max_degree": args.max_degree, "results": [rep.as_dict()], "ok": rep.ok}


def cmd_check_cotilting(doc: FixtureDocument, args) -> dict:
    certs = _pick(doc.certificates, args.name, "certificate")
    if not certs:
        raise InputError("the document has no certificates")
    results = [verify_cotilting(c, args.n_max).as_dict() for c in certs.values()]
    return {"results": results, "ok": all(r["ok"] for r in results)}


def cmd_check_morita(doc: FixtureDocument, args) -> dict:
    ctxs = _pick(doc.contexts, args.name, "context")
    if not ctxs:
        raise InputError("the document has no Morita contexts")
    results = [check_morita_context(c, args.max_degree).as_dict() for c in ctxs.values()]
    return {"max_degree": args.max_degree, "results": results, "ok": all(r["ok"] for r in results)}


COMMANDS = {
    "validate": cmd_validate,
    "cohomology": cmd_cohomology,
    "operators": cmd_operators,
    "check-qiso": cmd_check_qiso,
    "check-cotilting": cmd_check_cotilting,
    "check-morita": cmd_check_morita,
}


def run(argv: Optional[List[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except InputError as e:
        print(str(e), file=stderr)
        return EXIT_INPUT
    except SystemExit as e:  # --help
        return EXIT_OK if not e.code else EXIT_INPUT
    try:
        override = parse_field(args.field) if args.field else None
        doc = parse(args.file, override)
        body = COMMANDS[args.command](doc, args)
    except (InputError, FixtureError, StructureError, WindowError, ResolutionError) as e:
        print(f"dgcoalg: invalid input: {e}", file=stderr)
        return EXIT_INPUT
    status = EXIT_OK if body["ok"] else EXIT_FAIL
    report = {"command": ["dgcoalg"] + argv, "field": doc.field.name, **body, "exit_status": status}
    stdout.write(emit(report, args.format))
    return status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
