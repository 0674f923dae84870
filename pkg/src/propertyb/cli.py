"""Command-line entry point: ``propertyb <subcommand> ...``.

Exit codes: 0 success / 2-colorable / SAT, 1 not 2-colorable / UNSAT /
property fails, 2 resource limit (size, timeout, budget, unknown), 64 usage
or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import atlas, cnf, constructions, verifier
from .hypergraph import HypergraphError, UniformHypergraph, dumps, loads

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_LIMIT = 2
EXIT_USAGE = 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read_input(path: Optional[str]) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def _load_hypergraph(path: Optional[str]) -> UniformHypergraph:
    return loads(_read_input(path))


def _emit(text: str, out: Optional[str]) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w") as fh:
            fh.write(text)


def _best_factorization(n: int) -> tuple[int, int]:
    pairs = [(a, n // a) for a in range(2, n // 2 + 1) if n % a == 0]
    if not pairs:
        raise UsageError(f"n={n} has no factorization a*b with a, b >= 2")
    return min(pairs, key=lambda ab: atlas.optimal_bound(ab[0]).bound
               * atlas.optimal_bound(ab[1]).bound ** ab[0])


def cmd_build(args) -> int:
    kind = args.construction
    if kind == "m8":
        if args.n not in (None, 8):
            raise UsageError("the m8 construction is 8-uniform; drop --n or pass --n 8")
        h = constructions.m8_construction()
    else:
        if args.n is None:
            raise UsageError(f"--n is required for --construction {kind}")
        n = args.n
        if kind == "best":
            h = atlas.best_construction(n, cap=args.cap)
        elif kind == "product":
            a, b = args.factors or _best_factorization(n)
            if a * b != n:
                raise UsageError(f"factors {a} x {b} do not multiply to {n}")
            h = constructions.product_construction(atlas.best_construction(a, cap=args.cap),
                                                   atlas.best_construction(b, cap=args.cap))
        else:
            if n < 3:
                raise UsageError(f"--construction {kind} needs n >= 3")
            core = (_load_hypergraph(args.core) if args.core
                    else atlas.best_construction(n - 2, cap=args.cap))
            make = {"aht": constructions.aht, "swap": constructions.swap_construction,
                    "layered": constructions.layered_construction}[kind]
            h = make(core, n)
    _emit(dumps(h, args.format), args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    h = _load_hypergraph(args.file)
    try:
        v = verifier.find_proper_coloring(h, fast=args.fast, threads=args.threads,
                                          timeout=args.timeout, max_vertices=args.max_vertices)
    except verifier.SearchLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    if args.json:
        print(json.dumps({"two_colorable": v.two_colorable,
                          "witness_red": v.red_vertices() if v.two_colorable else None,
                          "vertex_count": h.vertex_count, "edges": len(h),
                          "certificate_checked": v.certificate_checked}))
    elif v.two_colorable:
        print(f"2-colorable; Red vertices: {' '.join(map(str, v.red_vertices())) or '(none)'}")
    else:
        print(f"not 2-colorable ({h.vertex_count} vertices, {len(h)} edges, exhaustive)")
    return EXIT_OK if v.two_colorable else EXIT_NEGATIVE


def _load_formula(path: Optional[str]) -> cnf.CnfFormula:
    text = _read_input(path)
    head = text.lstrip()
    if head.startswith("c") or head.startswith("p"):
        return cnf.parse_dimacs(text)
    return cnf.to_monotone_cnf(loads(text))


def cmd_export(args) -> int:
    f = cnf.to_monotone_cnf(_load_hypergraph(args.file))
    _emit(cnf.dimacs_text(f), args.dimacs)
    return EXIT_OK


def cmd_solve(args) -> int:
    f = _load_formula(args.file)
    command = args.external or cnf.default_solver_command()
    if command:
        try:
            result = cnf.solve_external(f, command, args.timeout)
        except cnf.SolverOutputError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_LIMIT
    else:
        result = cnf.dpll_solve(f, args.budget)
    if args.json:
        print(json.dumps({"status": result.status.value,
                          "red": None if result.assignment is None else
                          [i for i, val in enumerate(result.assignment) if val],
                          "decisions": result.decisions, "diagnostics": result.diagnostics}))
    else:
        print(result.status.value)
        if result.assignment is not None:
            print("Red vertices:", " ".join(str(i) for i, val in enumerate(result.assignment) if val))
        if result.diagnostics:
            print(result.diagnostics, file=sys.stderr)
    return {cnf.Status.SAT: EXIT_OK, cnf.Status.UNSAT: EXIT_NEGATIVE}.get(result.status, EXIT_LIMIT)


def cmd_table(args) -> int:
    if args.max < 1:
        raise UsageError("--max must be >= 1")
    if args.edition != "optimal" and args.max > atlas.TABLE_MAX:
        raise UsageError(f"the {args.edition} table stops at n={atlas.TABLE_MAX}; "
                         "use --edition optimal for larger n")
    rows = []
    for n in range(1, args.max + 1):
        e = atlas.optimal_bound(n) if args.edition == "optimal" else atlas.table_entry(n, args.edition)
        rows.append(e)
    if args.json:
        print(json.dumps([{"n": e.n, "bound": e.bound, "rule": e.rule.value,
                           "operands": list(e.operands), "formula": e.formula()} for e in rows]))
    else:
        print("n\tbound\trule")
        for e in rows:
            print(f"{e.n}\t{e.bound}\t{e.rule.value}")
    return EXIT_OK


def cmd_lemma(args) -> int:
    ps = [args.p] if args.p else list(range(1, args.n + 1))
    try:
        results = {p: verifier.verify_lemma1(args.n, p) for p in ps}
    except verifier.SearchLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if args.json:
        print(json.dumps({"n": args.n, "holds": {str(p): ok for p, ok in results.items()}}))
    else:
        for p, ok in results.items():
            print(f"n={args.n}\tp={p}\t{'holds' if ok else 'FAILS'}")
    return EXIT_OK if all(results.values()) else EXIT_NEGATIVE


def cmd_minimality(args) -> int:
    h = _load_hypergraph(args.file)
    try:
        minimal = verifier.minimality_probe(h, max_vertices=args.max_vertices)
    except verifier.SearchLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    if args.json:
        print(json.dumps({"edge_minimal": minimal, "edges": len(h)}))
    else:
        print("every single-edge deletion is 2-colorable" if minimal
              else "some single-edge deletion is still not 2-colorable")
    return EXIT_OK if minimal else EXIT_NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="propertyb", description=__doc__.splitlines()[0])
    parser.add_argument("--config", help="JSON file with default option values")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("build", help="construct a non-2-colorable hypergraph")
    p.add_argument("--construction", required=True,
                   choices=["product", "aht", "swap", "layered", "m8", "best"])
    p.add_argument("--n", type=int)
    p.add_argument("--core", help="core hypergraph file (aht/swap/layered)")
    p.add_argument("--factors", type=int, nargs=2, metavar=("A", "B"))
    p.add_argument("--cap", type=int, default=atlas.DEFAULT_CONSTRUCTION_CAP)
    p.add_argument("--format", choices=["json", "edgelist"], default="json")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("verify", help="exhaustive 2-colorability check")
    p.add_argument("file", nargs="?", default="-")
    p.add_argument("--fast", action="store_true")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--timeout", type=float)
    p.add_argument("--max-vertices", type=int, default=verifier.EXHAUSTIVE_LIMIT)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("export", help="write the monotone CNF as DIMACS")
    p.add_argument("file", nargs="?", default="-")
    p.add_argument("--dimacs", required=True, help="output path or '-'")
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("solve", help="SAT-solve a hypergraph or DIMACS file")
    p.add_argument("file", nargs="?", default="-")
    p.add_argument("--external", help=f"solver command (default: ${cnf.SOLVER_ENV})")
    p.add_argument("--timeout", type=float)
    p.add_argument("--budget", type=int, default=cnf.DEFAULT_BUDGET)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("table", help="print the m(n) upper-bound table")
    p.add_argument("--max", type=int, default=atlas.TABLE_MAX)
    p.add_argument("--edition", choices=["improved", "classical", "optimal"], default="improved")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("lemma-check", help="check the matching-pair lemma by enumeration")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_lemma)

    p = sub.add_parser("minimality", help="check that every single-edge deletion is 2-colorable")
    p.add_argument("file", nargs="?", default="-")
    p.add_argument("--max-vertices", type=int, default=verifier.EXHAUSTIVE_LIMIT)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_minimality)
    return parser


def _apply_config(parser: argparse.ArgumentParser, argv: Sequence[str]) -> None:
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if not known.config:
        return
    try:
        with open(known.config) as fh:
            config = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config {known.config}: {exc}") from exc
    subparsers = next(a for a in parser._actions if isinstance(a, argparse._SubParsersAction))
    dests = {a.dest for sp in subparsers.choices.values() for a in sp._actions}
    unknown = set(config) - dests
    if unknown:
        raise UsageError(f"unknown config keys: {', '.join(sorted(unknown))}")
    for sp in subparsers.choices.values():
        own = {a.dest for a in sp._actions}
        sp.set_defaults(**{k.replace("-", "_"): v for k, v in config.items() if k in own})


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        _apply_config(parser, argv)
        args = parser.parse_args(argv)
        return args.func(args)
    except (UsageError, HypergraphError, cnf.CnfError, ValueError) as exc:
        print(f"propertyb: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
