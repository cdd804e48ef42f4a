"""Command-line interface.

Exit status: 0 on success, 1 when a verification does not match its
prediction, 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from commgenus import catalog as cat
from commgenus.cgraph import (
    DEFAULT_ORACLE_BUDGET,
    analyze_genus,
    clique_decomposition,
    commuting_graph,
    genus_oracle,
    load_graph,
    to_dot,
)
from commgenus.errors import CommGenusError
from commgenus.finring import (
    DEFAULT_ENUM_BUDGET,
    DEFAULT_MAX_ORDER,
    RingTable,
    build_from_spec,
    center_is_field,
    load_ring_spec,
    ring_from_spec,
    validate,
)
from commgenus.theorems import CASE_IDS, TheoremCase, infer_cases, predict, prediction_document

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2


class _Fail(Exception):
    def __init__(self, code: int, message: str) -> None:
        super().__init__(message)
        self.code = code


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _write_json(path: str, doc: dict) -> None:
    Path(path).write_text(json.dumps(doc, indent=2) + "\n")


def _build(path: str, max_order: int) -> RingTable:
    return build_from_spec(load_ring_spec(path), max_order=max_order)


def cmd_validate(args: argparse.Namespace) -> int:
    spec = load_ring_spec(args.ringfile)
    R = ring_from_spec(spec, max_order=args.max_order)
    report = validate(R)
    print(f"ring: {spec.name}")
    for line in report.lines():
        print(line)
    return EXIT_OK if report.ok else EXIT_MISMATCH


def analysis_document(R: RingTable, source: str, budget: int = DEFAULT_ORACLE_BUDGET) -> dict:
    G = commuting_graph(R)
    d = clique_decomposition(G)
    genus = analyze_genus(G, d, budget)
    cases = infer_cases(R.order, len(R.center), R.unity is not None, center_is_field(R))
    checks = cat.check_theorems(cases, d)
    return {
        "input": source,
        "name": R.name,
        "order": R.order,
        "center_size": len(R.center),
        "unity": R.unity,
        "vertex_count": G.n,
        "edge_count": G.m,
        "decomposition": [[s, k] for s, k in d.counts()],
        "all_cliques": d.all_cliques,
        "terms": [[s, k, g] for s, k, g in genus.terms],
        "genus": genus.value,
        "method": genus.method,
        "classification": genus.classification,
        "theorem_case": [{"theorem": c.theorem, "variants": c.variants, "matched": c.matched} for c in checks] or None,
        "matched": all(c.ok for c in checks) if checks else None,
    }


def cmd_analyze(args: argparse.Namespace) -> int:
    R = _build(args.ringfile, args.max_order)
    doc = analysis_document(R, args.ringfile, args.budget)
    print(f"ring: {doc['name']} (order {doc['order']}, center size {doc['center_size']})")
    print(f"commuting graph: {doc['vertex_count']} vertices, {doc['edge_count']} edges")
    d = " + ".join(f"{k}K{s}" for s, k in doc["decomposition"])
    print(f"decomposition: {d}" + ("" if doc["all_cliques"] else " (not all components complete)"))
    for s, k, g in doc["terms"]:
        print(f"  {k} x genus(K{s}) = {k} x {g} = {k * g}")
    label = "at least " if doc["method"] == "lower_bound" else ""
    print(f"genus: {label}{doc['genus']} via {doc['method']}")
    print(f"classification: {doc['classification']}")
    for c in doc["theorem_case"] or []:
        status = c["matched"] or "NOT MATCHED by " + ", ".join(c["variants"])
        print(f"{c['theorem']}: {status}")
    if args.dot:
        Path(args.dot).write_text(to_dot(commuting_graph(R), "commuting"))
    if args.report:
        _write_json(args.report, doc)
    return EXIT_MISMATCH if doc["matched"] is False else EXIT_OK


def cmd_predict(args: argparse.Namespace) -> int:
    case = TheoremCase(args.case, args.p, args.q, args.t, args.l)
    pred = predict(case)
    doc = prediction_document(pred)
    if args.json:
        print(json.dumps(doc, indent=2))
        return EXIT_OK
    print(f"{case}: |R| = {case.ring_order}, |Z(R)| = {case.center_size}")
    for o in doc["outcomes"]:
        d = " + ".join(f"{k}K{s}" for s, k in o["decomposition"])
        terms = " + ".join(f"{k}*{g}" for s, k, g in o["terms"])
        print(f"  [{o['form']}] {d}: genus = {terms} = {o['genus']} ({o['classification']})")
    return EXIT_OK


def cmd_catalog(args: argparse.Namespace) -> int:
    entries = cat.builtin_entries()
    if args.action == "list":
        for e in entries:
            print(f"{e.name:<11} {str(e.case) if e.case else '-':<18} {e.recipe}")
        return EXIT_OK
    if args.name:
        try:
            entries = [cat.get_entry(args.name, entries)]
        except KeyError:
            raise _Fail(EXIT_USAGE, f"unknown catalog entry {args.name!r}")
    report = cat.verify_catalog(entries)
    print(report.table())
    if args.json:
        _write_json(args.json, report.document())
    return EXIT_OK if report.ok else EXIT_MISMATCH


def cmd_oracle(args: argparse.Namespace) -> int:
    G = load_graph(args.graphfile)
    result = genus_oracle(G, args.budget)
    print(f"graph: {G.n} vertices, {G.m} edges, {result.embeddings} rotation systems")
    print(f"genus: {result.value} ({result.classification})")
    return EXIT_OK


def cmd_search(args: argparse.Namespace) -> int:
    report = cat.search_witnesses(args.order, args.center_size, args.budget)
    for line in report.lines():
        print(line)
    return EXIT_OK if report.ok else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="commgenus", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check the ring axioms of a ring file")
    p.add_argument("ringfile")
    p.add_argument("--max-order", type=int, default=DEFAULT_MAX_ORDER)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("analyze", help="commuting graph, decomposition and genus of a ring file")
    p.add_argument("ringfile")
    p.add_argument("--dot", metavar="PATH", help="write the commuting graph in DOT format")
    p.add_argument("--report", metavar="PATH", help="write a JSON report")
    p.add_argument("--budget", type=int, default=DEFAULT_ORACLE_BUDGET, help="rotation-system budget for the oracle")
    p.add_argument("--max-order", type=int, default=DEFAULT_MAX_ORDER)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("predict", help="permitted commuting-graph shapes for a theorem case")
    p.add_argument("--case", required=True, choices=CASE_IDS)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int)
    p.add_argument("--t", type=int)
    p.add_argument("--l", type=_int_list, metavar="a,b,...")
    p.add_argument("--json", action="store_true", help="print the prediction as JSON")
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("catalog", help="list or verify the built-in rings")
    p.add_argument("action", choices=("list", "verify"))
    p.add_argument("name", nargs="?")
    p.add_argument("--json", metavar="PATH", help="write the verification report as JSON")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("oracle", help="exact genus of an adjacency-list graph")
    p.add_argument("graphfile")
    p.add_argument("--budget", type=int, default=DEFAULT_ORACLE_BUDGET)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("search", help="enumerate rings of a given order and center size")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--center-size", type=int, required=True)
    p.add_argument("--budget", type=int, default=DEFAULT_ENUM_BUDGET)
    p.set_defaults(func=cmd_search)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _Fail as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (CommGenusError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
