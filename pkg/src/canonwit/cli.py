"""Command line front end.

Exit codes: 0 success, 1 input error, 2 inconclusive, 3 verification or
antichain failure, 4 resource limit.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from collections.abc import Sequence
from itertools import combinations

from .bounds import DEFAULT_MAX_BITS, evaluate
from .canonical import (
    DEFAULT_MIN_H_ORDER,
    HGRAPH,
    HOLE,
    CanonicalDescriptor,
    enumerate_canonical,
    find_canonical,
    make_canonical,
    verify_antichain,
)
from .edgelist import format_edge_list, read_edge_list
from .errors import BoundOverflow, CanonwitError, MalformedInputError, ResourceLimitError
from .extraction import Inconclusive, verify_witness, witness_from_json, witness_pipeline, witness_to_json
from .generators import grid_graph, rake_graph
from .graph import Graph
from .oracles import (
    LIMITS,
    find_biclique,
    find_hole,
    find_minor_model,
    longest_induced_path,
    longest_path,
    maximum_clique,
    maximum_independent_set,
    treewidth_exact,
)

EXIT_OK, EXIT_INPUT, EXIT_INCONCLUSIVE, EXIT_FAILED, EXIT_LIMIT = 0, 1, 2, 3, 4
CEILING_ENV = "CANONICAL_WITNESS_CEILING"

STAGE_CHOICES = {
    "pipeline": ("direct", "dense-rake", "path"),
    "direct": ("direct",),
    "dense-rake": ("dense-rake",),
    "path": ("path",),
}
GEN_KINDS = ("hole", "h", "h-semi", "h-tight", "rake", "grid")
ORACLE_QUERIES = ("longest-path", "longest-induced-path", "treewidth", "clique",
                  "independent-set", "hole", "biclique", "canonical", "grid-minor")


def _apply_env_ceiling() -> None:
    raw = os.environ.get(CEILING_ENV)
    if raw is None or raw == "":
        return
    try:
        value = int(raw)
    except ValueError:
        raise MalformedInputError(f"{CEILING_ENV} must be an integer, got {raw!r}") from None
    if value < 1:
        raise MalformedInputError(f"{CEILING_ENV} must be positive, got {value}")
    for name in ("pattern_vertices", "longest_path_vertices", "induced_path_vertices",
                 "treewidth_vertices", "minor_pattern_vertices"):
        setattr(LIMITS, name, value)


def _emit(args: argparse.Namespace, payload: dict, human: str) -> None:
    if args.human:
        print(human)
    else:
        print(json.dumps(payload, sort_keys=True))


def _describe(w) -> str:
    d = witness_to_json(w)
    kind = d["type"]
    if kind == "canonical":
        text = f"canonical {d['descriptor']}: {' '.join(map(str, d['vertices']))}"
    elif kind == "induced-path":
        text = f"induced path on {len(d['vertices'])} vertices: {' '.join(map(str, d['vertices']))}"
    elif kind == "biclique":
        text = f"biclique {d['sideA']} x {d['sideB']}"
    elif kind == "rake":
        text = f"rake base {d['base']} teeth {d['teeth']}"
    else:
        text = f"inconclusive: {d['reason']}"
    return "\n".join([text] + [f"  {line}" for line in d["stageLog"]])


def cmd_extract(args: argparse.Namespace) -> int:
    g = read_edge_list(args.input)
    w = witness_pipeline(g, args.s, args.q, stages=STAGE_CHOICES[args.stage],
                         grid_k=args.grid_k, min_h_order=args.min_h_order)
    ok, _ = verify_witness(g, w)
    _emit(args, witness_to_json(w, verified=ok), _describe(w))
    return EXIT_INCONCLUSIVE if isinstance(w, Inconclusive) else EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    g = read_edge_list(args.input)
    try:
        with open(args.witness, encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise MalformedInputError(f"witness is not JSON: {exc.msg}", exc.lineno) from None
    w = witness_from_json(data)
    ok, bad = verify_witness(g, w)
    _emit(args, {"valid": ok, "diagnostic": bad}, "valid" if ok else f"invalid: {bad}")
    return EXIT_OK if ok else EXIT_FAILED


def cmd_bounds(args: argparse.Namespace) -> int:
    try:
        v = evaluate(args.fn, args.args, literal=args.literal, f_exponent=args.f_exponent,
                     max_bits=args.max_bits)
    except BoundOverflow as exc:
        payload = {"fn": args.fn, "args": args.args, "overflow": True,
                   "log2Lower": exc.log2_lower, "maxBits": exc.max_bits}
        if args.json:
            print(json.dumps(payload, sort_keys=True))
        else:
            print(f">= 2^{exc.log2_lower}")
        print(str(exc), file=sys.stderr)
        return EXIT_LIMIT
    flags = sorted(v.flags)
    if args.json:
        print(json.dumps({"fn": args.fn, "args": args.args, "value": str(v.value),
                          "flags": flags, "provenance": v.provenance}, sort_keys=True))
    else:
        print(v.value)
        print(" ".join(flags))
    return EXIT_OK


def _gen_graph(args: argparse.Namespace) -> Graph:
    kind, order = args.kind, args.order
    if order is None:
        raise MalformedInputError(f"--kind {kind} needs --order/-k")
    if kind == "hole":
        return make_canonical(CanonicalDescriptor(HOLE, order))
    if kind in ("h", "h-semi", "h-tight"):
        tight = {"h": "plain", "h-semi": "semi", "h-tight": "tight"}[kind]
        return make_canonical(CanonicalDescriptor(HGRAPH, order, tight), min_h_order=args.min_h_order)
    if kind == "rake":
        return rake_graph(order, args.dense)
    if order < 1:
        raise MalformedInputError("grid needs order >= 1")
    return grid_graph(order)


def cmd_gen(args: argparse.Namespace) -> int:
    g = _gen_graph(args)
    if args.json:
        print(json.dumps({"n": g.n, "edges": [list(e) for e in g.edges]}, sort_keys=True))
    else:
        sys.stdout.write(format_edge_list(g))
    return EXIT_OK


def cmd_antichain(args: argparse.Namespace) -> int:
    ds = enumerate_canonical(args.max_order, min_h_order=args.min_h_order)
    bad = verify_antichain(ds)
    pairs = len(list(combinations(ds, 2)))
    violations = [[str(a), str(b)] for a, b in bad]
    if bad:
        human = "\n".join([f"FAIL {len(bad)} comparable pairs"] + [f"  {a} is induced in {b}" for a, b in violations])
    else:
        human = f"OK {pairs} pairs"
    _emit(args, {"ok": not bad, "pairs": pairs, "descriptors": [str(d) for d in ds],
                 "violations": violations}, human)
    return EXIT_FAILED if bad else EXIT_OK


def cmd_oracle(args: argparse.Namespace) -> int:
    g = read_edge_list(args.input)
    query = args.query
    result: object
    if query == "longest-path":
        result = longest_path(g)
    elif query == "longest-induced-path":
        result = longest_induced_path(g)
    elif query == "treewidth":
        result = treewidth_exact(g)
    elif query == "clique":
        result = list(maximum_clique(g))
    elif query == "independent-set":
        result = list(maximum_independent_set(g))
    elif query == "hole":
        result = find_hole(g, args.order or 4)
    elif query == "biclique":
        found = find_biclique(g, args.a, args.b)
        result = None if found is None else [list(found[0]), list(found[1])]
    elif query == "canonical":
        wit = find_canonical(g, args.order or 4, min_h_order=args.min_h_order)
        result = None if wit is None else {"descriptor": str(wit.descriptor), "vertices": list(wit.mapping)}
    else:
        k = args.order or 2
        model = find_minor_model(g, grid_graph(k), ceiling=max(k * k, LIMITS.minor_pattern_vertices))
        result = None if model is None else [list(s) for s in model.branch_sets]
    _emit(args, {"query": query, "result": result}, f"{query}: {result}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="canonwit", description=__doc__,
                                formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--human", action="store_true", help="human-readable output instead of JSON")

    sp = sub.add_parser("extract", help="find a certified witness in a graph")
    sp.add_argument("--input", required=True)
    sp.add_argument("--s", type=int, required=True)
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--stage", choices=sorted(STAGE_CHOICES), default="pipeline")
    sp.add_argument("--grid-k", type=int, default=5)
    sp.add_argument("--min-h-order", type=int, default=DEFAULT_MIN_H_ORDER)
    common(sp)
    sp.set_defaults(func=cmd_extract)

    sp = sub.add_parser("verify", help="check a witness against a graph")
    sp.add_argument("--input", required=True)
    sp.add_argument("--witness", required=True)
    common(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("bounds", help="evaluate a bound function exactly")
    sp.add_argument("--fn", required=True, choices=["P", "R", "C", "Y", "Z", "b", "c", "D", "X"])
    sp.add_argument("--args", type=int, nargs="+", required=True)
    sp.add_argument("--literal", action="store_true", help="use the recursion's base cases verbatim")
    sp.add_argument("--f-exponent", type=int, default=10)
    sp.add_argument("--max-bits", type=int, default=DEFAULT_MAX_BITS)
    fmt = sp.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="JSON instead of value and flag lines")
    fmt.add_argument("--human", action="store_true", help="value and flag lines (the default)")
    sp.set_defaults(func=cmd_bounds)

    sp = sub.add_parser("gen", help="write a named graph as an edge list")
    sp.add_argument("--kind", required=True, choices=GEN_KINDS)
    sp.add_argument("--order", "-k", type=int)
    sp.add_argument("--dense", type=int, default=1, help="rake density")
    sp.add_argument("--min-h-order", type=int, default=DEFAULT_MIN_H_ORDER)
    fmt = sp.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="JSON instead of the edge-list format")
    fmt.add_argument("--human", action="store_true", help="edge-list format (the default)")
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("antichain", help="check that canonical graphs are pairwise incomparable")
    sp.add_argument("--max-order", type=int, required=True)
    sp.add_argument("--min-h-order", type=int, default=DEFAULT_MIN_H_ORDER)
    common(sp)
    sp.set_defaults(func=cmd_antichain)

    sp = sub.add_parser("oracle", help="run an exact oracle on a graph")
    sp.add_argument("--input", required=True)
    sp.add_argument("--query", required=True, choices=ORACLE_QUERIES)
    sp.add_argument("--order", type=int, help="minimum order (hole, canonical) or grid size")
    sp.add_argument("--a", type=int, default=2)
    sp.add_argument("--b", type=int, default=2)
    sp.add_argument("--min-h-order", type=int, default=DEFAULT_MIN_H_ORDER)
    common(sp)
    sp.set_defaults(func=cmd_oracle)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad flags; 2 means inconclusive here
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        _apply_env_ceiling()
        return args.func(args)
    except MalformedInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except (OSError, CanonwitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
