"""Command-line front end.

Exit codes: 0 ok (findings included), 1 input error, 2 failure under
``--strict``, 3 resource cap exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from .catalog import MAX_EDGES_CAP, CatalogError, CatalogSpec, generate, sweep, write_jsonl
from .census import (CHECKS, DEFAULT_MAX_MBC, Census, CensusTooLarge, TupleError,
                     build_patch_from_tuple, census_csv, census_report, prepare, run_checks)
from .cycle_space import fundamental_basis
from .intersection import simple_paths
from .multigraph import GraphError, MultiGraph, bridges, cyclic_part, parse_graph
from .ribbon import boundary_components

EXIT_OK, EXIT_INPUT, EXIT_STRICT, EXIT_CAP = 0, 1, 2, 3


class InputError(Exception):
    pass


def _load(path: str) -> MultiGraph:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return parse_graph(text)
    except GraphError as exc:
        raise InputError(f"{path}: {exc}") from None


def _dump(obj, fh) -> None:
    json.dump(obj, fh, indent=2, sort_keys=False)
    fh.write("\n")


def _census(args) -> tuple[Census, list[str]]:
    g = _load(args.graph)
    h, rot = prepare(g, resolve_cubic=args.resolve_cubic, normalize=not args.keep_rotation)
    basis = fundamental_basis(h, args.basis)
    notes = []
    if basis.method != args.basis:
        notes.append(f"basis {args.basis} unavailable for m={h.m}; used {basis.method}")
    c = Census(h, rot, basis=basis, max_mbc=args.max_mbc)
    c.warnings.extend(notes)
    return c, notes


def cmd_analyze(args) -> tuple[dict, int]:
    g = _load(args.graph)
    cp, _ = cyclic_part(g)
    h, rot = prepare(g, resolve_cubic=args.resolve_cubic, normalize=not args.keep_rotation)
    basis = fundamental_basis(h, args.basis)
    c = Census(h, rot, basis=basis, max_mbc=args.max_mbc)
    hg = c.H
    kinds = {"edge": 0, "vertex": 0}
    for e in hg.edges:
        kinds[e.kind] += 1
    out = {
        "graph": g.name,
        "n": g.n,
        "m": g.m,
        "q": g.m - g.n + 1,
        "bridges": sorted(bridges(g)),
        "cyclic_part": {"n": cp.n, "m": cp.m, "bridges": sorted(bridges(cp)),
                        "degrees": sorted((cp.degree(v) for v in cp.vertices), reverse=True)},
        "resolved": h.m != cp.m,
        "m_bc": c.m_bc,
        "basis": basis.to_json(h),
        "H": {"vertices": hg.q, "edges": [e.to_json() for e in hg.edges],
              "edge_type": kinds["edge"], "vertex_type": kinds["vertex"],
              "paths": len(simple_paths(hg)) if hg.q <= 12 else None},
        "p": c.p,
        "c": c.c,
        "strip_bound": c.strip_bound,
        "warnings": c.warnings,
    }
    return out, EXIT_OK


def cmd_census(args) -> tuple[dict | str, int]:
    c, _ = _census(args)
    if args.format == "csv":
        return census_csv(c), EXIT_OK
    return census_report(c), EXIT_OK


def _strict_code(statuses: Sequence[str], strict: bool) -> int:
    if strict and any(s in ("fail", "finding") for s in statuses):
        return EXIT_STRICT
    return EXIT_OK


def cmd_verify(args) -> tuple[dict, int]:
    c, _ = _census(args)
    names = args.checks.split(",") if args.checks else None
    try:
        recs = run_checks(c, names)
    except KeyError as exc:
        raise InputError(str(exc.args[0])) from None
    out = {"graph": c.graph.name, "resolved": args.resolve_cubic, "warnings": c.warnings,
           "checks": [r.to_json() for r in recs]}
    return out, _strict_code([r.status for r in recs], args.strict)


def _spec(args) -> CatalogSpec:
    try:
        return CatalogSpec(args.max_edges, cubic_only=args.cubic, bridgeless_only=args.bridgeless,
                           allow_loops=not args.no_loops,
                           include_degree_two_cyclic=args.include_degree_two_cyclic)
    except CatalogError as exc:
        raise InputError(str(exc)) from None


def cmd_sweep(args) -> tuple[dict, int]:
    spec = _spec(args)
    checks = args.checks.split(",") if args.checks else None
    try:
        rep = sweep(spec, checks=checks, resolve_cubic=args.resolve_cubic, max_mbc=args.max_mbc)
    except CatalogError as exc:
        raise InputError(str(exc)) from None
    statuses = ["fail"] * rep["failures"] + ["finding"] * rep["findings"]
    return rep, _strict_code(statuses, args.strict)


def cmd_strip(args) -> tuple[dict, int]:
    c, _ = _census(args)
    if not c.S:
        return {"graph": c.graph.name, "strip": None, "finding": "no strip"}, _strict_code(["finding"], args.strict)
    p = c.patch(int(c.strips[0]))
    rep = boundary_components(p, c.basis)
    return {"graph": c.graph.name, "strip": p.to_json(), "boundary": rep.to_json(with_traces=True)}, EXIT_OK


def _parse_paths(text: str, c: Census):
    try:
        spec = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"--paths is not JSON: {exc}") from None
    if not isinstance(spec, list) or not spec or not all(isinstance(p, list) and p for p in spec):
        raise InputError("--paths must be a nonempty list of nonempty lists of cycle indices")
    available = simple_paths(c.H)
    chosen = []
    for want in spec:
        want = [int(x) for x in want]
        hit = next((p for p in available
                    if list(p.vertices) == want or list(p.vertices) == want[::-1]), None)
        if hit is None:
            raise InputError(f"no simple path {want} in H")
        chosen.append(hit)
    used = 0
    for p in chosen:
        if used & p.mask():
            raise InputError("paths in a tuple must be vertex-disjoint")
        used |= p.mask()
    return tuple(chosen)


def cmd_tuple_patch(args) -> tuple[dict, int]:
    c, _ = _census(args)
    tup = _parse_paths(args.paths, c)
    try:
        res = build_patch_from_tuple(c, tup)
    except TupleError as exc:
        raise InputError(str(exc)) from None
    out = {"graph": c.graph.name, "tuple": [p.to_json(c.H) for p in tup], **res.to_json()}
    return out, _strict_code([] if res.ok else ["fail"], args.strict)


def cmd_catalog(args) -> tuple[None, int]:
    spec = _spec(args)
    if args.output:
        with open(args.output, "w") as fh:
            write_jsonl(generate(spec), fh)
    else:
        write_jsonl(generate(spec), sys.stdout)
    return None, EXIT_OK


def _graph_opts(p: argparse.ArgumentParser) -> None:
    p.add_argument("graph", help="graph JSON file")
    p.add_argument("--resolve-cubic", action="store_true",
                   help="expand vertices of degree >= 4 along the rotation first")
    p.add_argument("--basis", choices=("bfs", "min-c"), default="bfs")
    p.add_argument("--max-mbc", type=int, default=DEFAULT_MAX_MBC)
    p.add_argument("--keep-rotation", action="store_true",
                   help="use the supplied rotation even where a planar one is equivalent")


def _catalog_opts(p: argparse.ArgumentParser) -> None:
    p.add_argument("--max-edges", type=int, required=True, help=f"1..{MAX_EDGES_CAP}")
    p.add_argument("--cubic", action="store_true")
    p.add_argument("--bridgeless", action="store_true")
    p.add_argument("--no-loops", action="store_true")
    p.add_argument("--include-degree-two-cyclic", action="store_true",
                   help="also emit the single loop")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cutlocus", description=__doc__.splitlines()[0])
    ap.add_argument("--output", "-o", help="write the report here instead of stdout")
    ap.add_argument("--format", choices=("json", "csv"), default="json")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="cycle space, H, p and the strip bound")
    _graph_opts(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("census", help="classify every patch")
    _graph_opts(p)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("verify", help="run the registered checks")
    _graph_opts(p)
    p.add_argument("--strict", action="store_true", help="exit 2 on any failure or finding")
    p.add_argument("--checks", help="comma-separated subset of: " + ",".join(CHECKS))
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("strip", help="first strip in counter order")
    _graph_opts(p)
    p.add_argument("--strict", action="store_true")
    p.set_defaults(func=cmd_strip)

    p = sub.add_parser("tuple-patch", help="patch with k+1 circles from a path tuple")
    _graph_opts(p)
    p.add_argument("--paths", required=True, help='JSON, e.g. "[[1],[2]]" or "[[1,2]]"')
    p.add_argument("--strict", action="store_true")
    p.set_defaults(func=cmd_tuple_patch)

    p = sub.add_parser("sweep", help="run checks over a generated catalog")
    _catalog_opts(p)
    p.add_argument("--resolve-cubic", action="store_true")
    p.add_argument("--max-mbc", type=int, default=DEFAULT_MAX_MBC)
    p.add_argument("--checks", help="comma-separated subset of: " + ",".join(CHECKS))
    p.add_argument("--strict", action="store_true")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("catalog", help="write generated graphs as JSON lines")
    _catalog_opts(p)
    p.set_defaults(func=cmd_catalog)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        out, code = args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except GraphError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CensusTooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    if out is None:
        return code
    if args.format == "csv" and not isinstance(out, str):
        if args.command != "census":
            print("error: csv output is only available for census", file=sys.stderr)
            return EXIT_INPUT
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(out) if isinstance(out, str) else _dump(out, fh)
    elif isinstance(out, str):
        sys.stdout.write(out)
    else:
        _dump(out, sys.stdout)
    return code
