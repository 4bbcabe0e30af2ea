"""Small cyclic multigraphs up to isomorphism, and sweeps of checks over them.

Graphs are generated per degree sequence (non-increasing, every degree >= 3)
as symmetric multiplicity matrices.  A labeled matrix is kept only if it is
canonical: vertices sorted by a local invariant, and no relabeling inside
the invariant classes gives a lexicographically smaller matrix.  Exactly one
labeling per isomorphism class survives.
"""
from __future__ import annotations

import itertools
import json
import os
import string
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from typing import Iterator, Sequence

from .census import CHECKS, Census, CensusTooLarge, prepare, run_checks, strips_up_to_iso
from .multigraph import Edge, MultiGraph, bridges

MAX_EDGES_CAP = 10


class CatalogError(ValueError):
    pass


@dataclass(frozen=True)
class CatalogSpec:
    max_edges: int
    cubic_only: bool = False
    bridgeless_only: bool = False
    allow_loops: bool = True
    include_degree_two_cyclic: bool = False

    def __post_init__(self) -> None:
        if self.max_edges < 1:
            raise CatalogError("max_edges must be >= 1")
        if self.max_edges > MAX_EDGES_CAP:
            raise CatalogError(f"max_edges must be <= {MAX_EDGES_CAP}")


def _partitions(total: int, parts: int, lo: int, hi: int) -> Iterator[tuple[int, ...]]:
    """Non-increasing sequences of ``parts`` integers in [lo, hi] summing to ``total``."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(min(hi, total - lo * (parts - 1)), lo - 1, -1):
        if first * parts < total:
            break
        for rest in _partitions(total - first, parts - 1, lo, first):
            yield (first,) + rest


def _matrices(degrees: Sequence[int], allow_loops: bool) -> Iterator[tuple[list[int], dict]]:
    n = len(degrees)
    res = list(degrees)
    loops = [0] * n
    mult: dict[tuple[int, int], int] = {}

    def row(i: int) -> Iterator[None]:
        if i == n:
            yield
            return
        max_l = res[i] // 2 if allow_loops else 0
        for l in range(max_l, -1, -1):
            loops[i] = l
            res[i] -= 2 * l
            yield from col(i, i + 1)
            res[i] += 2 * l
        loops[i] = 0

    def col(i: int, j: int) -> Iterator[None]:
        if j == n:
            if res[i] == 0:
                yield from row(i + 1)
            return
        # remaining capacity of later columns must absorb res[i]
        if sum(res[j:]) < res[i]:
            return
        for k in range(min(res[i], res[j]), -1, -1):
            mult[(i, j)] = k
            res[i] -= k
            res[j] -= k
            yield from col(i, j + 1)
            res[i] += k
            res[j] += k
        mult[(i, j)] = 0

    for _ in row(0):
        yield list(loops), dict(mult)


def _connected(n: int, mult: dict) -> bool:
    seen = {0}
    todo = [0]
    while todo:
        x = todo.pop()
        for (i, j), k in mult.items():
            if k and x in (i, j):
                y = j if x == i else i
                if y not in seen:
                    seen.add(y)
                    todo.append(y)
    return len(seen) == n


def _invariants(n: int, loops: list[int], mult: dict) -> list[tuple]:
    deg = [2 * loops[i] for i in range(n)]
    for (i, j), k in mult.items():
        deg[i] += k
        deg[j] += k
    inv = []
    for i in range(n):
        nbrs = sorted(((mult.get((min(i, j), max(i, j)), 0), deg[j]) for j in range(n) if j != i),
                      reverse=True)
        inv.append((deg[i], loops[i], tuple(nbrs)))
    return inv


def _key(n: int, loops: list[int], mult: dict, perm: Sequence[int]) -> tuple:
    return tuple(loops[perm[a]] for a in range(n)) + tuple(
        mult.get((min(perm[a], perm[b]), max(perm[a], perm[b])), 0)
        for a in range(n) for b in range(a + 1, n))


def _is_canonical(n: int, loops: list[int], mult: dict) -> bool:
    """True if this labeling is the least one among invariant-respecting relabelings."""
    inv = _invariants(n, loops, mult)
    if any(inv[i] < inv[i + 1] for i in range(n - 1)):
        return False
    own = _key(n, loops, mult, range(n))
    blocks = [list(g) for _, g in itertools.groupby(range(n), key=lambda i: inv[i])]
    for combo in itertools.product(*[itertools.permutations(b) for b in blocks]):
        perm = [x for block in combo for x in block]
        if _key(n, loops, mult, perm) < own:
            return False
    return True


def _edge_names(m: int) -> list[str]:
    letters = string.ascii_lowercase
    if m <= len(letters):
        return list(letters[:m])
    return [f"e{i}" for i in range(m)]


def _build(n: int, key: tuple, name: str) -> MultiGraph:
    loops = key[:n]
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    raw = []
    for a in range(n):
        raw += [(a, a)] * loops[a]
    for (a, b), k in zip(pairs, key[n:]):
        raw += [(a, b)] * k
    raw.sort()
    ids = _edge_names(len(raw))
    edges = [Edge(ids[k], f"v{a}", f"v{b}") for k, (a, b) in enumerate(raw)]
    return MultiGraph([f"v{i}" for i in range(n)], edges, name=name)


def loop_graph() -> MultiGraph:
    return MultiGraph(["v0"], [Edge("a", "v0", "v0")], name="loop", allow_degree_two=True)


def generate(spec: CatalogSpec) -> Iterator[MultiGraph]:
    """Connected multigraphs with min degree 3 and at most ``max_edges`` edges, up to isomorphism."""
    if spec.include_degree_two_cyclic:
        yield loop_graph()
    for m in range(1, spec.max_edges + 1):
        for n in range(1, 2 * m // 3 + 1):
            hi = 3 if spec.cubic_only else 2 * m
            lo = 3
            found = []
            for degrees in _partitions(2 * m, n, lo, hi):
                for loops, mult in _matrices(degrees, spec.allow_loops):
                    if not _connected(n, mult):
                        continue
                    if _is_canonical(n, loops, mult):
                        found.append((degrees, _key(n, loops, mult, range(n))))
            found.sort()
            for idx, (_, key) in enumerate(found):
                g = _build(n, key, f"m{m}n{n}-{idx}")
                if spec.bridgeless_only and bridges(g):
                    continue
                yield g


# -- sweep -----------------------------------------------------------------------

def _graph_entry(g: MultiGraph, checks: Sequence[str], resolve_cubic: bool, max_mbc: int) -> dict:
    h, rot = prepare(g, resolve_cubic=resolve_cubic)
    entry: dict = {"graph": g.to_dict(), "n": g.n, "m": g.m}
    try:
        census = Census(h, rot, max_mbc=max_mbc)
    except CensusTooLarge as exc:
        entry["error"] = str(exc)
        return entry
    entry.update({
        "resolved": h.m != g.m,
        "q": census.q, "m_bc": census.m_bc, "p": census.p, "c": census.c,
        "S": census.S, "O": census.O, "N": census.N,
        "S_up_to_iso": strips_up_to_iso(census),
        "strip_bound": census.strip_bound,
    })
    recs = run_checks(census, checks)
    entry["checks"] = {r.name: r.status for r in recs}
    entry["details"] = [r.to_json() for r in recs if r.status in ("fail", "finding")]
    return entry


def _entry_star(args):
    return _graph_entry(*args)


def sweep(spec: CatalogSpec, checks: Sequence[str] | None = None, resolve_cubic: bool = False,
          max_mbc: int = 24, workers: int | None = None) -> dict:
    checks = list(CHECKS) if checks is None else list(checks)
    unknown = [c for c in checks if c not in CHECKS]
    if unknown:
        raise CatalogError(f"unknown checks: {unknown}")
    graphs = list(generate(spec))
    if workers is None:
        workers = int(os.environ.get("CLC_THREADS", "1") or 1)
    jobs = [(g, checks, resolve_cubic, max_mbc) for g in graphs]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            entries = list(ex.map(_entry_star, jobs))
    else:
        entries = [_entry_star(j) for j in jobs]
    totals = {c: {"pass": 0, "fail": 0, "finding": 0, "skip": 0} for c in checks}
    for e in entries:
        for c, s in e.get("checks", {}).items():
            totals[c][s] += 1
    failures = sum(t["fail"] for t in totals.values())
    findings = sum(t["finding"] for t in totals.values())
    return {
        "spec": asdict(spec),
        "checks": checks,
        "resolve_cubic": resolve_cubic,
        "graphs": len(entries),
        "totals": totals,
        "failures": failures,
        "findings": findings,
        "conjecture_flags": sum(
            len(d["witness"]["flags"]) for e in entries for d in e.get("details", ())
            if d["name"] == "open_questions"),
        "entries": entries,
    }


def write_jsonl(graphs: Iterator[MultiGraph], fh) -> int:
    k = 0
    for g in graphs:
        fh.write(json.dumps(g.to_dict(), separators=(",", ":")) + "\n")
        k += 1
    return k
