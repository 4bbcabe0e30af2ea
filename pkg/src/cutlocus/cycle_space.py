"""Cycle space over GF(2): edge sets as bit vectors, fundamental bases."""
from __future__ import annotations

import itertools
import logging
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator

from .multigraph import MultiGraph

log = logging.getLogger(__name__)

MIN_C_MAX_EDGES = 10


@dataclass(frozen=True)
class EdgeSet:
    """Subset of a graph's edges; bit ``i`` is the edge at position ``i``."""

    bits: int
    size: int

    @classmethod
    def of(cls, g: MultiGraph, ids: Iterable[str]) -> "EdgeSet":
        bits = 0
        for eid in ids:
            bits |= 1 << g.edge_index[eid]
        return cls(bits, g.m)

    def __xor__(self, other: "EdgeSet") -> "EdgeSet":
        return sym_diff(self, other)

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __iter__(self) -> Iterator[int]:
        b = self.bits
        while b:
            low = b & -b
            yield low.bit_length() - 1
            b ^= low

    def __contains__(self, i: int) -> bool:
        return bool(self.bits >> i & 1)

    def ids(self, g: MultiGraph) -> list[str]:
        return sorted(g.edges[i].id for i in self)


def sym_diff(a: EdgeSet, b: EdgeSet) -> EdgeSet:
    if a.size != b.size:
        raise ValueError(f"edge set length mismatch: {a.size} != {b.size}")
    return EdgeSet(a.bits ^ b.bits, a.size)


def cycle_twist_parity(c: EdgeSet, twists: EdgeSet | int) -> int:
    t = twists.bits if isinstance(twists, EdgeSet) else twists
    return (c.bits & t).bit_count() & 1


def vertex_degrees(g: MultiGraph, s: EdgeSet) -> dict[str, int]:
    deg = {v: 0 for v in g.vertices}
    for i in s:
        e = g.edges[i]
        deg[e.u] += 1
        deg[e.v] += 1
    return deg


def in_cycle_space(g: MultiGraph, s: EdgeSet) -> bool:
    return all(d % 2 == 0 for d in vertex_degrees(g, s).values())


def is_simple_cycle(g: MultiGraph, s: EdgeSet) -> bool:
    """True if ``s`` is nonempty, connected and 2-regular on its support."""
    if not s.bits:
        return False
    deg = vertex_degrees(g, s)
    support = [v for v, d in deg.items() if d]
    if any(d != 2 for d in deg.values() if d):
        return False
    adj: dict[str, list[str]] = {v: [] for v in support}
    for i in s:
        e = g.edges[i]
        adj[e.u].append(e.v)
        adj[e.v].append(e.u)
    seen = {support[0]}
    todo = [support[0]]
    while todo:
        x = todo.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return len(seen) == len(support)


def cycle_vertices(g: MultiGraph, s: EdgeSet) -> frozenset[str]:
    out = set()
    for i in s:
        e = g.edges[i]
        out.update((e.u, e.v))
    return frozenset(out)


@dataclass(frozen=True)
class CycleBasis:
    tree: EdgeSet
    cycles: tuple[EdgeSet, ...]
    method: str = "bfs"

    @property
    def q(self) -> int:
        return len(self.cycles)

    @property
    def c(self) -> int:
        return max((len(c) for c in self.cycles), default=0)

    def to_json(self, g: MultiGraph) -> dict:
        return {
            "method": self.method,
            "tree": self.tree.ids(g),
            "cycles": [c.ids(g) for c in self.cycles],
            "q": self.q,
            "c": self.c,
        }


def _tree_path(g: MultiGraph, tree_bits: int, a: str, b: str) -> int:
    """Edge bits of the unique tree path from ``a`` to ``b``."""
    adj: dict[str, list[tuple[str, int]]] = {v: [] for v in g.vertices}
    for i, e in enumerate(g.edges):
        if tree_bits >> i & 1:
            adj[e.u].append((e.v, i))
            adj[e.v].append((e.u, i))
    prev: dict[str, tuple[str, int] | None] = {a: None}
    todo = deque([a])
    while todo:
        x = todo.popleft()
        for y, i in adj[x]:
            if y not in prev:
                prev[y] = (x, i)
                todo.append(y)
    bits = 0
    x = b
    while prev[x] is not None:
        x, i = prev[x]
        bits |= 1 << i
    return bits


def basis_from_tree(g: MultiGraph, tree_bits: int, method: str = "bfs") -> CycleBasis:
    cycles = []
    for eid in sorted(e.id for e in g.edges):
        i = g.edge_index[eid]
        if tree_bits >> i & 1:
            continue
        e = g.edges[i]
        bits = (1 << i) | (0 if e.is_loop else _tree_path(g, tree_bits, e.u, e.v))
        cycles.append(EdgeSet(bits, g.m))
    return CycleBasis(EdgeSet(tree_bits, g.m), tuple(cycles), method)


def bfs_tree(g: MultiGraph) -> int:
    root = g.vertices[0]
    seen = {root}
    todo = deque([root])
    bits = 0
    while todo:
        x = todo.popleft()
        for eid, end in g.darts_at(x):
            e = g.edge(eid)
            y = e.end(1 - end)
            if y not in seen:
                seen.add(y)
                bits |= 1 << g.edge_index[eid]
                todo.append(y)
    return bits


def spanning_trees(g: MultiGraph) -> Iterator[int]:
    """All spanning trees as edge bitmasks (exhaustive; small graphs only)."""
    non_loops = [i for i, e in enumerate(g.edges) if not e.is_loop]
    for combo in itertools.combinations(non_loops, g.n - 1):
        parent = {v: v for v in g.vertices}

        def find(x: str) -> str:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        ok = True
        for i in combo:
            e = g.edges[i]
            ru, rv = find(e.u), find(e.v)
            if ru == rv:
                ok = False
                break
            parent[ru] = rv
        if ok:
            yield sum(1 << i for i in combo)


def fundamental_basis(g: MultiGraph, method: str = "bfs") -> CycleBasis:
    """Fundamental cycle basis of a BFS tree, or the tree minimising c.

    ``method="min-c"`` searches all spanning trees when the graph has at most
    ``MIN_C_MAX_EDGES`` edges and falls back to BFS otherwise.
    """
    if method == "bfs":
        return basis_from_tree(g, bfs_tree(g), "bfs")
    if method != "min-c":
        raise ValueError(f"unknown basis method {method!r}")
    if g.m > MIN_C_MAX_EDGES:
        log.warning("min-c basis needs m <= %d; falling back to bfs", MIN_C_MAX_EDGES)
        return basis_from_tree(g, bfs_tree(g), "bfs")
    best = None
    for tree in spanning_trees(g):
        b = basis_from_tree(g, tree, "min-c")
        key = (b.c, sum(len(c) for c in b.cycles))
        if best is None or key < best[0]:
            best = (key, b)
    assert best is not None
    return best[1]


def span(basis: CycleBasis) -> Iterator[EdgeSet]:
    """Every element of the cycle space (2**q of them, including the empty set)."""
    size = basis.tree.size
    for mask in range(1 << basis.q):
        bits = 0
        for j, c in enumerate(basis.cycles):
            if mask >> j & 1:
                bits ^= c.bits
        yield EdgeSet(bits, size)


def simple_cycles(g: MultiGraph, basis: CycleBasis | None = None) -> list[EdgeSet]:
    basis = basis or fundamental_basis(g)
    return [s for s in span(basis) if is_simple_cycle(g, s)]
