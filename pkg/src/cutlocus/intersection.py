"""Extended intersection graph of basis cycles and its disjoint path tuples.

``H`` has one vertex per basis cycle (numbered from 1).  Two cycles sharing a
graph edge get one H-edge per shared edge ("edge" type); every shared vertex
not incident to a shared edge adds one more H-edge ("vertex" type).

Paths are simple and counted up to reversal; tuples of paths are unordered,
nonempty and pairwise vertex-disjoint.  Under these readings the theta graph
has exactly four tuples.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .cycle_space import CycleBasis, cycle_vertices
from .multigraph import MultiGraph


@dataclass(frozen=True, order=True)
class HEdge:
    i: int
    j: int
    kind: str  # "edge" | "vertex"
    carrier: str

    def to_json(self) -> dict:
        return {"from": self.i, "to": self.j, "type": self.kind, "carrier": self.carrier}


@dataclass(frozen=True)
class HGraph:
    q: int
    edges: tuple[HEdge, ...]

    @property
    def vertices(self) -> range:
        return range(1, self.q + 1)

    def is_edgeless(self) -> bool:
        return not self.edges


@dataclass(frozen=True, order=True)
class HPath:
    """A simple path in H: ``len(vertices) == len(edges) + 1``; edges index ``HGraph.edges``."""

    vertices: tuple[int, ...]
    edges: tuple[int, ...] = ()

    @property
    def is_constant(self) -> bool:
        return not self.edges

    def mask(self) -> int:
        return sum(1 << v for v in self.vertices)

    def label(self) -> str:
        return "(" + "".join(map(str, self.vertices)) + ")"

    def to_json(self, h: HGraph) -> list:
        if self.is_constant:
            return [{"vertex": self.vertices[0]}]
        return [h.edges[k].to_json() for k in self.edges]


PathTuple = tuple[HPath, ...]


def build_H(g: MultiGraph, basis: CycleBasis) -> HGraph:
    edges = []
    verts = [cycle_vertices(g, c) for c in basis.cycles]
    for a in range(basis.q):
        for b in range(a + 1, basis.q):
            shared = basis.cycles[a].bits & basis.cycles[b].bits
            touched = set()
            for k, e in enumerate(g.edges):
                if shared >> k & 1:
                    edges.append(HEdge(a + 1, b + 1, "edge", e.id))
                    touched.update((e.u, e.v))
            for v in sorted(verts[a] & verts[b]):
                if v not in touched:
                    edges.append(HEdge(a + 1, b + 1, "vertex", v))
    return HGraph(basis.q, tuple(sorted(edges)))


def simple_paths(h: HGraph) -> list[HPath]:
    """All constant paths plus every simple path, one per reversal pair."""
    adj: dict[int, list[tuple[int, int]]] = {v: [] for v in h.vertices}
    for k, e in enumerate(h.edges):
        adj[e.i].append((e.j, k))
        adj[e.j].append((e.i, k))
    out = [HPath((v,)) for v in h.vertices]

    def walk(vs: list[int], es: list[int]) -> None:
        for w, k in adj[vs[-1]]:
            if w in vs:
                continue
            vs.append(w)
            es.append(k)
            if vs[0] < vs[-1]:
                out.append(HPath(tuple(vs), tuple(es)))
            walk(vs, es)
            vs.pop()
            es.pop()

    for v in h.vertices:
        walk([v], [])
    return sorted(out, key=lambda p: (len(p.vertices), p.vertices, p.edges))


def iter_disjoint_tuples(paths: list[HPath]) -> Iterator[PathTuple]:
    masks = [p.mask() for p in paths]

    def rec(start: int, used: int, chosen: list[HPath]) -> Iterator[PathTuple]:
        for k in range(start, len(paths)):
            if masks[k] & used:
                continue
            chosen.append(paths[k])
            yield tuple(chosen)
            yield from rec(k + 1, used | masks[k], chosen)
            chosen.pop()

    yield from rec(0, 0, [])


def disjoint_tuples(paths: list[HPath]) -> list[PathTuple]:
    return list(iter_disjoint_tuples(paths))


def count_disjoint_tuples(paths: list[HPath]) -> int:
    masks = [p.mask() for p in paths]
    memo: dict[tuple[int, int], int] = {}

    def rec(start: int, used: int) -> int:
        key = (start, used)
        if key in memo:
            return memo[key]
        total = 0
        for k in range(start, len(paths)):
            if not masks[k] & used:
                total += 1 + rec(k + 1, used | masks[k])
        memo[key] = total
        return total

    return rec(0, 0)


def count_tuples_dp(h: HGraph) -> int:
    """Number of path tuples by subset dynamic programming, without listing paths.

    ``walks[U][v]`` counts directed simple paths covering exactly ``U`` and
    ending at ``v`` (parallel H-edges counted separately); halving gives the
    undirected count.  ``packs[M]`` then counts collections of disjoint paths
    inside ``M``, branching on whether the lowest vertex of ``M`` is used.
    """
    q = h.q
    mult = [[0] * q for _ in range(q)]
    for e in h.edges:
        mult[e.i - 1][e.j - 1] += 1
        mult[e.j - 1][e.i - 1] += 1
    walks = [[0] * q for _ in range(1 << q)]
    paths_on = [0] * (1 << q)
    for v in range(q):
        walks[1 << v][v] = 1
    for U in range(1, 1 << q):
        if U & (U - 1) == 0:
            paths_on[U] = 1
            continue
        total = 0
        for v in range(q):
            if not U >> v & 1:
                continue
            rest = U ^ (1 << v)
            w = 0
            for u in range(q):
                if rest >> u & 1 and mult[u][v]:
                    w += walks[rest][u] * mult[u][v]
            walks[U][v] = w
            total += w
        paths_on[U] = total // 2
    packs = [0] * (1 << q)
    packs[0] = 1
    for M in range(1, 1 << q):
        low = M & -M
        rest = M ^ low
        total = packs[rest]
        sub = rest
        while True:
            U = sub | low
            if paths_on[U]:
                total += paths_on[U] * packs[M ^ U]
            if sub == 0:
                break
            sub = (sub - 1) & rest
        packs[M] = total
    return packs[(1 << q) - 1] - 1


def p_of(g: MultiGraph, basis: CycleBasis) -> int:
    return count_tuples_dp(build_H(g, basis))


@dataclass(frozen=True)
class PBoundCheck:
    p: int
    lower: int
    equality: bool
    edgeless: bool

    @property
    def consistent(self) -> bool:
        return self.p >= self.lower and self.equality == self.edgeless

    def to_json(self) -> dict:
        return {"p": self.p, "lower": self.lower, "equality": self.equality,
                "edgeless": self.edgeless, "consistent": self.consistent}


def check_p_lower_bound(g: MultiGraph, basis: CycleBasis) -> PBoundCheck:
    h = build_H(g, basis)
    p = count_tuples_dp(h)
    lower = (1 << basis.q) - 1
    return PBoundCheck(p, lower, p == lower, h.is_edgeless())
