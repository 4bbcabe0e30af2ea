"""Connected multigraphs with loops and parallel edges.

Vertices and edges carry opaque string ids supplied by the input.  Each edge
has two *darts* (edge-ends) ``(edge_id, 0)`` and ``(edge_id, 1)``; a loop owns
both darts at the same vertex.  Graph values are immutable; every operation
returns a new graph.
"""
from __future__ import annotations

import json
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Mapping, NamedTuple, Sequence

Dart = tuple[str, int]
RotationSystem = dict[str, tuple[Dart, ...]]


class GraphError(ValueError):
    """Raised for malformed or invalid graph input."""


class Edge(NamedTuple):
    id: str
    u: str
    v: str

    @property
    def is_loop(self) -> bool:
        return self.u == self.v

    def end(self, i: int) -> str:
        return self.u if i == 0 else self.v


@dataclass(frozen=True)
class MultiGraph:
    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]
    name: str = ""
    allow_degree_two: bool = False
    rotation: Mapping[str, tuple[Dart, ...]] | None = field(default=None, compare=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(Edge(*e) for e in self.edges))
        self._validate()

    def _validate(self) -> None:
        if not self.vertices:
            raise GraphError("graph has no vertices")
        if len(set(self.vertices)) != len(self.vertices):
            raise GraphError("duplicate vertex ids")
        if len({e.id for e in self.edges}) != len(self.edges):
            raise GraphError("duplicate edge ids")
        vs = set(self.vertices)
        for e in self.edges:
            if e.u not in vs or e.v not in vs:
                raise GraphError(f"edge {e.id!r} names an unknown vertex")
        if not _connected(self.vertices, self.edges):
            raise GraphError("disconnected graph")
        if not self.allow_degree_two:
            for v in self.vertices:
                if self.degree(v) == 2:
                    raise GraphError(f"vertex {v!r} has degree 2 (set allow_degree_two)")

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def n(self) -> int:
        return len(self.vertices)

    @cached_property
    def edge_index(self) -> dict[str, int]:
        return {e.id: i for i, e in enumerate(self.edges)}

    @cached_property
    def _darts(self) -> dict[str, tuple[Dart, ...]]:
        out: dict[str, list[Dart]] = {v: [] for v in self.vertices}
        for e in self.edges:
            out[e.u].append((e.id, 0))
            out[e.v].append((e.id, 1))
        return {v: tuple(sorted(ds)) for v, ds in out.items()}

    def edge(self, eid: str) -> Edge:
        try:
            return self.edges[self.edge_index[eid]]
        except KeyError:
            raise GraphError(f"unknown edge {eid!r}") from None

    def darts_at(self, v: str) -> tuple[Dart, ...]:
        """Darts at ``v`` ordered by (edge id, end index)."""
        try:
            return self._darts[v]
        except KeyError:
            raise GraphError(f"unknown vertex {v!r}") from None

    def dart_vertex(self, d: Dart) -> str:
        return self.edge(d[0]).end(d[1])

    def degree(self, v: str) -> int:
        return len(self.darts_at(v))

    def is_cubic(self) -> bool:
        return all(self.degree(v) == 3 for v in self.vertices)

    def max_degree(self) -> int:
        return max(self.degree(v) for v in self.vertices)

    def with_(self, **kw) -> "MultiGraph":
        args = dict(vertices=self.vertices, edges=self.edges, name=self.name,
                    allow_degree_two=self.allow_degree_two, rotation=self.rotation)
        args.update(kw)
        return MultiGraph(**args)

    def to_dict(self) -> dict:
        d: dict = {
            "name": self.name,
            "vertices": list(self.vertices),
            "edges": [{"id": e.id, "ends": [e.u, e.v]} for e in self.edges],
        }
        if self.rotation is not None:
            d["rotations"] = {v: [list(h) for h in self.rotation[v]] for v in self.vertices}
        if self.allow_degree_two:
            d["allow_degree_two"] = True
        return d


def _connected(vertices: Sequence[str], edges: Sequence[Edge], skip: str | None = None) -> bool:
    adj: dict[str, list[str]] = defaultdict(list)
    for e in edges:
        if e.id == skip:
            continue
        adj[e.u].append(e.v)
        adj[e.v].append(e.u)
    seen = {vertices[0]}
    todo = [vertices[0]]
    while todo:
        x = todo.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return len(seen) == len(vertices)


def parse_graph(text: str | bytes | dict) -> MultiGraph:
    """Parse and validate a graph JSON document.

    Schema: ``{"name", "vertices", "edges": [{"id", "ends": [u, v]}],
    "rotations"?: {vertex: [[edge id, end], ...]}, "allow_degree_two"?}``.
    """
    if isinstance(text, dict):
        doc = text
    else:
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise GraphError(f"malformed JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise GraphError("graph document must be a JSON object")
    try:
        vertices = [str(v) for v in doc["vertices"]]
        edges = []
        for e in doc.get("edges", []):
            u, v = e["ends"]
            edges.append(Edge(str(e["id"]), str(u), str(v)))
    except (KeyError, TypeError, ValueError) as exc:
        raise GraphError(f"graph document does not match schema: {exc}") from None
    rotation = None
    if doc.get("rotations") is not None:
        rotation = {str(v): tuple((str(h[0]), int(h[1])) for h in seq)
                    for v, seq in doc["rotations"].items()}
    g = MultiGraph(vertices, edges, name=str(doc.get("name", "")),
                   allow_degree_two=bool(doc.get("allow_degree_two", False)),
                   rotation=rotation)
    if rotation is not None:
        check_rotation(g, rotation)
    return g


def check_rotation(g: MultiGraph, rotation: Mapping[str, Sequence[Dart]]) -> None:
    if set(rotation) != set(g.vertices):
        raise GraphError("rotation must list every vertex exactly once")
    for v in g.vertices:
        if sorted(rotation[v]) != list(g.darts_at(v)):
            raise GraphError(f"rotation at {v!r} does not list exactly the darts of that vertex")


def degree(g: MultiGraph, v: str) -> int:
    return g.degree(v)


def bridges(g: MultiGraph) -> frozenset[str]:
    counts = Counter(frozenset((e.u, e.v)) for e in g.edges if not e.is_loop)
    out = set()
    for e in g.edges:
        if e.is_loop or counts[frozenset((e.u, e.v))] > 1:
            continue
        if not _connected(g.vertices, g.edges, skip=e.id):
            out.add(e.id)
    return frozenset(out)


def _contract(g: MultiGraph, eid: str, keep: str) -> tuple[MultiGraph, dict[str, str]]:
    e = g.edge(eid)
    if e.is_loop:
        raise GraphError(f"cannot contract loop {eid!r}")
    gone = e.v if keep == e.u else e.u
    vmap = {v: (keep if v == gone else v) for v in g.vertices}
    edges = [Edge(f.id, vmap[f.u], vmap[f.v]) for f in g.edges if f.id != eid]
    rotation = None
    if g.rotation is not None:
        rotation = _contract_rotation(g.rotation, e, keep, gone)
    h = MultiGraph([v for v in g.vertices if v != gone], edges, name=g.name,
                   allow_degree_two=True, rotation=rotation)
    return h, vmap


def _contract_rotation(rot: Mapping[str, tuple[Dart, ...]], e: Edge, keep: str, gone: str) -> RotationSystem:
    # ribbon contraction of an untwisted edge: splice the two cyclic orders at e's darts
    ik = 0 if e.u == keep else 1
    rk, rg = list(rot[keep]), list(rot[gone])
    a = rk.index((e.id, ik))
    b = rg.index((e.id, 1 - ik))
    merged = rk[a + 1:] + rk[:a] + rg[b + 1:] + rg[:b]
    out = {v: tuple(s) for v, s in rot.items() if v not in (keep, gone)}
    out[keep] = tuple(merged)
    return out


def contract_edge(g: MultiGraph, eid: str) -> tuple[MultiGraph, dict[str, str]]:
    """Contract non-loop edge ``eid``; the merged vertex keeps end0's id.

    If ``g`` carries a rotation it is spliced as for an untwisted ribbon edge.
    Returns the new graph and the vertex-merge map.
    """
    e = g.edge(eid)
    return _contract(g, eid, e.u)


def cyclic_part(g: MultiGraph) -> tuple[MultiGraph, dict[str, str | None]]:
    """Contract pendant edges, then suppress degree-2 vertices.

    The edge map sends every original edge id to the surviving edge it was
    absorbed into, or ``None`` for pendant (collapsed) edges.
    """
    emap: dict[str, str | None] = {e.id: e.id for e in g.edges}
    h = g.with_(allow_degree_two=True)
    while True:
        leaf = next((v for v in h.vertices if h.degree(v) == 1), None)
        if leaf is None:
            break
        (eid, end), = h.darts_at(leaf)
        other = h.edge(eid).end(1 - end)
        h, _ = _contract(h, eid, other)
        for k, t in emap.items():
            if t == eid:
                emap[k] = None
    while True:
        v2 = None
        for v in h.vertices:
            if h.degree(v) == 2 and not h.edge(h.darts_at(v)[0][0]).is_loop:
                v2 = v
                break
        if v2 is None:
            break
        (e1, i1), (e2, i2) = h.darts_at(v2)
        small, big = sorted((e1, e2))
        ismall = i1 if small == e1 else i2
        other = h.edge(small).end(1 - ismall)
        h, _ = _contract(h, small, other)
        for k, t in emap.items():
            if t == small:
                emap[k] = big
    h = h.with_(allow_degree_two=any(h.degree(v) == 2 for v in h.vertices))
    return h, emap


def m_bc(g: MultiGraph) -> int:
    """Non-bridge edge count of the cyclic part."""
    cp, _ = cyclic_part(g)
    return cp.m - len(bridges(cp))


def expand_vertex(g: MultiGraph, v: str, order: Sequence[Dart],
                  start: int = 0) -> tuple[MultiGraph, RotationSystem, list[str]]:
    """Split a vertex of degree d >= 4 into a path of d - 2 cubic vertices.

    ``order`` is the counterclockwise cyclic order of the darts at ``v``.  The
    first two darts go to the first new vertex, the last two to the last one,
    every other dart to its own vertex; new path edges are ``_x<k>`` with ``k``
    counting from ``start``.  Returns the new graph, the rotations of the new
    vertices, and the ids of the expansion edges.  Contracting the expansion
    edges (untwisted) restores ``order`` at ``v``.
    """
    d = g.degree(v)
    if d < 4:
        raise GraphError(f"vertex {v!r} has degree {d} < 4")
    if sorted(order) != list(g.darts_at(v)):
        raise GraphError(f"rotation at {v!r} does not list exactly the darts of that vertex")
    used = set(g.vertices)
    new_vs = []
    for i in range(d - 2):
        name = f"{v}.{i}"
        while name in used:
            name += "'"
        used.add(name)
        new_vs.append(name)
    owner = [0, 0] + list(range(1, d - 3)) + [d - 3, d - 3]
    host = {h: new_vs[owner[k]] for k, h in enumerate(order)}
    xids = []
    for k in range(d - 3):
        x = f"_x{start + k}"
        if x in g.edge_index:
            raise GraphError(f"edge id {x!r} already in use")
        xids.append(x)
    edges = []
    for e in g.edges:
        u = host.get((e.id, 0), e.u)
        w = host.get((e.id, 1), e.v)
        edges.append(Edge(e.id, u, w))
    for k, x in enumerate(xids):
        edges.append(Edge(x, new_vs[k], new_vs[k + 1]))
    vertices = [u for u in g.vertices if u != v] + new_vs
    rot: RotationSystem = {}
    last = d - 3
    for k, w in enumerate(new_vs):
        if k == 0:
            rot[w] = (order[0], order[1], (xids[0], 0))
        elif k == last:
            rot[w] = ((xids[k - 1], 1), order[d - 2], order[d - 1])
        else:
            rot[w] = ((xids[k - 1], 1), order[k + 1], (xids[k], 0))
    h = MultiGraph(vertices, edges, name=g.name, allow_degree_two=g.allow_degree_two)
    return h, rot, xids


def cubic_resolution(g: MultiGraph, rotation: Mapping[str, Sequence[Dart]]) -> tuple[MultiGraph, RotationSystem]:
    """Expand every vertex of degree >= 4 along its rotation."""
    check_rotation(g, rotation)
    rot: RotationSystem = {v: tuple(rotation[v]) for v in g.vertices}
    h = g.with_(rotation=None)
    k = 0
    for v in g.vertices:
        if g.degree(v) >= 4:
            h, local, xs = expand_vertex(h, v, rot.pop(v), start=k)
            rot.update(local)
            k += len(xs)
    rot = {v: rot[v] for v in h.vertices}
    return h.with_(rotation=rot), rot


# -- isomorphism --------------------------------------------------------------

def _profile(g: MultiGraph) -> tuple[dict[str, tuple[int, int]], dict[frozenset, list[str]]]:
    loops = Counter(e.u for e in g.edges if e.is_loop)
    prof = {v: (g.degree(v), loops[v]) for v in g.vertices}
    groups: dict[frozenset, list[str]] = defaultdict(list)
    for e in g.edges:
        groups[frozenset((e.u, e.v))].append(e.id)
    return prof, groups


def isomorphisms(g1: MultiGraph, g2: MultiGraph) -> Iterator[dict[str, str]]:
    """Yield every vertex bijection preserving edge multiplicities and loops."""
    if g1.n != g2.n or g1.m != g2.m:
        return
    p1, grp1 = _profile(g1)
    p2, grp2 = _profile(g2)
    if sorted(p1.values()) != sorted(p2.values()):
        return
    mult1 = {k: len(v) for k, v in grp1.items()}
    mult2 = {k: len(v) for k, v in grp2.items()}
    order = sorted(g1.vertices, key=lambda v: (-p1[v][0], g1.vertices.index(v)))
    cands = {v: [w for w in g2.vertices if p2[w] == p1[v]] for v in order}
    vmap: dict[str, str] = {}
    used: set[str] = set()

    def extend(i: int) -> Iterator[dict[str, str]]:
        if i == len(order):
            yield dict(vmap)
            return
        v = order[i]
        for w in cands[v]:
            if w in used:
                continue
            ok = all(mult1.get(frozenset((v, x)), 0) == mult2.get(frozenset((w, vmap[x])), 0)
                     for x in order[:i])
            if not ok:
                continue
            vmap[v] = w
            used.add(w)
            yield from extend(i + 1)
            del vmap[v]
            used.discard(w)

    yield from extend(0)


def _edge_map(g1: MultiGraph, g2: MultiGraph, vmap: Mapping[str, str]) -> dict[str, str]:
    _, grp1 = _profile(g1)
    _, grp2 = _profile(g2)
    out = {}
    for key, ids in grp1.items():
        for a, b in zip(ids, grp2[frozenset(vmap[x] for x in key)]):
            out[a] = b
    return out


def are_isomorphic(g1: MultiGraph, g2: MultiGraph) -> tuple[bool, dict | None]:
    for vmap in isomorphisms(g1, g2):
        return True, {"vertices": vmap, "edges": _edge_map(g1, g2, vmap)}
    return False, None
