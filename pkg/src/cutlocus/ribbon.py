"""Patches as ribbon structures: rotation system plus one twist bit per edge.

Every vertex disk carries the plane orientation and its rotation lists the
darts counterclockwise.  An edge band is either flat (twist 0) or carries a
half-turn (twist 1).

Boundary model: each dart has a clockwise and a counterclockwise side.  A
corner arc joins the ccw side of a dart to the cw side of the next dart in
the rotation; a flat band joins ``(end0, cw)`` to ``(end1, ccw)`` and
``(end0, ccw)`` to ``(end1, cw)``, a twisted band joins equal sides.  Every
endpoint then lies on exactly one corner arc and one band arc, so the arcs
close up into circles: the boundary components.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Mapping, Sequence

import networkx as nx
import numpy as np

from . import _accel
from .cycle_space import CycleBasis, EdgeSet, cycle_twist_parity, fundamental_basis
from .multigraph import Dart, GraphError, MultiGraph, RotationSystem, bridges, check_rotation

CW, CCW = 0, 1


class SurfaceError(RuntimeError):
    """Genus or crosscap number came out inconsistent (a tracing bug)."""


def default_rotation(g: MultiGraph) -> RotationSystem:
    return {v: g.darts_at(v) for v in g.vertices}


def planar_rotation(g: MultiGraph) -> RotationSystem | None:
    """A rotation system whose untwisted patch is a punctured sphere, if ``g`` is planar."""
    if g.m == 0:
        return default_rotation(g)
    s = nx.Graph()
    s.add_nodes_from(("v", v) for v in g.vertices)
    for e in g.edges:
        s.add_edge(("v", e.u), ("d", e.id, 0))
        s.add_edge(("d", e.id, 0), ("d", e.id, 1))
        s.add_edge(("d", e.id, 1), ("v", e.v))
    planar, emb = nx.check_planarity(s)
    if not planar:
        return None
    rot: RotationSystem = {}
    for v in g.vertices:
        order = []
        for nb in emb.neighbors_cw_order(("v", v)):
            order.append((nb[1], nb[2]))
        rot[v] = _canonical_cycle(order)
    return rot


def _canonical_cycle(seq: Sequence[Dart]) -> tuple[Dart, ...]:
    if not seq:
        return ()
    k = seq.index(min(seq))
    return tuple(seq[k:]) + tuple(seq[:k])


def same_cycle(a: Sequence[Dart], b: Sequence[Dart]) -> bool:
    return len(a) == len(b) and _canonical_cycle(a) == _canonical_cycle(b)


def freeze_rotation(rot: Mapping[str, Sequence[Dart]]) -> tuple:
    return tuple(sorted((v, tuple(s)) for v, s in rot.items()))


@lru_cache(maxsize=4096)
def bridge_mask(g: MultiGraph) -> int:
    return sum(1 << g.edge_index[e] for e in bridges(g))


@lru_cache(maxsize=4096)
def _sigma(g: MultiGraph, frozen_rot: tuple) -> np.ndarray:
    sigma = np.full(4 * g.m, -1, dtype=np.int64)
    for _, seq in frozen_rot:
        k = len(seq)
        for j in range(k):
            h, nxt = seq[j], seq[(j + 1) % k]
            a = node(g, h, CCW)
            b = node(g, nxt, CW)
            sigma[a] = b
            sigma[b] = a
    assert (sigma >= 0).all()
    return sigma


def node(g: MultiGraph, h: Dart, side: int) -> int:
    return 4 * g.edge_index[h[0]] + 2 * h[1] + side


def sigma_of(g: MultiGraph, rot: Mapping[str, Sequence[Dart]]) -> np.ndarray:
    return _sigma(g, freeze_rotation(rot))


@dataclass(frozen=True, eq=False)
class Patch:
    """Graph + rotation + twist mask (bit ``i`` = edge ``g.edges[i]``).

    Twists on bridges are cleared on construction: a half-turn on a bridge
    band gives a homeomorphic patch.
    """

    graph: MultiGraph
    rotation: Mapping[str, tuple[Dart, ...]]
    twists: int = 0
    _key: tuple = field(init=False, repr=False)

    def __post_init__(self) -> None:
        check_rotation(self.graph, self.rotation)
        object.__setattr__(self, "rotation", {v: tuple(self.rotation[v]) for v in self.graph.vertices})
        object.__setattr__(self, "twists", self.twists & ~bridge_mask(self.graph))
        object.__setattr__(self, "_key", (self.graph, freeze_rotation(self.rotation), self.twists))

    @classmethod
    def from_twists(cls, g: MultiGraph, rot: Mapping[str, Sequence[Dart]],
                    twists: Mapping[str, int] | Sequence[str] = ()) -> "Patch":
        if isinstance(twists, Mapping):
            ids = [e for e, t in twists.items() if t]
        else:
            ids = list(twists)
        return cls(g, rot, EdgeSet.of(g, ids).bits)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Patch) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def twist(self, eid: str) -> int:
        return self.twists >> self.graph.edge_index[eid] & 1

    def twist_dict(self) -> dict[str, int]:
        return {e.id: self.twists >> i & 1 for i, e in sorted(enumerate(self.graph.edges), key=lambda t: t[1].id)}

    def to_json(self) -> dict:
        return {
            "graph": self.graph.name,
            "rotation": {v: [list(h) for h in self.rotation[v]] for v in self.graph.vertices},
            "twists": self.twist_dict(),
        }


def surface_name(orientable: bool, k: int) -> str:
    if orientable:
        return {0: "sphere", 1: "torus"}.get(k, f"genus-{k} orientable surface")
    return {1: "projective plane", 2: "Klein bottle"}.get(k, f"{k}-crosscap surface")


@dataclass(frozen=True)
class BoundaryReport:
    b: int
    traces: tuple[tuple[str, ...], ...]
    supports: tuple[int, ...]
    orientable: bool
    euler: int
    genus: int | None = None
    crosscaps: int | None = None

    @property
    def surface(self) -> dict:
        return {"genus": self.genus} if self.orientable else {"crosscaps": self.crosscaps}

    @property
    def capped(self) -> dict | None:
        """Closed surface obtained by gluing one disk onto a strip."""
        if self.b != 1:
            return None
        if self.orientable:
            return {"genus": self.genus, "name": surface_name(True, self.genus)}
        return {"crosscaps": self.crosscaps, "name": surface_name(False, self.crosscaps)}

    def to_json(self, with_traces: bool = False) -> dict:
        d = {"b": self.b, "orientable": self.orientable, "euler": self.euler, "surface": self.surface}
        if self.b == 1:
            d["capped"] = self.capped
        if with_traces:
            d["traces"] = [list(t) for t in self.traces]
        return d


def boundary_count(p: Patch) -> int:
    if p.graph.m == 0:
        return 1
    sigma = sigma_of(p.graph, p.rotation)
    return int(_accel.count_boundaries(sigma, np.array([p.twists], dtype=np.int64))[0])


def trace_boundaries(p: Patch) -> tuple[list[tuple[str, ...]], list[int]]:
    """Walk every boundary circle.

    Returns one token list per circle (``"v:<vertex>"`` for a corner arc,
    ``"e:<edge>"`` for a band side) and each circle's edge support: the edges
    whose sides it passes an odd number of times, as a bit mask.
    """
    g = p.graph
    if g.m == 0:
        return [(f"v:{g.vertices[0]}",)], [0]
    sigma = sigma_of(g, p.rotation)
    seen = np.zeros(4 * g.m, dtype=bool)
    traces, supports = [], []
    for s in range(4 * g.m):
        if seen[s]:
            continue
        tokens, support = [], 0
        x = s
        while True:
            seen[x] = True
            y = int(sigma[x])
            seen[y] = True
            i = y >> 2
            tokens.append(f"v:{g.edges[i].end((y >> 1) & 1)}")
            tokens.append(f"e:{g.edges[i].id}")
            support ^= 1 << i
            x = y ^ (3 - (p.twists >> i & 1))
            if x == s:
                break
        traces.append(tuple(tokens))
        supports.append(support)
    return traces, supports


def orientable_by_parity(p: Patch, basis: CycleBasis | None = None) -> bool:
    basis = basis or fundamental_basis(p.graph)
    return all(cycle_twist_parity(c, p.twists) == 0 for c in basis.cycles)


def orientable_by_signs(p: Patch) -> bool:
    """Independent check: propagate disk orientations along a spanning tree."""
    g = p.graph
    sign = {g.vertices[0]: 0}
    todo = deque([g.vertices[0]])
    while todo:
        x = todo.popleft()
        for eid, end in g.darts_at(x):
            y = g.edge(eid).end(1 - end)
            if y not in sign:
                sign[y] = sign[x] ^ p.twist(eid)
                todo.append(y)
    return all(p.twist(e.id) == sign[e.u] ^ sign[e.v] for e in g.edges)


def is_orientable(p: Patch, basis: CycleBasis | None = None) -> bool:
    return orientable_by_parity(p, basis)


def classify(b: int, euler: int, orientable: bool) -> tuple[int | None, int | None]:
    if orientable:
        two_g = 2 - euler - b
        if two_g < 0 or two_g % 2:
            raise SurfaceError(f"orientable patch with chi={euler}, b={b} has no integer genus")
        return two_g // 2, None
    k = 2 - euler - b
    if k < 1:
        raise SurfaceError(f"non-orientable patch with chi={euler}, b={b} has crosscap number {k}")
    return None, k


def boundary_components(p: Patch, basis: CycleBasis | None = None) -> BoundaryReport:
    traces, supports = trace_boundaries(p)
    orientable = is_orientable(p, basis)
    euler = p.graph.n - p.graph.m
    genus, cross = classify(len(traces), euler, orientable)
    return BoundaryReport(len(traces), tuple(traces), tuple(supports), orientable, euler, genus, cross)


surface_class = boundary_components


def is_strip(p: Patch) -> bool:
    return boundary_count(p) == 1


def switch(p: Patch, eid: str) -> Patch:
    i = p.graph.edge_index.get(eid)
    if i is None:
        raise GraphError(f"unknown edge {eid!r}")
    return Patch(p.graph, p.rotation, p.twists ^ (1 << i))


def flip_mask(g: MultiGraph, v: str) -> int:
    """Twist bits toggled by reflecting the disk at ``v``."""
    bits = 0
    for i, e in enumerate(g.edges):
        if not e.is_loop and v in (e.u, e.v):
            bits |= 1 << i
    return bits


def vertex_flip(p: Patch, v: str) -> Patch:
    g = p.graph
    if v not in p.rotation:
        raise GraphError(f"unknown vertex {v!r}")
    rot = dict(p.rotation)
    rot[v] = tuple(reversed(rot[v]))
    return Patch(g, rot, p.twists ^ flip_mask(g, v))
