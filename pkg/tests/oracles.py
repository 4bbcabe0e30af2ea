"""Independent reference implementations used only by the tests.

These deliberately avoid the package's arc-endpoint encoding: faces are
traced on (dart, direction) states of a signed rotation system, the way it
is done by hand.
"""
from __future__ import annotations

import itertools

import networkx as nx


def face_count(graph, rotation, twisted):
    """Boundary circles of a ribbon graph by signed face tracing.

    State ``(dart, s)``: we stand at ``dart`` and will walk around the vertex
    in rotation order if ``s == +1``, reverse order if ``s == -1``.  Each
    boundary circle is visited once in each direction, hence the halving.
    """
    if not graph.edges:
        return 1
    nxt, prv = {}, {}
    for v, seq in rotation.items():
        k = len(seq)
        for i, h in enumerate(seq):
            nxt[tuple(h)] = tuple(seq[(i + 1) % k])
            prv[tuple(h)] = tuple(seq[(i - 1) % k])
    states = {(h, s) for h in nxt for s in (1, -1)}
    orbits = 0
    while states:
        start = states.pop()
        orbits += 1
        h, s = start
        while True:
            eid, end = h
            other = (eid, 1 - end)
            s2 = -s if eid in twisted else s
            h = nxt[other] if s2 == 1 else prv[other]
            s = s2
            if (h, s) == start:
                break
            states.discard((h, s))
    return orbits // 2


def orientable_by_cycles(graph, twisted):
    """Every cycle of an nx cycle basis carries an even number of twists."""
    mg = nx.MultiGraph()
    mg.add_nodes_from(graph.vertices)
    for e in graph.edges:
        mg.add_edge(e.u, e.v, key=e.id)
    # two-coloring the vertices with twisted edges as sign changes
    color = {}
    for comp_root in graph.vertices[:1]:
        color[comp_root] = 0
        for u, v, k in nx.edge_bfs(mg, comp_root):
            if v not in color:
                color[v] = color[u] ^ (k in twisted)
    return all(color[e.u] ^ color[e.v] == (e.id in twisted) for e in graph.edges)


def to_nx(graph):
    mg = nx.MultiGraph()
    mg.add_nodes_from(graph.vertices)
    for e in graph.edges:
        mg.add_edge(e.u, e.v, key=e.id)
    return mg


def bridges_by_removal(graph):
    out = set()
    for e in graph.edges:
        mg = to_nx(graph)
        mg.remove_edge(e.u, e.v, key=e.id)
        if not nx.is_connected(mg):
            out.add(e.id)
    return out


def census_counts(graph, rotation, bridges):
    """(patch_count, S, O, N, b by twist tuple) by brute force over twist subsets."""
    free = sorted(e.id for e in graph.edges if e.id not in bridges)
    S = O = 0
    table = {}
    for r in range(len(free) + 1):
        for tw in itertools.combinations(free, r):
            t = set(tw)
            b = face_count(graph, rotation, t)
            table["".join("1" if e in t else "0" for e in free)] = b
            if b == 1:
                S += 1
                O += orientable_by_cycles(graph, t)
    return {"patch_count": 2 ** len(free), "S": S, "O": O, "N": S - O, "b": dict(sorted(table.items()))}


def is_simple_cycle_nx(graph, ids):
    """Edge set forms one cycle: connected and every touched vertex has degree 2."""
    if not ids:
        return False
    sub = nx.MultiGraph()
    for e in graph.edges:
        if e.id in ids:
            sub.add_edge(e.u, e.v, key=e.id)
    return nx.is_connected(sub) and all(d == 2 for _, d in sub.degree())


def _same_cyclic(a, b):
    a, b = list(a), list(b)
    if len(a) != len(b):
        return False
    if not a:
        return True
    return any(a == b[i:] + b[:i] for i in range(len(b)))


def strips_up_to_iso_brute(graph, rotation, strips):
    """Orbits of strip twist sets under all dart relabelings that keep the rotation up to flips.

    Brute force over vertex permutations, edge permutations, end swaps and
    vertex reflections; only usable for a handful of edges.
    """
    vs, es = list(graph.vertices), list(graph.edges)
    strips = [frozenset(s) for s in strips]
    parent = {s: s for s in strips}

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for vperm in itertools.permutations(vs):
        vmap = dict(zip(vs, vperm))
        for eperm in itertools.permutations(es):
            for swaps in itertools.product((0, 1), repeat=len(es)):
                dmap, ok = {}, True
                for e, f, s in zip(es, eperm, swaps):
                    ends = (f.u, f.v) if not s else (f.v, f.u)
                    if (vmap[e.u], vmap[e.v]) != ends:
                        ok = False
                        break
                    dmap[(e.id, 0)] = (f.id, s)
                    dmap[(e.id, 1)] = (f.id, 1 - s)
                if not ok:
                    continue
                for flips in itertools.product((0, 1), repeat=len(vs)):
                    flipped = dict(zip(vs, flips))
                    good = True
                    for v in vs:
                        image = [dmap[tuple(h)] for h in rotation[v]]
                        if flipped[vmap[v]]:
                            image = image[::-1]
                        if not _same_cyclic(image, [tuple(h) for h in rotation[vmap[v]]]):
                            good = False
                            break
                    if not good:
                        continue
                    emap = {e.id: f.id for e, f in zip(es, eperm)}
                    for s in strips:
                        t = set()
                        for e in es:
                            tw = (e.id in s)
                            f = emap[e.id]
                            fe = graph.edges[[x.id for x in es].index(f)]
                            if not fe.is_loop:
                                tw ^= flipped[fe.u] ^ flipped[fe.v]
                            if tw:
                                t.add(f)
                        t = frozenset(t)
                        if t in parent:
                            ra, rb = find(s), find(t)
                            if ra != rb:
                                parent[ra] = rb
    return len({find(s) for s in strips})
