import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import load
from oracles import bridges_by_removal, to_nx
from cutlocus.multigraph import (Edge, GraphError, MultiGraph, are_isomorphic, bridges,
                                 contract_edge, cubic_resolution, cyclic_part, expand_vertex,
                                 isomorphisms, m_bc, parse_graph)
from cutlocus.ribbon import planar_rotation


def G(vs, es, **kw):
    return MultiGraph(vs, [Edge(*e) for e in es], **kw)


@st.composite
def multigraphs(draw, max_n=5, max_m=8, allow_degree_two=True):
    n = draw(st.integers(1, max_n))
    vs = [f"v{i}" for i in range(n)]
    es = []
    for i in range(1, n):  # spanning tree keeps it connected
        es.append((f"t{i}", vs[draw(st.integers(0, i - 1))], vs[i]))
    extra = draw(st.integers(0, max_m - len(es))) if max_m > len(es) else 0
    for k in range(extra):
        es.append((f"x{k}", vs[draw(st.integers(0, n - 1))], vs[draw(st.integers(0, n - 1))]))
    return G(vs, es, allow_degree_two=allow_degree_two)


def test_parse_theta(theta):
    assert (theta.n, theta.m) == (2, 3)
    assert theta.rotation["u"] == (("a", 0), ("b", 0), ("c", 0))
    assert theta.darts_at("v") == (("a", 1), ("b", 1), ("c", 1))


@pytest.mark.parametrize("doc, msg", [
    ("{", "malformed"),
    ("[]", "object"),
    ('{"vertices": []}', "no vertices"),
    ('{"vertices": ["a", "a"], "edges": []}', "duplicate vertex"),
    ('{"vertices": ["a"], "edges": [{"id": "x", "ends": ["a", "b"]}]}', "unknown vertex"),
    ('{"vertices": ["a", "b"], "edges": []}', "disconnected"),
    ('{"vertices": ["a"], "edges": [{"id": "x", "ends": ["a", "a"]}]}', "degree 2"),
    ('{"vertices": ["a"], "edges": [{"id": "x", "ends": ["a", "a"]}, {"id": "x", "ends": ["a", "a"]}]}',
     "duplicate edge"),
    ('{"vertices": ["a"], "edges": [{"id": "x"}]}', "schema"),
])
def test_parse_rejects(doc, msg):
    with pytest.raises(GraphError, match=msg):
        parse_graph(doc)


def test_bad_rotation_rejected():
    doc = {"vertices": ["u", "v"], "edges": [{"id": i, "ends": ["u", "v"]} for i in "abc"],
           "rotations": {"u": [["a", 0], ["b", 0]], "v": [["a", 1], ["b", 1], ["c", 1]]}}
    with pytest.raises(GraphError, match="rotation"):
        parse_graph(doc)


def test_roundtrip(theta):
    assert parse_graph(theta.to_dict()) == theta


def test_bridges_small(dumbbell, theta):
    assert bridges(dumbbell) == {"c"}
    assert bridges(theta) == frozenset()
    assert bridges(load("tree")) == {"a", "b", "c"}


@settings(max_examples=200, deadline=None)
@given(multigraphs())
def test_bridges_match_removal_oracle(g):
    assert set(bridges(g)) == bridges_by_removal(g)


def test_contract_theta_edge(theta):
    h, vmap = contract_edge(theta.with_(rotation=theta.rotation), "b")
    assert h.n == 1 and h.m == 2 and all(e.is_loop for e in h.edges)
    assert set(vmap.values()) == {"u"}
    # contracting a planar theta edge gives the nested figure-eight
    assert planar_rotation(h) is not None


def test_cyclic_part_tree():
    cp, emap = cyclic_part(load("tree"))
    assert (cp.n, cp.m) == (1, 0)
    assert set(emap.values()) == {None}
    assert m_bc(load("tree")) == 0


def test_cyclic_part_suppresses_degree_two():
    # a square with a pendant edge: cyclic part is a single loop
    g = G(list("abcde"), [("p", "a", "b"), ("q", "b", "c"), ("r", "c", "d"), ("s", "d", "a"),
                          ("t", "a", "e")], allow_degree_two=True)
    cp, emap = cyclic_part(g)
    assert (cp.n, cp.m) == (1, 1) and cp.edges[0].is_loop
    assert emap["t"] is None
    assert {emap[k] for k in "pqrs"} == {cp.edges[0].id}


def test_cyclic_part_subdivided_theta():
    g = G(["u", "v", "w"], [("a", "u", "w"), ("a2", "w", "v"), ("b", "u", "v"), ("c", "u", "v")],
          allow_degree_two=True)
    cp, emap = cyclic_part(g)
    assert (cp.n, cp.m) == (2, 3)
    assert emap["a"] == "a2"  # lexicographically smaller id is the one contracted


@settings(max_examples=150, deadline=None)
@given(multigraphs())
def test_cyclic_part_properties(g):
    cp, emap = cyclic_part(g)
    assert cp.m - cp.n == g.m - g.n  # q preserved
    again, _ = cyclic_part(cp)
    assert (again.n, again.m) == (cp.n, cp.m)
    assert all(cp.degree(v) != 1 for v in cp.vertices) or cp.m == 0
    for v in cp.vertices:
        if cp.degree(v) == 2:
            assert cp.n == 1 and cp.m == 1
    assert set(emap) == {e.id for e in g.edges}


def test_m_bc_counts_only_cyclic_bridges(dumbbell, theta):
    assert m_bc(theta) == 3
    assert m_bc(dumbbell) == 2


def test_expand_vertex_fan():
    g = load("fig8_interleaved")
    h, rot, xids = expand_vertex(g, "v", g.rotation["v"])
    assert xids == ["_x0"] and h.is_cubic()
    assert rot["v.0"] == (("a", 0), ("b", 0), ("_x0", 0))
    assert rot["v.1"] == (("_x0", 1), ("a", 1), ("b", 1))


def test_expand_vertex_rejects_small_degree(theta):
    with pytest.raises(GraphError):
        expand_vertex(theta, "u", theta.rotation["u"])


def test_cubic_resolution_contracts_back():
    # bouquet of three loops: degree 6, four new vertices
    g = G(["v"], [("a", "v", "v"), ("b", "v", "v"), ("c", "v", "v")])
    rot = {"v": (("a", 0), ("b", 0), ("a", 1), ("c", 0), ("b", 1), ("c", 1))}
    h, hrot = cubic_resolution(g, rot)
    assert h.is_cubic() and h.n == 4 and h.m - h.n == g.m - g.n
    back = h.with_(rotation=hrot)
    for e in sorted(e.id for e in h.edges if e.id.startswith("_x")):
        back, _ = contract_edge(back, e)
    assert back.n == 1 and back.m == 3
    seq = back.rotation[back.vertices[0]]
    k = seq.index(("a", 0))
    assert seq[k:] + seq[:k] == rot["v"]


def test_isomorphism_witness():
    g1 = load("theta")
    g2 = G(["x", "y"], [("p", "y", "x"), ("q", "x", "y"), ("r", "x", "y")])
    ok, wit = are_isomorphic(g1, g2)
    assert ok and set(wit["vertices"].values()) == {"x", "y"}
    ok, wit = are_isomorphic(g1, load("dumbbell"))
    assert not ok and wit is None


@settings(max_examples=100, deadline=None)
@given(multigraphs(max_n=4, max_m=6))
def test_isomorphism_agrees_with_networkx(g):
    # relabel by reversing vertex order; also compare against a perturbed graph
    perm = {v: f"w{i}" for i, v in enumerate(reversed(g.vertices))}
    h = G([perm[v] for v in g.vertices], [(e.id + "'", perm[e.u], perm[e.v]) for e in g.edges],
          allow_degree_two=True)
    assert are_isomorphic(g, h)[0]
    k = G(g.vertices, list(g.edges) + [("extra", g.vertices[0], g.vertices[0])], allow_degree_two=True)
    other = G(g.vertices, list(g.edges) + [("extra", g.vertices[0], g.vertices[-1])], allow_degree_two=True)
    assert are_isomorphic(k, other)[0] == nx.is_isomorphic(to_nx(k), to_nx(other))


def test_theta_automorphism_count(theta):
    assert len(list(isomorphisms(theta, theta))) == 2
