import itertools

import networkx as nx
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import load
from test_multigraph import multigraphs
from cutlocus.cycle_space import fundamental_basis
from cutlocus.intersection import (HEdge, HGraph, build_H, check_p_lower_bound, count_disjoint_tuples,
                                   count_tuples_dp, disjoint_tuples, p_of, simple_paths)


def test_theta_H(theta):
    basis = fundamental_basis(theta)
    h = build_H(theta, basis)
    assert h.q == 2 and [e.to_json() for e in h.edges] == [
        {"from": 1, "to": 2, "type": "edge", "carrier": "a"}]
    labels = sorted(sorted(p.label() for p in t) for t in disjoint_tuples(simple_paths(h)))
    assert labels == [["(1)"], ["(1)", "(2)"], ["(12)"], ["(2)"]]
    assert p_of(theta, basis) == 4


def test_figure_eight_has_vertex_type_edge():
    g = load("fig8_nested")
    h = build_H(g, fundamental_basis(g))
    assert [(e.kind, e.carrier) for e in h.edges] == [("vertex", "v")]
    assert p_of(g, fundamental_basis(g)) == 4


def test_dumbbell_H_edgeless(dumbbell):
    basis = fundamental_basis(dumbbell)
    chk = check_p_lower_bound(dumbbell, basis)
    assert chk.p == 3 and chk.lower == 3 and chk.equality and chk.edgeless and chk.consistent


@st.composite
def hgraphs(draw):
    q = draw(st.integers(1, 6))
    pairs = [(i, j) for i in range(1, q + 1) for j in range(i + 1, q + 1)]
    edges = []
    for i, j in pairs:
        for k in range(draw(st.integers(0, 2))):
            edges.append(HEdge(i, j, draw(st.sampled_from(["edge", "vertex"])), f"x{i}{j}{k}"))
    return HGraph(q, tuple(sorted(edges)))


def brute_tuple_count(h):
    """Paths via networkx edge paths, tuples via subsets of the path list."""
    mg = nx.MultiGraph()
    mg.add_nodes_from(h.vertices)
    for k, e in enumerate(h.edges):
        mg.add_edge(e.i, e.j, key=k)
    paths = [frozenset([v]) for v in h.vertices]
    for a, b in itertools.combinations(h.vertices, 2):
        for ep in nx.all_simple_edge_paths(mg, a, b):
            vs = {a} | {x for u, v, _ in ep for x in (u, v)}
            paths.append(frozenset(vs))
    count = 0
    for r in range(1, h.q + 1):
        for combo in itertools.combinations(range(len(paths)), r):
            sets = [paths[i] for i in combo]
            if sum(map(len, sets)) == len(frozenset().union(*sets)):
                count += 1
    return count


@settings(max_examples=120, deadline=None)
@given(hgraphs())
def test_path_tuple_counts_agree(h):
    listed = count_disjoint_tuples(simple_paths(h))
    assert count_tuples_dp(h) == listed
    if h.q <= 4 and len(h.edges) <= 6:
        assert listed == brute_tuple_count(h)


@settings(max_examples=100, deadline=None)
@given(hgraphs())
def test_p_lower_bound_on_random_H(h):
    p = count_tuples_dp(h)
    assert p >= 2 ** h.q - 1
    assert (p == 2 ** h.q - 1) == h.is_edgeless()


@settings(max_examples=100, deadline=None)
@given(multigraphs(max_n=4, max_m=7))
def test_p_lower_bound_on_graphs(g):
    assert check_p_lower_bound(g, fundamental_basis(g)).consistent


def test_paths_counted_up_to_reversal():
    h = HGraph(3, (HEdge(1, 2, "edge", "a"), HEdge(2, 3, "edge", "b")))
    assert [p.label() for p in simple_paths(h)] == ["(1)", "(2)", "(3)", "(12)", "(23)", "(123)"]


def test_parallel_H_edges_give_distinct_paths():
    h = HGraph(2, (HEdge(1, 2, "edge", "a"), HEdge(1, 2, "edge", "b")))
    assert len(simple_paths(h)) == 4
    assert count_tuples_dp(h) == 5
