import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings

from conftest import load
from oracles import is_simple_cycle_nx, to_nx
from test_multigraph import G, multigraphs
from cutlocus.cycle_space import (EdgeSet, cycle_twist_parity, fundamental_basis, in_cycle_space,
                                  is_simple_cycle, simple_cycles, span, spanning_trees, sym_diff)


def gf2_rank(vectors):
    rank, rows = 0, list(vectors)
    for bit in range(max((v.bit_length() for v in rows), default=0)):
        pivot = next((r for r in rows if r >> bit & 1), None)
        if pivot is None:
            continue
        rows = [r ^ pivot if r >> bit & 1 and r != pivot else r for r in rows if r != pivot]
        rank += 1
    return rank


def test_edgeset_ops(theta):
    a = EdgeSet.of(theta, ["a", "b"])
    b = EdgeSet.of(theta, ["b", "c"])
    assert (a ^ b).ids(theta) == ["a", "c"]
    assert len(a) == 2 and 0 in a and 2 not in a
    assert list(a) == [0, 1]
    with pytest.raises(ValueError, match="length"):
        sym_diff(a, EdgeSet(1, 5))


def test_theta_bfs_basis(theta):
    basis = fundamental_basis(theta)
    assert [c.ids(theta) for c in basis.cycles] == [["a", "b"], ["a", "c"]]
    assert (basis.q, basis.c) == (2, 2)


def test_twist_parity(theta):
    c = EdgeSet.of(theta, ["a", "b"])
    assert cycle_twist_parity(c, EdgeSet.of(theta, ["a"])) == 1
    assert cycle_twist_parity(c, EdgeSet.of(theta, ["a", "b", "c"])) == 0


def test_simple_cycles_known_counts(theta):
    assert len(simple_cycles(theta)) == 3
    k4 = nx.complete_graph(4)
    g = G([str(v) for v in k4], [(f"e{i}", str(u), str(v)) for i, (u, v) in enumerate(k4.edges)])
    assert len(simple_cycles(g)) == 7
    k33 = nx.complete_bipartite_graph(3, 3)
    g = G([str(v) for v in k33], [(f"e{i}", str(u), str(v)) for i, (u, v) in enumerate(k33.edges)])
    assert len(simple_cycles(g)) == 15


def test_loop_is_a_cycle():
    g = load("loop")
    assert [c.ids(g) for c in fundamental_basis(g).cycles] == [["a"]]


@settings(max_examples=150, deadline=None)
@given(multigraphs(max_n=5, max_m=8))
def test_basis_properties(g):
    basis = fundamental_basis(g)
    assert basis.q == g.m - g.n + 1
    assert gf2_rank([c.bits for c in basis.cycles]) == basis.q
    for c in basis.cycles:
        assert is_simple_cycle(g, c)
        assert is_simple_cycle_nx(g, set(c.ids(g)))
    assert len(basis.tree) == g.n - 1
    if g.n > 1:
        tree = nx.Graph([(g.edges[i].u, g.edges[i].v) for i in basis.tree])
        assert nx.is_tree(tree) and tree.number_of_nodes() == g.n


@settings(max_examples=80, deadline=None)
@given(multigraphs(max_n=4, max_m=6))
def test_span_and_simple_cycles_oracle(g):
    basis = fundamental_basis(g)
    elems = list(span(basis))
    assert len({e.bits for e in elems}) == 2 ** basis.q
    assert all(in_cycle_space(g, e) for e in elems)
    ours = {e.bits for e in simple_cycles(g, basis)}
    brute = set()
    for bits in range(1, 1 << g.m):
        ids = {g.edges[i].id for i in range(g.m) if bits >> i & 1}
        if is_simple_cycle_nx(g, ids):
            brute.add(bits)
    assert ours == brute


def test_min_c_basis_is_no_worse(theta):
    k4 = nx.complete_graph(4)
    g = G([str(v) for v in k4], [(f"e{i}", str(u), str(v)) for i, (u, v) in enumerate(k4.edges)])
    assert fundamental_basis(g, "min-c").c <= fundamental_basis(g).c
    assert fundamental_basis(g, "min-c").c == 3
    assert sum(1 for _ in spanning_trees(g)) == 16  # Cayley: 4^(4-2)


def test_min_c_falls_back_on_large_graphs(caplog):
    n = 8
    vs = [f"v{i}" for i in range(n)]
    es = [(f"r{i}", vs[i], vs[(i + 1) % n]) for i in range(n)]
    es += [(f"s{i}", vs[i], vs[i + n // 2]) for i in range(n // 2)]
    g = G(vs, es)
    with caplog.at_level("WARNING"):
        basis = fundamental_basis(g, "min-c")
    assert basis.method == "bfs" and "falling back" in caplog.text


def test_unknown_method(theta):
    with pytest.raises(ValueError):
        fundamental_basis(theta, "nope")


def test_spanning_tree_count_matches_matrix_tree(theta):
    lap = nx.laplacian_matrix(to_nx(theta)).toarray()
    assert sum(1 for _ in spanning_trees(theta)) == round(np.linalg.det(lap[1:, 1:])) == 3
