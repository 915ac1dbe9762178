import networkx as nx
import pytest
from hypothesis import given, settings

from conftest import graphs, graphs_with_permutation
from reference import brute_isomorphic
from wlkit.graph import GraphError, apply_permutation, build_graph, complete, cycle, path
from wlkit.oracle import enumerate_graphs, is_isomorphic, isomorphism_classes


def test_example_pair_not_isomorphic(triangles, hexagon):
    assert not is_isomorphic(triangles, hexagon).isomorphic


def test_path_vs_triangle():
    assert not is_isomorphic(path(3), cycle(3))


def test_size_mismatch_is_not_an_error():
    assert not is_isomorphic(path(3), path(4))


def test_size_cap():
    with pytest.raises(GraphError):
        is_isomorphic(complete(11), complete(11))
    assert is_isomorphic(cycle(10), apply_permutation(cycle(10), [(3 * i) % 10 for i in range(10)]))


@settings(max_examples=80, deadline=None)
@given(graphs_with_permutation(max_n=8))
def test_permuted_copy_has_valid_witness(gp):
    g, p = gp
    h = apply_permutation(g, p)
    w = is_isomorphic(g, h)
    assert w.isomorphic
    assert apply_permutation(g, w.permutation) == h


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=6), graphs(max_n=6))
def test_against_brute_force_and_networkx(g1, g2):
    got = is_isomorphic(g1, g2).isomorphic
    assert got == is_isomorphic(g2, g1).isomorphic
    assert got == brute_isomorphic(g1.n, g1.edges, g2.n, g2.edges)
    n1, n2 = nx.Graph(), nx.Graph()
    n1.add_nodes_from(range(g1.n)); n1.add_edges_from(g1.edges)
    n2.add_nodes_from(range(g2.n)); n2.add_edges_from(g2.edges)
    assert got == nx.is_isomorphic(n1, n2)


@given(graphs(max_n=7))
def test_self_isomorphic(g):
    w = is_isomorphic(g, g)
    assert w.isomorphic
    assert apply_permutation(g, w.permutation) == g


def test_features_respected():
    a = build_graph(2, [(0, 1)], [[1.0], [2.0]])
    b = build_graph(2, [(0, 1)], [[2.0], [1.0]])
    c = build_graph(2, [(0, 1)], [[2.0], [2.0]])
    assert is_isomorphic(a, b).permutation == (1, 0)
    assert not is_isomorphic(a, c)
    e1 = build_graph(3, [(0, 1), (1, 2)], edge_features={(0, 1): [1.0], (1, 2): [2.0]})
    e2 = build_graph(3, [(0, 1), (1, 2)], edge_features={(0, 1): [2.0], (1, 2): [1.0]})
    e3 = build_graph(3, [(0, 1), (0, 2)], edge_features={(0, 1): [2.0], (0, 2): [1.0]})
    assert is_isomorphic(e1, e2) and is_isomorphic(e1, e3)


@pytest.mark.parametrize("n, count", [(0, 1), (1, 1), (2, 2), (3, 8), (4, 64), (5, 1024)])
def test_enumerate_counts(n, count):
    assert sum(1 for _ in enumerate_graphs(n)) == count


def test_enumerate_order_and_limit():
    gs = list(enumerate_graphs(3))
    assert gs[0].edges == frozenset() and gs[1].edges == {(0, 1)} and gs[-1] == complete(3)
    with pytest.raises(GraphError):
        next(enumerate_graphs(7))


def test_isomorphism_classes_counts():
    # unlabeled graph counts on 4 and 5 nodes
    assert len(set(isomorphism_classes(list(enumerate_graphs(4))))) == 11
    assert len(set(isomorphism_classes(list(enumerate_graphs(5))))) == 34
