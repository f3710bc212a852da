from collections import Counter

import pytest

from sparsecompile import matching
from sparsecompile.matching import BipartiteEdge, BipartiteMultigraph, FlowNetwork
from sparsecompile.topology import LayoutSpec


def test_identity_routing_graph():
    layout = LayoutSpec.sparse(2, 2, 1)
    g = matching.build_routing_graph(layout, list(range(16)))
    assert Counter((e.left, e.right) for e in g.edges) == {(c, c): 4 for c in range(4)}
    parts = matching.decompose_matchings(g)
    assert len(parts) == 4
    assert all(sorted((e.left, e.right) for e in p.edges) == [(c, c) for c in range(4)] for p in parts)


def test_routing_graph_rejects_non_bijection():
    with pytest.raises(matching.NotABijectionError):
        matching.build_routing_graph(LayoutSpec.sparse(1, 1, 1), [0, 0, 1, 2])


def test_routing_graph_is_regular_for_random_perm():
    import random

    layout = LayoutSpec.sparse(3, 3, 2)
    perm = list(range(layout.qubit_count))
    random.Random(5).shuffle(perm)
    g = matching.build_routing_graph(layout, perm)
    assert g.regular_degree() == 2 * 3 * 2
    assert len(g.edges) == layout.qubit_count


def test_irregular_graph_rejected():
    g = BipartiteMultigraph(2, 2, (BipartiteEdge(0, 0, 0), BipartiteEdge(0, 1, 1), BipartiteEdge(1, 1, 2)))
    with pytest.raises(matching.RegularityError):
        matching.decompose_matchings(g)


def test_flow_network_small():
    net = FlowNetwork(4)
    net.add_edge(0, 1, 2)
    net.add_edge(0, 2, 1)
    net.add_edge(1, 2, 1)
    net.add_edge(1, 3, 1)
    net.add_edge(2, 3, 2)
    assert net.max_flow(0, 3) == 3


def test_multi_edges_preserved():
    edges = tuple(BipartiteEdge(0, 0, i) for i in range(3))
    parts = matching.decompose_matchings(BipartiteMultigraph(1, 1, edges))
    assert sorted(e.payload for p in parts for e in p.edges) == [0, 1, 2]


def test_format():
    parts = [matching.Matching((BipartiteEdge(0, 1, 5), BipartiteEdge(1, 0, 2)))]
    assert matching.format_matchings(parts).startswith("matching")
