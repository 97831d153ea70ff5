from __future__ import annotations

import random
from math import comb

import pytest

from rigidlab.errors import ParseError, PreconditionError
from rigidlab.graph import (Bipartition, Graph, complete, complete_bipartite, complete_on, cone,
                            diamond_split, edge, format_edges, parse_edge_list, parse_graph_spec,
                            random_split_args, vertex_split)

SPLIT_EXAMPLE = Graph.from_edges(6, [(1, 2), (2, 3), (3, 4), (1, 4), (1, 5), (2, 5), (3, 5), (4, 6), (5, 6)])


def test_generators_counts():
    assert complete(4).m == 6
    assert complete_bipartite(3, 3).m == 9
    assert complete_bipartite(6, 7).m == 42
    K = complete_bipartite(2, 3)
    assert K.bipartition == Bipartition(frozenset({1, 2}), frozenset({3, 4, 5}))
    assert complete_on(5, [1, 4], [2, 3, 5]).edges == {edge(x, y) for x in (1, 4) for y in (2, 3, 5)}


def test_cone():
    G = complete_bipartite(6, 7)
    assert cone(G, 0) == G
    assert cone(complete(3), 1).edges == complete(4).edges
    C = cone(G, 1)
    assert (C.n, C.m) == (14, 55)
    for k in range(4):
        assert cone(SPLIT_EXAMPLE, k).m == SPLIT_EXAMPLE.m + k * SPLIT_EXAMPLE.n + comb(k, 2)


def test_example_vertex_split():
    G2 = vertex_split(SPLIT_EXAMPLE, 5, {1, 3}, {6}, {2}, 2)
    assert G2.n == 7
    # |E| + d: edge 25 goes, 7-6, 7-2, 7-5 arrive
    assert G2.m == 11
    assert edge(2, 5) not in G2.edges
    assert G2.neighbors(7) == {2, 5, 6}
    assert G2.neighbors(5) == {1, 3, 6, 7}


def test_k33_vertex_split_counts():
    G2 = vertex_split(complete_bipartite(3, 3), 1, {4}, {5}, {6}, 2)
    assert (G2.n, G2.m) == (7, 11)


def test_diamond_split():
    K4 = complete(4)
    G2 = diamond_split(K4, 1, {4}, {2, 3}, set(), 2)
    assert G2.edges == K4.edges | {edge(5, 2), edge(5, 3)}
    K = complete_bipartite(3, 3)
    G3 = diamond_split(K, 1, set(), {4, 5}, {6}, 2)
    assert (G3.n, G3.m) == (7, 11)
    assert G3.is_bipartite()
    assert G3.bipartition is not None and 7 in G3.bipartition.X


def test_split_preconditions():
    with pytest.raises(PreconditionError):
        vertex_split(SPLIT_EXAMPLE, 5, {1, 3}, {6, 2}, set(), 2)  # |B| must be d-1
    with pytest.raises(PreconditionError):
        vertex_split(SPLIT_EXAMPLE, 5, {1}, {6}, {2}, 2)  # 3 is unassigned
    with pytest.raises(PreconditionError):
        diamond_split(SPLIT_EXAMPLE, 6, set(), {4, 5}, {1}, 2)  # 1 is not a neighbour of 6
    with pytest.raises(PreconditionError):
        diamond_split(SPLIT_EXAMPLE, 6, set(), {4}, {5}, 2)


def test_random_splits_keep_counts():
    rng = random.Random(5)
    for d in (2, 3):
        G = complete(d + 3)
        for kind, fn in (("vertex", vertex_split), ("diamond", diamond_split)):
            args = random_split_args(G, d, kind, rng)
            G2 = fn(G, *args, d)
            assert (G2.n, G2.m) == (G.n + 1, G.m + d)


def test_validation():
    with pytest.raises(PreconditionError):
        Graph(3, frozenset({(1, 1)}))
    with pytest.raises(PreconditionError):
        Graph(3, frozenset({(1, 4)}))
    with pytest.raises(PreconditionError):
        Bipartition(frozenset({1, 2}), frozenset({2, 3}))
    with pytest.raises(PreconditionError):
        complete(4).with_bipartition(Bipartition.from_side(4, [1, 2]))


def test_text_format_round_trip(tmp_path):
    G = complete_bipartite(2, 2)
    text = G.to_text()
    assert text.splitlines()[0] == "4 4"
    assert "B: 1 2" in text
    back = Graph.from_text(text)
    assert back == G
    path = tmp_path / "g.txt"
    path.write_text("3 2\n1 2\n# comment\n2 3\n")
    assert Graph.read(path).edges == {(1, 2), (2, 3)}


@pytest.mark.parametrize("text", ["3 2\n1 2\n", "3 1\n1 x\n", "2 1\n1 3\n", "", "3 1\n1 2 3\n"])
def test_malformed_graph_files(text):
    with pytest.raises(ParseError):
        Graph.from_text(text)


def test_specs():
    assert parse_graph_spec("K5") == complete(5)
    assert parse_graph_spec("K3x3").edges == complete_bipartite(3, 3).edges
    assert parse_graph_spec("cone2(K6x7)").m == 42 + 2 * 13 + 1
    assert parse_graph_spec("edges:12,23,34").edges == {(1, 2), (2, 3), (3, 4)}
    assert parse_edge_list("1-2,3-10") == [(1, 2), (3, 10)]
    assert format_edges([(2, 3), (1, 2)]) == "1-2,2-3"
    for bad in ("K", "edges:1", "Q4"):
        with pytest.raises(ParseError):
            parse_graph_spec(bad)
