import pytest

from threshlab.errors import InputError
from threshlab.graphio import (
    parse_graph,
    parse_graph6,
    serialize_graph,
    write_graph6,
)
from threshlab.graphs import Graph


def test_parse_triangle():
    g = parse_graph("0 1\n1 2\n2 0")
    assert g.order == 3 and g.edge_count == 3


def test_parse_single_edge():
    g = parse_graph("0 1")
    assert g.order == 2 and g.edge_count == 1


def test_parse_comments_and_blanks():
    g = parse_graph("# a triangle\n\n0 1\n1 2  # trailing comment\n2 0\n")
    assert g.edge_count == 3


def test_parse_errors_carry_line_numbers():
    with pytest.raises(InputError, match="line 1"):
        parse_graph("0 0")
    with pytest.raises(InputError, match="line 2"):
        parse_graph("0 1\n0 1")
    with pytest.raises(InputError, match="line 3"):
        parse_graph("0 1\n1 2\n1 2 3")
    with pytest.raises(InputError, match="line 1"):
        parse_graph("0 albert")
    with pytest.raises(InputError, match="line 2"):
        parse_graph("0 1\n0 99")
    with pytest.raises(InputError):
        parse_graph("   \n# only comments\n")


def test_order_directive_keeps_isolated_vertices():
    g = parse_graph("# n=5\n0 1\n")
    assert g.order == 5 and g.edge_count == 1
    with pytest.raises(InputError):
        parse_graph("# n=2\n0 4\n")


def test_edge_list_round_trip():
    g = Graph.from_edges(6, [(0, 1), (1, 2), (2, 3), (4, 5)])
    back = parse_graph(serialize_graph(g))
    assert back == g
    trailing = Graph.from_edges(7, [(0, 1)])
    assert parse_graph(serialize_graph(trailing)) == trailing


def test_graph6_known_encodings():
    # reference encodings (column-major bits, +63): K_3='Bw', P_3='Bg', C_4='Cl'
    assert write_graph6(Graph.complete(3)).endswith("Bw")
    assert write_graph6(Graph.from_edges(3, [(0, 1), (1, 2)])).endswith("Bg")
    assert write_graph6(
        Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    ).endswith("Cl")
    assert parse_graph6("Bw") == Graph.complete(3)
    assert parse_graph6(">>graph6<<Bw") == Graph.complete(3)


def test_graph6_round_trip():
    import random

    rng = random.Random(5)
    for order in (2, 5, 9, 33, 63, 64):
        edges = [
            (i, j)
            for i in range(order)
            for j in range(i + 1, order)
            if rng.random() < 0.3
        ]
        g = Graph.from_edges(order, edges)
        assert parse_graph6(write_graph6(g)) == g
        assert parse_graph(serialize_graph(g, fmt="graph6")) == g


def test_parse_graph_header_dispatch():
    text = serialize_graph(Graph.complete(4), fmt="graph6")
    assert parse_graph(text) == Graph.complete(4)


def test_graph6_bad_input():
    with pytest.raises(InputError):
        parse_graph6("B")  # truncated payload
    with pytest.raises(InputError):
        parse_graph6("B\x07")
