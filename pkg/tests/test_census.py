import math
import random

import pytest

from threshlab.census import (
    LogScaledCount,
    copies_in_complete,
    falling_factorial,
    subgraph_census,
)
from threshlab.errors import CapacityError, InputError
from threshlab.graphs import Graph, count_embeddings
from helpers import brute_census, random_graph

K2 = Graph.complete(2)
K3 = Graph.complete(3)
K4 = Graph.complete(4)
K5 = Graph.complete(5)
P3 = Graph.from_edges(3, [(0, 1), (1, 2)])
P4 = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
C4 = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)])


def census_signature(classes):
    return sorted((c.edge_count, c.vertex_count, c.multiplicity) for c in classes)


def test_census_K3():
    classes = subgraph_census(K3)
    assert census_signature(classes) == [(1, 2, 3), (2, 3, 3), (3, 3, 1)]
    assert census_signature(classes) == brute_census(K3)


def test_census_C4():
    classes = subgraph_census(C4)
    assert len(classes) == 4 + 1
    assert sum(c.multiplicity for c in classes) == 15
    assert census_signature(classes) == brute_census(C4)
    # K_2:4, P_3:4, 2K_2:2, P_4:4, C_4:1
    assert sorted(c.multiplicity for c in classes) == [1, 2, 4, 4, 4]


def test_census_K2():
    classes = subgraph_census(K2)
    assert census_signature(classes) == [(1, 2, 1)]


def test_census_matches_brute_force_random():
    rng = random.Random(13)
    for _ in range(15):
        g = random_graph(rng, rng.randint(2, 5), rng.uniform(0.4, 0.9))
        if g.edge_count == 0:
            continue
        assert census_signature(subgraph_census(g)) == brute_census(g)


def test_census_completeness_random():
    rng = random.Random(77)
    for _ in range(10):
        g = random_graph(rng, rng.randint(3, 6), 0.6)
        if g.edge_count == 0:
            continue
        classes = subgraph_census(g)
        assert sum(c.multiplicity for c in classes) == (1 << g.edge_count) - 1


def test_census_oracle_identity():
    for g in (K3, C4, K4, P4):
        for cls in subgraph_census(g):
            assert cls.multiplicity * cls.aut_count == count_embeddings(
                cls.representative, g
            )


def test_census_order_deterministic():
    a = subgraph_census(C4)
    keys = [(c.edge_count, c.canonical.key) for c in a]
    assert keys == sorted(keys)


def test_census_monotone_containment():
    # P_4 subset of C_4 subset of K_4 as edge sets
    chains = [(P4, C4), (C4, K4)]
    for small, big in chains:
        small_classes = {c.canonical.key: c.multiplicity for c in subgraph_census(small)}
        big_classes = {c.canonical.key: c.multiplicity for c in subgraph_census(big)}
        for key, mult in small_classes.items():
            assert key in big_classes
            assert big_classes[key] >= mult


def test_census_connected_only_is_lower_bound():
    full = subgraph_census(C4)
    conn = subgraph_census(C4, connected_only=True)
    assert len(conn) == len(full) - 1  # drops 2K_2
    assert sum(c.multiplicity for c in conn) == 13


def test_census_threads_equivalent():
    assert subgraph_census(K4) == subgraph_census(K4, threads=3)


def test_census_errors():
    with pytest.raises(InputError):
        subgraph_census(Graph(3, (0, 0, 0)))
    with pytest.raises(CapacityError, match="connected-only"):
        subgraph_census(Graph.complete(8), edge_cap=20)


def test_copies_in_complete_examples():
    assert copies_in_complete(K2, 5).exact == 10
    assert copies_in_complete(K3, 5).exact == 10
    assert copies_in_complete(P3, 5).exact == 30
    # cross-check P_3 count by exhaustive census of K_5
    p3_key = [c for c in subgraph_census(K5) if c.edge_count == 2 and c.vertex_count == 3]
    assert len(p3_key) == 1 and p3_key[0].multiplicity == 30
    assert copies_in_complete(K3, 2).exact == 0
    assert copies_in_complete(K3, 2).log_value == float("-inf")


def test_copies_nonzero_when_fits():
    for g in (K2, K3, C4, P4):
        assert copies_in_complete(g, g.vertex_count).exact >= 1


def test_log_scaled_count_precision():
    for value in (1, 2, 720, falling_factorial(50, 30), falling_factorial(64, 64)):
        c = LogScaledCount.of(value)
        assert abs(math.log(value) - c.log_value) <= 1e-12 * max(1.0, abs(c.log_value))
    assert LogScaledCount.of(0).log_value == float("-inf")


def test_falling_factorial():
    assert falling_factorial(5, 3) == 60
    assert falling_factorial(5, 0) == 1
    assert falling_factorial(3, 4) == 0
