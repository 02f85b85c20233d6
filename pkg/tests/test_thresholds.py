import math

import pytest

from threshlab.census import subgraph_census
from threshlab.errors import InfeasibleError, InputError
from threshlab.graphs import Graph
from threshlab.thresholds import (
    compute_thresholds,
    expectation_value,
    generalized_log_threshold,
)

K2 = Graph.complete(2)
K3 = Graph.complete(3)
M2 = Graph.from_edges(4, [(0, 1), (2, 3)])
CORPUS = [
    K2,
    K3,
    Graph.complete(4),
    Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]),
    Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)]),
    Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)]),
    M2,
]


def test_triangle_at_5():
    report = compute_thresholds(K3, 5)
    target = (1.0 / 20.0) ** (1.0 / 3.0)
    assert abs(report.p_modified - target) <= 1e-12
    assert abs(report.p_expectation - target) <= 1e-12
    # witness: the full triangle class, for both maxima
    assert [w.subgraph.edge_count for w in report.witnesses_modified] == [3]
    assert [w.subgraph.edge_count for w in report.witnesses_expectation] == [3]


def test_triangle_at_3():
    report = compute_thresholds(K3, 3)
    assert abs(report.p_modified - 2.0 ** (-1.0 / 3.0)) <= 1e-12


def test_two_disjoint_edges_at_4():
    report = compute_thresholds(M2, 4)
    target = (1.0 / 6.0) ** 0.5
    assert abs(report.p_modified - target) <= 1e-12
    assert abs(report.p_expectation - target) <= 1e-12
    # the modified single-edge term 2/12 stays below the winner
    single = [w for w in report.witnesses_modified if w.subgraph.edge_count == 1]
    assert not single


def test_expectation_value_examples():
    k2_cls = subgraph_census(K2)[0]
    assert abs(expectation_value(k2_cls, 5, 0.1) - math.log(1.0)) <= 1e-12
    k3_cls = [c for c in subgraph_census(K3) if c.edge_count == 3][0]
    assert abs(expectation_value(k3_cls, 6, 0.3) - math.log(0.54)) <= 1e-12
    with pytest.raises(InputError):
        expectation_value(k2_cls, 5, 0.0)
    with pytest.raises(InputError):
        expectation_value(k2_cls, 5, 1.5)


def test_full_class_at_modified_threshold():
    # E_p Z_H at p = p~_E is at least M_{H,H}/2 = 1/2
    report = compute_thresholds(K3, 6)
    full_cls = [c for c in subgraph_census(K3) if c.edge_count == 3][0]
    assert expectation_value(full_cls, 6, report.p_modified) >= math.log(0.5) - 1e-9


def test_defining_property_of_both_thresholds():
    for h in CORPUS:
        census = subgraph_census(h)
        for n in range(h.vertex_count, 9):
            report = compute_thresholds(h, n, census)
            p_mod = report.p_modified
            for cls in census:
                want = math.log(cls.multiplicity / 2.0)
                assert expectation_value(cls, n, p_mod) >= want - 1e-9
            shrunk = p_mod * (1.0 - 1e-6)
            assert any(
                expectation_value(cls, n, shrunk) < math.log(cls.multiplicity / 2.0)
                for cls in census
            )
            p_exp = report.p_expectation
            for cls in census:
                assert expectation_value(cls, n, p_exp) >= math.log(0.5) - 1e-9
            shrunk = p_exp * (1.0 - 1e-6)
            assert any(
                expectation_value(cls, n, shrunk) < math.log(0.5) for cls in census
            )


def test_sandwich_lower_half_everywhere():
    for h in CORPUS:
        census = subgraph_census(h)
        for n in range(h.vertex_count, 13):
            report = compute_thresholds(h, n, census)
            assert report.log_p_expectation <= report.log_p_modified
            # M_{H',H} <= M_{H'} pointwise keeps p~_E <= 2^{-1/e(H)}
            assert report.log_p_modified <= -math.log(2.0) / h.edge_count + 1e-12


def test_full_subgraph_multiplicity_is_one():
    for h in CORPUS:
        census = subgraph_census(h)
        full = [c for c in census if c.edge_count == h.edge_count]
        assert len(full) == 1 and full[0].multiplicity == 1


def test_modified_nonincreasing_in_n():
    for h in CORPUS:
        census = subgraph_census(h)
        prev = None
        for n in range(h.vertex_count, 13):
            report = compute_thresholds(h, n, census)
            if prev is not None:
                assert report.log_p_modified <= prev + 1e-12
            prev = report.log_p_modified


def test_witness_values_within_tolerance():
    report = compute_thresholds(Graph.complete(4), 7)
    for w in report.witnesses_modified:
        assert abs(w.log_value - report.log_p_modified) <= 1e-12
    for w in report.witnesses_expectation:
        assert abs(w.log_value - report.log_p_expectation) <= 1e-12


def test_infeasible_n():
    with pytest.raises(InfeasibleError, match="cannot appear"):
        compute_thresholds(Graph.complete(4), 3)


def test_generalized_threshold_entry_point():
    census = subgraph_census(K3)
    half = generalized_log_threshold(census, 5, 0.5)
    assert abs(half - compute_thresholds(K3, 5, census).log_p_modified) <= 1e-12
    # a laxer constant lowers the threshold
    assert generalized_log_threshold(census, 5, 0.25) < half
    with pytest.raises(InputError):
        generalized_log_threshold(census, 5, 0.0)
