import math
from itertools import combinations

import pytest

from threshlab.census import subgraph_census
from threshlab.errors import InfeasibleError, InputError
from threshlab.graphs import Graph
from threshlab.spread import (
    empirical_containment_rate,
    exact_containment_ratio,
    max_spread,
    verify_spread_certificate,
)
from threshlab.thresholds import compute_thresholds
K2 = Graph.complete(2)
K3 = Graph.complete(3)
C4 = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
C5 = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])


def brute_max_spread(h: Graph, n: int) -> float:
    """R* from first principles: enumerate every labelled copy of h in K_n
    and every nonempty labelled J_0, measure containment frequencies."""
    m = h.vertex_count
    copies = []
    from itertools import permutations

    seen = set()
    for image in permutations(range(n), m):
        mapped = frozenset(
            tuple(sorted((image[i], image[j]))) for i, j in h.edges()
        )
        seen.add(mapped)
    copies = list(seen)
    host_edges = list(combinations(range(n), 2))
    worst = None
    for r in range(1, len(host_edges) + 1):
        for j0 in combinations(host_edges, r):
            j0set = set(j0)
            hits = sum(1 for c in copies if j0set <= c)
            if hits == 0:
                continue
            val = math.log(hits / len(copies)) / r
            if worst is None or val > worst:
                worst = val
    return math.exp(-worst)


def test_max_spread_triangle_at_5():
    r = max_spread(K3, 5)
    assert abs(r - 10.0 ** (1.0 / 3.0)) <= 1e-12


def test_max_spread_single_edge():
    for n in (2, 4, 6):
        assert abs(max_spread(K2, n) - n * (n - 1) / 2) <= 1e-9


def test_max_spread_pattern_equals_host():
    assert abs(max_spread(K3, 3) - 1.0) <= 1e-12


def test_max_spread_matches_labelled_brute_force():
    cases = [(K3, 4), (K3, 5), (C4, 4), (Graph.from_edges(3, [(0, 1), (1, 2)]), 4)]
    for h, n in cases:
        assert abs(max_spread(h, n) - brute_max_spread(h, n)) <= 1e-9


def test_max_spread_nondecreasing_in_n():
    for h in (K3, C4, C5):
        prev = None
        for n in range(h.vertex_count, 13):
            r = max_spread(h, n)
            if prev is not None:
                assert r >= prev - 1e-12
            prev = r


def test_certificate_examples():
    cert = verify_spread_certificate(K3, 5, compute_thresholds(K3, 5))
    assert cert.passed
    assert abs(cert.r_claimed - 1.0 / (2.0 * (1.0 / 20.0) ** (1.0 / 3.0))) <= 1e-12
    assert abs(cert.r_star - 10.0 ** (1.0 / 3.0)) <= 1e-12

    cert = verify_spread_certificate(K2, 5, compute_thresholds(K2, 5))
    assert cert.passed
    # single-class chain is tight: zero margin
    assert abs(cert.log_r_claimed - cert.log_r_star) <= 1e-12

    cert = verify_spread_certificate(K3, 3, compute_thresholds(K3, 3))
    assert cert.passed
    assert abs(cert.r_claimed - 1.0 / (2.0 * 2.0 ** (-1.0 / 3.0))) <= 1e-12
    assert abs(cert.r_star - 1.0) <= 1e-12


def test_certificate_mismatched_inputs():
    report = compute_thresholds(K3, 5)
    with pytest.raises(InputError):
        verify_spread_certificate(K3, 6, report)
    with pytest.raises(InputError):
        verify_spread_certificate(C4, 5, report)


def test_empirical_rate_triangle_spans_k3():
    rate, se = empirical_containment_rate(K3, 3, K2, samples=500, seed=1)
    assert rate == 1.0 and se == 0.0


def test_empirical_rate_matches_exact_ratio():
    cases = [
        (K3, 5, Graph.from_edges(2, [(0, 1)])),
        (C4, 4, Graph.from_edges(4, [(0, 1), (2, 3)])),
        (C5, 6, Graph.from_edges(3, [(0, 1), (1, 2)])),
    ]
    for idx, (h, n, j0) in enumerate(cases):
        census = subgraph_census(h)
        from threshlab.graphs import canonical_form

        key = canonical_form(j0).key
        cls = next(c for c in census if c.canonical.key == key)
        exact = exact_containment_ratio(census, n, cls)
        rate, se = empirical_containment_rate(h, n, j0, samples=10000, seed=idx)
        spread = max(se, math.sqrt(exact * (1.0 - exact) / 10000))
        assert abs(rate - exact) <= 3.0 * spread


def test_empirical_rate_symmetric_under_relabelling():
    j0 = Graph.from_edges(5, [(0, 1), (1, 2)])
    j0_moved = Graph.from_edges(6, [(5, 3), (3, 0)])
    r1, se1 = empirical_containment_rate(C5, 6, j0, samples=8000, seed=3)
    r2, se2 = empirical_containment_rate(C5, 6, j0_moved, samples=8000, seed=4)
    assert abs(r1 - r2) <= 3.0 * math.sqrt(se1**2 + se2**2)


def test_empirical_rate_errors():
    with pytest.raises(InfeasibleError):
        empirical_containment_rate(C5, 4, K2, samples=10)
    with pytest.raises(InputError):
        empirical_containment_rate(K3, 5, Graph(3, (0, 0, 0)), samples=10)
    with pytest.raises(InputError):
        empirical_containment_rate(K3, 5, K2, samples=0)


def test_double_count_identity_exact():
    # M_{J,H}/M_J equals the containment probability of a fixed copy,
    # certified against independent counts
    census = subgraph_census(C4)
    from threshlab.graphs import canonical_form

    m2 = Graph.from_edges(4, [(0, 1), (2, 3)])
    cls = next(c for c in census if c.canonical.key == canonical_form(m2).key)
    assert cls.multiplicity == 2
    assert exact_containment_ratio(census, 4, cls) == pytest.approx(2.0 / 3.0)


def test_consequence_rate_reporting_tool():
    from threshlab.spread import consequence_rate

    report = compute_thresholds(K3, 6)
    p, rate, se = consequence_rate(K3, 6, report, c=4.0, samples=800, seed=1)
    assert 0 < p <= 1.0
    assert 0.0 <= rate <= 1.0
    # with a generous constant the consequence should comfortably hold
    assert rate >= 0.5
