"""Acceptance suite: one test per criterion, each printing a PASS/FAIL
line with its headline numbers.  Criteria run in order so the
determinism check (c11) can reuse the desk-check artifact from c8.

Run with `pytest tests/test_acceptance.py -s` to watch the lines appear;
the same registry backs `threshlab verify`.
"""

import json

import pytest

from threshlab.acceptance import AcceptanceContext, run_criterion


@pytest.fixture(scope="module")
def ctx():
    return AcceptanceContext(seed=0, threads=1)


def _report(result, extra=""):
    status = "PASS" if result.passed else "FAIL"
    line = f"ACCEPT {result.cid} {result.name}: {status} ({result.seconds:.1f}s)"
    if extra:
        line += f" {extra}"
    print(line)
    if not result.passed:
        print(json.dumps(result.details, indent=2, default=str))
    assert result.passed


def test_criterion_1_census_completeness(ctx):
    result = run_criterion("c1", ctx)
    _report(result, f"patterns={result.details['patterns']}")
    assert result.seconds < 60


def test_criterion_2_counting_oracle_equivalence(ctx):
    result = run_criterion("c2", ctx)
    _report(result, f"classes={result.details['classes_checked']}")


def test_criterion_3_sandwich_inequality(ctx):
    result = run_criterion("c3", ctx)
    _report(result, f"pairs={result.details['pairs_checked']}")
    assert result.seconds < 300


def test_criterion_4_pinned_values(ctx):
    result = run_criterion("c4", ctx)
    _report(result)


def test_criterion_5_spread_certificate(ctx):
    result = run_criterion("c5", ctx)
    _report(result, f"certificates={result.details['certificates']}")
    assert result.seconds < 60


def test_criterion_6_double_counting(ctx):
    result = run_criterion("c6", ctx)
    rates = [f"{c['pattern']}:{c['empirical_rate']:.4f}" for c in result.details["cases"]]
    _report(result, " ".join(rates))
    assert result.seconds < 30


def test_criterion_7_hamiltonian_scaling(ctx):
    result = run_criterion("c7", ctx)
    _report(result, f"band={result.details['band']} ratio={result.details['ratio']:.4f}")
    assert result.seconds < 600


def test_criterion_8_theorem1_desk_check(ctx):
    result = run_criterion("c8", ctx)
    _report(
        result,
        f"max_L_hat={result.details['max_L_hat']:.3f} bound={result.details['bound']}"
        f" worst={result.details['worst']['pattern']}@{result.details['worst']['n']}",
    )
    assert result.seconds < 1800


def test_criterion_9_separation_trend(ctx):
    result = run_criterion("c9", ctx)
    _report(
        result,
        f"ratio10={result.details['ratio_10']:.3f} ratio16={result.details['ratio_16']:.3f}",
    )
    assert result.seconds < 900


def test_criterion_10_first_moment(ctx):
    result = run_criterion("c10", ctx)
    _report(result, f"mean={result.details['empirical_mean']:.4f} expect 0.54")
    assert result.seconds < 60


def test_criterion_11_determinism(ctx):
    result = run_criterion("c11", ctx)
    _report(result, f"artifact_bytes={result.details['bytes']}")
