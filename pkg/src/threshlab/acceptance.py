"""Acceptance criteria: every structural claim the package certifies,
runnable as one registry from the CLI (`threshlab verify`) or pytest.

Each criterion pins its tolerance here.  Two criteria compare against
calibration constants stored in golden files under golden/: the
Hamiltonian scaling band and the Theorem-1 ratio bound (initialized at
32).  A first run with no golden present performs the calibration and
writes the file; later runs compare against it.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field
from pathlib import Path

from .census import subgraph_census
from .errors import ThreshlabError
from .export import estimate_payload, render_json
from .families import (
    FamilySpec,
    analytic_census_cycle,
    cycle_threshold_report,
    make_family,
    matching_threshold_report,
)
from .graphs import Graph, count_embeddings
from .mclab import _sample_batch, estimate_pc, exact_pc
from .rng import CounterStream
from .spread import empirical_containment_rate, exact_containment_ratio, verify_spread_certificate
from .thresholds import compute_thresholds, compute_thresholds_from_census

GOLDEN_DIR = Path(__file__).parent / "golden"

THEOREM1_INITIAL_BOUND = 32.0


def corpus() -> list[tuple[str, Graph]]:
    """K_2..K_5, C_3..C_8, paths by edge count P_2..P_7, stars
    K_{1,3}..K_{1,5}, matchings 1K_2..4K_2, and the 3-cube Q_3."""
    out = []
    for k in range(2, 6):
        out.append((f"K_{k}", Graph.complete(k)))
    for n in range(3, 9):
        out.append((f"C_{n}", make_family(FamilySpec("cycle", n))))
    for ell in range(2, 8):
        out.append((f"P_{ell}", make_family(FamilySpec("path", ell))))
    for s in range(3, 6):
        out.append((f"K_1x{s}", make_family(FamilySpec("star", s))))
    for j in range(1, 5):
        out.append((f"{j}K_2", make_family(FamilySpec("matching", j))))
    cube_edges = []
    for v in range(8):
        for bit in (1, 2, 4):
            if v < v ^ bit:
                cube_edges.append((v, v ^ bit))
    out.append(("Q_3", Graph.from_edges(8, cube_edges)))
    return out


@dataclass
class CriterionResult:
    cid: str
    name: str
    passed: bool
    details: dict
    seconds: float


@dataclass
class AcceptanceContext:
    seed: int = 0
    threads: int = 1
    golden_dir: Path = GOLDEN_DIR
    cache: dict = field(default_factory=dict)

    def golden_path(self, name: str) -> Path:
        return Path(self.golden_dir) / f"{name}.json"

    def load_golden(self, name: str):
        path = self.golden_path(name)
        if path.exists():
            return json.loads(path.read_text())
        return None

    def write_golden(self, name: str, payload: dict):
        path = self.golden_path(name)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def _criterion_1(ctx: AcceptanceContext) -> dict:
    bad = []
    for name, g in corpus():
        total = sum(c.multiplicity for c in subgraph_census(g))
        if total != (1 << g.edge_count) - 1:
            bad.append({"pattern": name, "total": str(total)})
    return {"pass": not bad, "patterns": len(corpus()), "failures": bad}


def _criterion_2(ctx: AcceptanceContext) -> dict:
    bad = []
    checked = 0
    for name, g in corpus():
        for cls in subgraph_census(g):
            checked += 1
            if cls.multiplicity * cls.aut_count != count_embeddings(cls.representative, g):
                bad.append({"pattern": name, "class": cls.key_text()})
    return {"pass": not bad, "classes_checked": checked, "failures": bad}


def _criterion_3(ctx: AcceptanceContext) -> dict:
    bad = []
    rows = 0
    for name, g in corpus():
        v = g.vertex_count
        if v > 6:
            continue
        census = subgraph_census(g)
        for n in range(v, 7):
            report = compute_thresholds(g, n, census)
            pc = exact_pc(g, n).p_hat
            rows += 1
            if not (
                report.log_p_expectation <= report.log_p_modified
                and report.p_modified <= pc + 1e-9
            ):
                bad.append(
                    {
                        "pattern": name,
                        "n": n,
                        "p_E": report.p_expectation,
                        "p_tilde_E": report.p_modified,
                        "exact_pc": pc,
                    }
                )
    return {"pass": not bad, "pairs_checked": rows, "failures": bad}


def _criterion_4(ctx: AcceptanceContext) -> dict:
    k3 = Graph.complete(3)
    r5 = compute_thresholds(k3, 5)
    r3 = compute_thresholds(k3, 3)
    pc33 = exact_pc(k3, 3).p_hat
    target5 = (1.0 / 20.0) ** (1.0 / 3.0)
    target3 = 2.0 ** (-1.0 / 3.0)
    checks = {
        "p_E(K_3,5)": abs(r5.p_expectation - target5) <= 1e-12,
        "p_tilde_E(K_3,5)": abs(r5.p_modified - target5) <= 1e-12,
        "exact_pc(K_3,3)": abs(pc33 - target3) <= 1e-9,
        "p_tilde_E(K_3,3)": abs(r3.p_modified - target3) <= 1e-12,
    }
    return {
        "pass": all(checks.values()),
        "checks": checks,
        "values": {
            "p_tilde_E(K_3,5)": r5.p_modified,
            "exact_pc(K_3,3)": pc33,
            "p_tilde_E(K_3,3)": r3.p_modified,
        },
    }


def _criterion_5(ctx: AcceptanceContext) -> dict:
    bad = []
    certs = 0
    for name, g in corpus():
        census = subgraph_census(g)
        for n in range(g.vertex_count, 13):
            report = compute_thresholds(g, n, census)
            cert = verify_spread_certificate(g, n, report, census)
            certs += 1
            if not cert.passed:
                bad.append(
                    {"pattern": name, "n": n, "r_claimed": cert.r_claimed, "r_star": cert.r_star}
                )
    return {"pass": not bad, "certificates": certs, "failures": bad}


def _criterion_6(ctx: AcceptanceContext) -> dict:
    cases = [
        ("K_3", Graph.complete(3), Graph.from_edges(2, [(0, 1)]), 5),
        (
            "C_4",
            make_family(FamilySpec("cycle", 4)),
            Graph.from_edges(4, [(0, 1), (2, 3)]),
            4,
        ),
        (
            "C_5",
            make_family(FamilySpec("cycle", 5)),
            Graph.from_edges(3, [(0, 1), (1, 2)]),
            6,
        ),
    ]
    from .graphs import canonical_form

    samples = 10000
    results = []
    ok = True
    for idx, (name, h, j0, n) in enumerate(cases):
        j0_key = canonical_form(j0).key
        census = subgraph_census(h)
        j_class = next(c for c in census if c.canonical.key == j0_key)
        exact = exact_containment_ratio(census, n, j_class)
        rate, se = empirical_containment_rate(h, n, j0, samples, seed=ctx.seed + idx)
        # 3 standard errors, floored by the exact-ratio binomial spread
        bound = 3.0 * max(se, math.sqrt(exact * (1 - exact) / samples))
        hit = abs(rate - exact) <= bound
        ok = ok and hit
        results.append(
            {
                "pattern": name,
                "n": n,
                "exact_ratio": exact,
                "empirical_rate": rate,
                "three_se": bound,
                "pass": hit,
            }
        )
    return {"pass": ok, "cases": results}


def _criterion_7(ctx: AcceptanceContext) -> dict:
    n_values = [8, 16, 24, 32, 48, 64]
    table = {}
    for n in n_values:
        rep = cycle_threshold_report(n)
        table[n] = n * rep.p_modified
    # the reduced evaluator must match the materialized census where feasible
    agree = True
    for n in (8, 16, 24):
        census = analytic_census_cycle(n)
        full = compute_thresholds_from_census(
            census, n, pattern_edge_count=n, pattern_vertex_count=n
        )
        fast = cycle_threshold_report(n)
        if (
            abs(full.log_p_modified - fast.log_p_modified) > 1e-12
            or abs(full.log_p_expectation - fast.log_p_expectation) > 1e-12
        ):
            agree = False
    band_min = min(table.values())
    band_max = max(table.values())
    ratio = band_max / band_min
    passed = agree and ratio <= 4.0
    golden = ctx.load_golden("hamiltonian_band")
    golden_ok = True
    if golden is None:
        if passed:
            ctx.write_golden(
                "hamiltonian_band",
                {
                    "n_values": n_values,
                    "n_p_tilde": {str(n): table[n] for n in n_values},
                    "band_min": band_min,
                    "band_max": band_max,
                    "ratio": ratio,
                },
            )
    else:
        for n in n_values:
            ref = golden["n_p_tilde"][str(n)]
            if abs(table[n] - ref) > 1e-9 * max(1.0, abs(ref)):
                golden_ok = False
    return {
        "pass": passed and golden_ok,
        "n_p_tilde": {str(n): table[n] for n in n_values},
        "band": [band_min, band_max],
        "ratio": ratio,
        "census_agreement": agree,
        "golden_match": golden_ok,
    }


def _c8_jobs():
    jobs = []
    for name, g in corpus():
        if g.edge_count < 2:
            continue
        for n in (8, 10, 12):
            if g.vertex_count <= n:
                jobs.append((name, g, n, "generic"))
    for n in (10, 12, 14, 16):
        jobs.append((f"C_{n}", make_family(FamilySpec("cycle", n)), n, "hamiltonian_cycle"))
        jobs.append(
            (f"{n // 2}K_2", make_family(FamilySpec("matching", n // 2)), n, "perfect_matching")
        )
    return jobs


def _c8_artifact(ctx: AcceptanceContext, threads: int) -> str:
    rows = []
    max_l = 0.0
    for idx, (name, g, n, oracle) in enumerate(_c8_jobs()):
        if oracle == "hamiltonian_cycle":
            report = cycle_threshold_report(g.order, n)
        elif oracle == "perfect_matching":
            report = matching_threshold_report(g.edge_count, n)
        else:
            report = compute_thresholds(g, n)
        est = estimate_pc(
            g,
            n,
            samples_per_probe=2000,
            tol=5e-3,
            seed=ctx.seed + 1000 + idx,
            oracle=oracle,
            threads=threads,
        )
        denom = report.p_modified * max(1.0, math.log(g.edge_count))
        l_hat = est.ci_high / denom
        max_l = max(max_l, l_hat)
        rows.append(
            {
                "pattern": name,
                "n": n,
                "oracle": oracle,
                "p_tilde_E": report.p_modified,
                "L_hat": l_hat,
                "estimate": estimate_payload(est, pattern_text=name),
            }
        )
    return render_json({"seed": ctx.seed, "max_L_hat": max_l, "jobs": rows})


def _criterion_8(ctx: AcceptanceContext) -> dict:
    artifact = ctx.cache.get("c8_artifact")
    if artifact is None:
        artifact = _c8_artifact(ctx, ctx.threads)
        ctx.cache["c8_artifact"] = artifact
    payload = json.loads(artifact)
    max_l = payload["max_L_hat"]
    golden = ctx.load_golden("theorem1_constant")
    if golden is None:
        bound = THEOREM1_INITIAL_BOUND
        if max_l <= bound:
            ctx.write_golden(
                "theorem1_constant",
                {
                    "frozen_bound": round(max_l * 1.25, 2),
                    "observed_max_L_hat": max_l,
                    "seed": ctx.seed,
                    "initial_bound": THEOREM1_INITIAL_BOUND,
                },
            )
    else:
        bound = golden["frozen_bound"]
    worst = max(payload["jobs"], key=lambda r: r["L_hat"])
    return {
        "pass": max_l <= bound,
        "max_L_hat": max_l,
        "bound": bound,
        "jobs": len(payload["jobs"]),
        "worst": {k: worst[k] for k in ("pattern", "n", "L_hat")},
    }


def _criterion_9(ctx: AcceptanceContext) -> dict:
    c10 = make_family(FamilySpec("cycle", 10))
    c16 = make_family(FamilySpec("cycle", 16))
    pm10 = cycle_threshold_report(10).p_modified
    pm16 = cycle_threshold_report(16).p_modified

    def attempt(samples, cap):
        e10 = estimate_pc(
            c10, 10, samples_per_probe=samples, seed=ctx.seed + 91, sample_cap=cap,
            oracle="hamiltonian_cycle", threads=ctx.threads,
        )
        e16 = estimate_pc(
            c16, 16, samples_per_probe=samples, seed=ctx.seed + 92, sample_cap=cap,
            oracle="hamiltonian_cycle", threads=ctx.threads,
        )
        return e10, e16, e16.ci_low / pm16 > e10.ci_high / pm10

    e10, e16, ok = attempt(2000, 32000)
    reran = False
    if not ok:
        reran = True
        e10, e16, ok = attempt(8000, 128000)
    return {
        "pass": ok,
        "ratio_10": e10.p_hat / pm10,
        "ratio_16": e16.p_hat / pm16,
        "ratio_10_ci_high": e10.ci_high / pm10,
        "ratio_16_ci_low": e16.ci_low / pm16,
        "reran_at_4x": reran,
    }


def _criterion_10(ctx: AcceptanceContext) -> dict:
    k3 = Graph.complete(3)
    n, p, samples = 6, 0.3, 100000
    expected = 20 * p**3
    stream = CounterStream(ctx.seed, 1010)
    total = 0
    total_sq = 0
    batch = 5000
    done = 0
    while done < samples:
        for host in _sample_batch(n, p, stream, done, batch):
            z = count_embeddings(k3, host) // 6
            total += z
            total_sq += z * z
        done += batch
    mean = total / samples
    var = total_sq / samples - mean * mean
    sigma = math.sqrt(max(var, 0.0) / samples)
    ok = abs(mean - expected) <= 3.0 * sigma
    return {
        "pass": ok,
        "empirical_mean": mean,
        "expected": expected,
        "three_sigma": 3.0 * sigma,
        "samples": samples,
    }


def _criterion_11(ctx: AcceptanceContext) -> dict:
    base = ctx.cache.get("c8_artifact")
    if base is None:
        base = _c8_artifact(ctx, ctx.threads)
        ctx.cache["c8_artifact"] = base
    other_threads = 2 if ctx.threads != 2 else 4
    rerun = _c8_artifact(ctx, other_threads)
    ok = base == rerun
    return {
        "pass": ok,
        "threads_base": ctx.threads,
        "threads_rerun": other_threads,
        "bytes": len(base.encode()),
    }


CRITERIA = [
    ("c1", "census-completeness", _criterion_1),
    ("c2", "counting-oracle-equivalence", _criterion_2),
    ("c3", "sandwich-inequality", _criterion_3),
    ("c4", "pinned-values", _criterion_4),
    ("c5", "spread-certificate", _criterion_5),
    ("c6", "double-counting-identity", _criterion_6),
    ("c7", "hamiltonian-scaling", _criterion_7),
    ("c8", "theorem1-desk-check", _criterion_8),
    ("c9", "separation-trend", _criterion_9),
    ("c10", "first-moment-identity", _criterion_10),
    ("c11", "determinism", _criterion_11),
]

SUITES = {
    "fast": ["c1", "c2", "c4", "c5", "c6", "c10"],
    "sandwich": ["c3"],
    "scaling": ["c7"],
    "mc": ["c8", "c9", "c11"],
    "all": [cid for cid, _, _ in CRITERIA],
}


def run_criterion(cid: str, ctx: AcceptanceContext) -> CriterionResult:
    entry = next((c for c in CRITERIA if c[0] == cid), None)
    if entry is None:
        raise ThreshlabError(f"unknown criterion {cid!r}")
    cid, name, func = entry
    start = time.monotonic()
    details = func(ctx)
    elapsed = time.monotonic() - start
    passed = bool(details.pop("pass"))
    return CriterionResult(cid, name, passed, details, elapsed)


def run_suite(suite: str, seed: int = 0, threads: int = 1, out=None, ctx=None) -> list[CriterionResult]:
    if ctx is None:
        ctx = AcceptanceContext(seed=seed, threads=threads)
    if suite in SUITES:
        cids = SUITES[suite]
    elif any(suite == cid for cid, _, _ in CRITERIA):
        cids = [suite]
    else:
        from .errors import InputError

        raise InputError(
            f"unknown suite {suite!r}; choose one of {sorted(SUITES)} or c1..c11"
        )
    results = []
    for cid in cids:
        result = run_criterion(cid, ctx)
        results.append(result)
        if out is not None:
            status = "PASS" if result.passed else "FAIL"
            out.write(f"{status} {result.cid} {result.name} ({result.seconds:.1f}s)\n")
            out.flush()
    return results
