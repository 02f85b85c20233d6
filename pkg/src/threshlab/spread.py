"""R-spread verification for the uniform distribution over copies of a
pattern in K_n.

By double counting, the probability that a fixed labelled J_0 (a copy of
some J <= H) lies inside a uniform copy of H is M_{J,H} / M_J, so the
maximal R for which the distribution is R-spread is

    R* = exp( -max_J (log M_{J,H} - log M_J) / e(J) ),

computable class-wise from the census.  The certificate checks the
theorem-backed claim R = 1/(2 p~_E(H)) <= R*; Monte Carlo containment
rates provide the statistical cross-check of the double-counting ratio.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .census import SubgraphClass, copies_from_counts
from .errors import InfeasibleError, InputError
from .graphs import CanonicalForm, Graph, canonical_form, compact_rows
from .rng import CounterStream
from .thresholds import LN2, ThresholdReport, class_log_copies

STREAM_TAG_SPREAD = 11


@dataclass(frozen=True)
class SpreadMargin:
    subgraph: SubgraphClass
    log_ratio_over_e: float


@dataclass(frozen=True)
class SpreadCertificate:
    n: int
    pattern: CanonicalForm | None
    r_claimed: float
    r_star: float
    log_r_claimed: float
    log_r_star: float
    worst_classes: tuple[SpreadMargin, ...]
    passed: bool


def _spread_terms(census, n: int):
    terms = []
    for cls in census:
        log_copies = class_log_copies(cls, n)
        terms.append(
            SpreadMargin(cls, (math.log(cls.multiplicity) - log_copies) / cls.edge_count)
        )
    return terms


def max_spread(h_or_census, n: int, census=None) -> float:
    """Largest R such that the uniform copy distribution of H is R-spread."""
    census = _resolve_census(h_or_census, census, n)
    terms = _spread_terms(census, n)
    return math.exp(-max(t.log_ratio_over_e for t in terms))


def _resolve_census(h_or_census, census, n):
    if isinstance(h_or_census, Graph):
        if n < h_or_census.vertex_count:
            raise InfeasibleError(
                f"pattern needs {h_or_census.vertex_count} vertices, K_{n} has {n}"
            )
        if census is None:
            from .census import subgraph_census

            census = subgraph_census(h_or_census)
        return census
    return h_or_census


def verify_spread_certificate(
    h: Graph,
    n: int,
    report: ThresholdReport,
    census=None,
    *,
    slack: float = 1e-12,
    max_worst: int = 16,
) -> SpreadCertificate:
    """Certify R = 1/(2 p~_E(H)) against the exact R*.

    This inequality is theorem-backed: a failure signals an
    implementation bug, not a property of the input.
    """
    if report.n != n:
        raise InputError(f"threshold report is for n={report.n}, certificate for n={n}")
    h_canon = canonical_form(h)
    if report.pattern is not None and report.pattern != h_canon:
        raise InputError("threshold report pattern does not match certificate pattern")
    census = _resolve_census(h, census, n)
    terms = _spread_terms(census, n)
    log_r_star = -max(t.log_ratio_over_e for t in terms)
    log_r_claimed = -LN2 - report.log_p_modified
    worst = sorted(terms, key=lambda t: -t.log_ratio_over_e)
    cutoff = worst[0].log_ratio_over_e - 1e-12
    worst = [t for t in worst if t.log_ratio_over_e >= cutoff]
    worst.sort(key=lambda t: (t.subgraph.edge_count, t.subgraph.key_text()))
    return SpreadCertificate(
        n=n,
        pattern=h_canon,
        r_claimed=math.exp(log_r_claimed),
        r_star=math.exp(log_r_star),
        log_r_claimed=log_r_claimed,
        log_r_star=log_r_star,
        worst_classes=tuple(worst[:max_worst]),
        passed=log_r_claimed <= log_r_star + slack,
    )


def sample_copy_rows(h_rows, m: int, n: int, stream: CounterStream, sample_index: int):
    """Adjacency rows (in [n]) of a uniform copy of the pattern.

    Samples a uniformly random injection of the pattern's m vertices into
    [n]; each copy corresponds to exactly |Aut| injections, so copies are
    uniform with no rejection.
    """
    pool = list(range(n))
    image = [0] * m
    base = sample_index * m
    for t in range(m):
        u = stream.uniform(base + t)
        k = int(u * (n - t))
        if k >= n - t:
            k = n - t - 1
        image[t] = pool[k]
        pool[k] = pool[n - t - 1]
    rows = [0] * n
    for v in range(m):
        r = h_rows[v]
        while r:
            b = r & -r
            rows[image[v]] |= 1 << image[b.bit_length() - 1]
            r ^= b
    return rows


def empirical_containment_rate(
    h: Graph,
    n: int,
    j0: Graph,
    samples: int,
    seed: int = 0,
) -> tuple[float, float]:
    """Fraction of uniform copies of h in K_n containing every edge of the
    fixed labelled graph j0, with the binomial standard error."""
    if samples < 1:
        raise InputError("need at least one sample")
    h_rows, kept = compact_rows(h)
    m = len(kept)
    if m == 0:
        raise InputError("pattern has no edges")
    if m > n:
        raise InfeasibleError(f"pattern needs {m} vertices, K_{n} has {n}")
    if j0.order > n:
        raise InputError(f"fixed copy j0 lives on {j0.order} vertices but n={n}")
    j0_edges = j0.edges()
    if not j0_edges:
        raise InputError("j0 has no edges")
    stream = CounterStream(seed, STREAM_TAG_SPREAD)
    hits = 0
    for s in range(samples):
        rows = sample_copy_rows(h_rows, m, n, stream, s)
        ok = True
        for i, j in j0_edges:
            if not rows[i] >> j & 1:
                ok = False
                break
        hits += ok
    rate = hits / samples
    se = math.sqrt(rate * (1.0 - rate) / samples)
    return rate, se


def exact_containment_ratio(census, n: int, j_class: SubgraphClass) -> float:
    """M_{J,H} / M_J for a census class, the exact double-counting value."""
    copies = copies_from_counts(j_class.vertex_count, j_class.aut_count, n)
    return j_class.multiplicity / copies.exact


def consequence_rate(
    h: Graph,
    n: int,
    report: ThresholdReport,
    c: float,
    samples: int,
    seed: int = 0,
    oracle: str = "generic",
):
    """Reporting tool for the spread-lemma consequence: empirical
    P(G(n,p) contains H) at p = min(1, 2 c p~_E(H) max(1, log e(H))).

    The lemma's constant is not quantified, so this only reports the rate
    at a caller-chosen c; it asserts nothing.
    """
    from .mclab import containment_rate

    p = min(1.0, 2.0 * c * report.p_modified * max(1.0, math.log(h.edge_count)))
    rate, se = containment_rate(h, n, p, samples, seed, oracle=oracle)
    return p, rate, se
