"""Expectation thresholds of a pattern graph in G(n,p).

For a pattern H with exhaustive census {H'}, the two thresholds are the
closed-form maxima

    p_E(H)  = max_{H'} (1 / (2 M_{H'}))^{1/e(H')}
    p~_E(H) = max_{H'} (M_{H',H} / (2 M_{H'}))^{1/e(H')}

where M_{H'} is the copy count of H' in K_n.  All comparisons happen in
log domain on the exact-integer-backed counts; classes within a tie
tolerance of the max are reported as witnesses.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .census import SubgraphClass, copies_from_counts, subgraph_census
from .errors import InfeasibleError, InputError
from .graphs import CanonicalForm, Graph, canonical_form

LN2 = math.log(2.0)

TIE_TOL = 1e-12


@dataclass(frozen=True)
class Witness:
    subgraph: SubgraphClass
    log_value: float


@dataclass(frozen=True)
class ThresholdReport:
    """p_E and p~_E for (pattern, n), log-domain primary, with argmax witnesses."""

    n: int
    pattern: CanonicalForm | None
    pattern_edge_count: int
    log_p_expectation: float
    log_p_modified: float
    witnesses_expectation: tuple[Witness, ...]
    witnesses_modified: tuple[Witness, ...]
    tie_count_expectation: int
    tie_count_modified: int

    @property
    def p_expectation(self) -> float:
        return math.exp(self.log_p_expectation)

    @property
    def p_modified(self) -> float:
        return math.exp(self.log_p_modified)


def class_log_copies(cls: SubgraphClass, n: int) -> float:
    count = copies_from_counts(cls.vertex_count, cls.aut_count, n)
    return count.log_value


def expectation_value(cls: SubgraphClass, n: int, p: float) -> float:
    """log E_p Z_{H'} = log M_{H'} + e(H') log p."""
    if not 0.0 < p <= 1.0:
        raise InputError(f"probability {p} outside (0, 1]")
    return class_log_copies(cls, n) + cls.edge_count * math.log(p)


def _collect(terms, tie_tol, max_witnesses):
    best = max(v for _, v in terms)
    tied = [(cls, v) for cls, v in terms if best - v <= tie_tol]
    tied.sort(key=lambda t: (t[0].edge_count, t[0].key_text()))
    witnesses = tuple(Witness(cls, v) for cls, v in tied[:max_witnesses])
    return best, witnesses, len(tied)


def compute_thresholds_from_census(
    census,
    n: int,
    *,
    pattern_canonical: CanonicalForm | None = None,
    pattern_edge_count: int | None = None,
    pattern_vertex_count: int | None = None,
    tie_tol: float = TIE_TOL,
    max_witnesses: int = 64,
) -> ThresholdReport:
    """Threshold maxima over an explicit class list (census of the pattern)."""
    if not census:
        raise InputError("empty census")
    e_top = pattern_edge_count
    v_top = pattern_vertex_count
    if e_top is None:
        e_top = max(c.edge_count for c in census)
    if v_top is None:
        v_top = max(c.vertex_count for c in census)
    if n < v_top:
        raise InfeasibleError(
            f"pattern needs {v_top} vertices but K_{n} provides only {n}: "
            "it cannot appear at all"
        )
    terms_e = []
    terms_m = []
    for cls in census:
        if cls.edge_count < 1:
            raise InputError("census contains an empty subgraph class")
        log_copies = class_log_copies(cls, n)
        inv_e = 1.0 / cls.edge_count
        terms_e.append((cls, (-LN2 - log_copies) * inv_e))
        terms_m.append((cls, (math.log(cls.multiplicity) - LN2 - log_copies) * inv_e))
    log_pe, wit_e, ties_e = _collect(terms_e, tie_tol, max_witnesses)
    log_pm, wit_m, ties_m = _collect(terms_m, tie_tol, max_witnesses)
    return ThresholdReport(
        n=n,
        pattern=pattern_canonical,
        pattern_edge_count=e_top,
        log_p_expectation=log_pe,
        log_p_modified=log_pm,
        witnesses_expectation=wit_e,
        witnesses_modified=wit_m,
        tie_count_expectation=ties_e,
        tie_count_modified=ties_m,
    )


def compute_thresholds(
    h: Graph,
    n: int,
    census=None,
    *,
    tie_tol: float = TIE_TOL,
    max_witnesses: int = 64,
) -> ThresholdReport:
    """p_E(H) and p~_E(H) at ambient order n, from the exhaustive census."""
    if census is None:
        census = subgraph_census(h)
    return compute_thresholds_from_census(
        census,
        n,
        pattern_canonical=canonical_form(h),
        pattern_edge_count=h.edge_count,
        pattern_vertex_count=h.vertex_count,
        tie_tol=tie_tol,
        max_witnesses=max_witnesses,
    )


def generalized_log_threshold(census, n: int, constant: float = 0.5, modified: bool = True) -> float:
    """Exploration entry point: smallest log p with E_p Z_{H'} >= constant * M_{H',H}
    (or >= constant when modified=False) for every class.

    The acceptance thresholds always use constant = 1/2; this is not part
    of any acceptance run.
    """
    if constant <= 0:
        raise InputError("threshold constant must be positive")
    best = None
    for cls in census:
        log_copies = class_log_copies(cls, n)
        mult_term = math.log(cls.multiplicity) if modified else 0.0
        val = (math.log(constant) + mult_term - log_copies) / cls.edge_count
        if best is None or val > best:
            best = val
    return best
