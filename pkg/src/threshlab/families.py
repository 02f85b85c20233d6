"""Structured pattern families and their analytic censuses.

Every nonempty edge subset of the cycle C_n is a disjoint union of paths,
so its isomorphism classes are the partitions lam = (l_1 >= ... >= l_m)
of e into path edge-lengths with m <= n - e placement room, plus the full
cycle.  Placing m disjoint arcs with those lengths on a labelled n-cycle
has exactly

    M_{lam, C_n} = (n / m) * (m! / prod_l mult_l!) * C(n-e-1, m-1)

solutions (anchor a distinguished run, count arrangements and gap
compositions, divide by the m choices of anchor), and

    |Aut(lam)| = 2^m * prod_l mult_l!,    v(lam) = e + m.

For threshold maxima the shape factor prod mult_l! cancels from the
modified ratio M_{lam,H}/M_lam, so p~_E terms depend only on (e, m); the
p_E term within (e, m) is extremal for the shape of maximal automorphism
product (all parts equal when m | e, else one long part plus singletons).
Both reductions are cross-checked against the exhaustive census in tests.

Subgraphs of the matching kK_2 are jK_2 with multiplicity C(k, j),
|Aut| = 2^j j!.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .census import SubgraphClass, falling_factorial
from .errors import CapacityError, InfeasibleError, InputError
from .graphs import MAX_ORDER, Graph, canonical_form
from .thresholds import (
    LN2,
    TIE_TOL,
    ThresholdReport,
    Witness,
    compute_thresholds_from_census,
)

FAMILY_KINDS = ("cycle", "matching", "clique", "path", "star")

ANALYTIC_CYCLE_CAP = 256
ANALYTIC_MATCHING_CAP = 128

# Largest class size whose representative gets a true canonical key; small
# enough that highly symmetric unions stay cheap to canonicalize.
CANONICAL_SIZE_CAP = 12


@dataclass(frozen=True)
class FamilySpec:
    """kind + size parameter: cycle length, matching edges, clique order,
    path edges, or star leaves."""

    kind: str
    param: int

    def __post_init__(self):
        if self.kind not in FAMILY_KINDS:
            raise InputError(f"unknown family kind {self.kind!r}; choose {FAMILY_KINDS}")
        minimum = {"cycle": 3, "matching": 1, "clique": 2, "path": 1, "star": 1}[self.kind]
        if self.param < minimum:
            raise InputError(f"{self.kind} family needs parameter >= {minimum}")


def make_family(spec: FamilySpec) -> Graph:
    """The labelled standard representative (cycle 0-1-...-(n-1)-0, etc.)."""
    kind, k = spec.kind, spec.param
    if kind == "cycle":
        if k > MAX_ORDER:
            raise CapacityError(f"concrete cycle needs {k} vertices (cap {MAX_ORDER})")
        return Graph.from_edges(k, [(v, (v + 1) % k) for v in range(k)])
    if kind == "matching":
        if 2 * k > MAX_ORDER:
            raise CapacityError(f"concrete matching needs {2 * k} vertices (cap {MAX_ORDER})")
        return Graph.from_edges(2 * k, [(2 * j, 2 * j + 1) for j in range(k)])
    if kind == "clique":
        if k > MAX_ORDER:
            raise CapacityError(f"concrete clique needs {k} vertices (cap {MAX_ORDER})")
        return Graph.complete(k)
    if kind == "path":
        if k + 1 > MAX_ORDER:
            raise CapacityError(f"concrete path needs {k + 1} vertices (cap {MAX_ORDER})")
        return Graph.from_edges(k + 1, [(v, v + 1) for v in range(k)])
    if k + 1 > MAX_ORDER:
        raise CapacityError(f"concrete star needs {k + 1} vertices (cap {MAX_ORDER})")
    return Graph.from_edges(k + 1, [(0, leaf) for leaf in range(1, k + 1)])


def _partitions(total: int, max_parts: int):
    """Partitions of `total` into at most `max_parts` parts, nonincreasing."""

    def rec(remaining, largest, parts_left, prefix):
        if remaining == 0:
            yield tuple(prefix)
            return
        if parts_left == 0:
            return
        top = min(largest, remaining)
        # each remaining part is at most `top`; need enough room
        for part in range(top, 0, -1):
            if part * parts_left < remaining:
                break
            prefix.append(part)
            yield from rec(remaining - part, part, parts_left - 1, prefix)
            prefix.pop()

    yield from rec(total, total, max_parts, [])


def _path_union_rep(lengths) -> Graph:
    edges = []
    base = 0
    for ell in lengths:
        edges += [(base + t, base + t + 1) for t in range(ell)]
        base += ell + 1
    return Graph.from_edges(base, edges)


def _path_union_aut(lengths) -> int:
    mults = {}
    for ell in lengths:
        mults[ell] = mults.get(ell, 0) + 1
    aut = 1
    for c in mults.values():
        aut *= math.factorial(c) << c
    return aut


def _cycle_class(n: int, lengths: tuple[int, ...], build_rep: bool = True) -> SubgraphClass:
    e = sum(lengths)
    m = len(lengths)
    arrangements = math.factorial(m)
    for ell in set(lengths):
        arrangements //= math.factorial(lengths.count(ell))
    num = n * arrangements * math.comb(n - e - 1, m - 1)
    mult, rem = divmod(num, m)
    if rem:
        raise InputError("cyclic composition count is not integral; formula misuse")
    v = e + m
    rep = _path_union_rep(lengths) if build_rep and v <= MAX_ORDER else None
    canon = canonical_form(rep) if rep is not None and v <= CANONICAL_SIZE_CAP else None
    return SubgraphClass(
        edge_count=e,
        vertex_count=v,
        multiplicity=mult,
        aut_count=_path_union_aut(lengths),
        representative=rep,
        canonical=canon,
        label="paths:" + "+".join(str(ell) for ell in lengths),
    )


def _full_cycle_class(n: int) -> SubgraphClass:
    rep = make_family(FamilySpec("cycle", n)) if n <= MAX_ORDER else None
    canon = canonical_form(rep) if rep is not None and n <= CANONICAL_SIZE_CAP else None
    return SubgraphClass(
        edge_count=n,
        vertex_count=n,
        multiplicity=1,
        aut_count=2 * n,
        representative=rep,
        canonical=canon,
        label=f"cycle:{n}",
    )


def iter_cycle_census(n: int, with_representatives: bool | None = None):
    """Stream the analytic census of C_n without materializing the list."""
    if not 3 <= n <= ANALYTIC_CYCLE_CAP:
        raise CapacityError(f"analytic cycle census supports 3 <= n <= {ANALYTIC_CYCLE_CAP}")
    if with_representatives is None:
        with_representatives = n <= 48  # ~p(n) classes; keep memory bounded
    for e in range(1, n):
        for lengths in _partitions(e, n - e):
            yield _cycle_class(n, lengths, build_rep=with_representatives)
    yield _full_cycle_class(n)


def analytic_census_cycle(
    n: int, with_representatives: bool | None = None
) -> tuple[SubgraphClass, ...]:
    """All subgraph classes of C_n with exact multiplicities.

    Matches subgraph_census(C_n) class-by-class for n <= 12.  The class
    count equals the partition number p(n), so the list is desk-feasible
    through n ~ 64 and representatives are skipped by default beyond
    n = 48; iter_cycle_census and cycle_threshold_report avoid the list
    entirely for threshold work at large n.
    """
    classes = list(iter_cycle_census(n, with_representatives))
    classes.sort(key=_census_sort_key)
    return tuple(classes)


def _census_sort_key(cls: SubgraphClass):
    if cls.canonical is not None:
        return (cls.edge_count, 0, cls.canonical.key, "")
    return (cls.edge_count, 1, b"", cls.label or "")


def cycle_subset_total(n: int) -> int:
    """Sum of all class multiplicities of C_n in closed form (O(n^2) terms);
    equals 2^n - 1 exactly."""
    if not 3 <= n <= ANALYTIC_CYCLE_CAP:
        raise CapacityError(f"analytic cycle census supports 3 <= n <= {ANALYTIC_CYCLE_CAP}")
    total = 1  # full cycle
    for e in range(1, n):
        for m in range(1, min(e, n - e) + 1):
            num = n * math.comb(e - 1, m - 1) * math.comb(n - e - 1, m - 1)
            q, r = divmod(num, m)
            if r:
                raise InputError("cyclic composition total is not integral")
            total += q
    return total


def analytic_census_matching(k: int) -> tuple[SubgraphClass, ...]:
    """Subgraph classes of kK_2: jK_2 with multiplicity C(k, j)."""
    if not 1 <= k <= ANALYTIC_MATCHING_CAP:
        raise CapacityError(f"analytic matching census supports 1 <= k <= {ANALYTIC_MATCHING_CAP}")
    classes = []
    for j in range(1, k + 1):
        rep = make_family(FamilySpec("matching", j)) if 2 * j <= MAX_ORDER else None
        canon = canonical_form(rep) if rep is not None and 2 * j <= CANONICAL_SIZE_CAP else None
        classes.append(
            SubgraphClass(
                edge_count=j,
                vertex_count=2 * j,
                multiplicity=math.comb(k, j),
                aut_count=math.factorial(j) << j,
                representative=rep,
                canonical=canon,
                label=f"matching:{j}",
            )
        )
    return tuple(classes)


@lru_cache(maxsize=None)
def _partition_count(e: int, m: int) -> int:
    """Number of partitions of e into exactly m parts."""
    if m <= 0 or e < m:
        return 0
    if m == e or m == 1:
        return 1
    return _partition_count(e - 1, m - 1) + _partition_count(e - m, m)


def _max_aut_product(e: int, m: int) -> int:
    # max over partitions of e into m parts of prod mult_l!: all parts equal
    # when m divides e, otherwise one long part plus m-1 singletons.
    return math.factorial(m) if e % m == 0 else math.factorial(m - 1)


def _max_aut_lengths(e: int, m: int) -> tuple[int, ...]:
    if e % m == 0:
        return tuple([e // m] * m)
    return tuple([e - m + 1] + [1] * (m - 1))


def _balanced_lengths(e: int, m: int) -> tuple[int, ...]:
    q, r = divmod(e, m)
    return tuple([q + 1] * r + [q] * (m - r))


def cycle_threshold_report(
    cycle_n: int,
    ambient_n: int | None = None,
    *,
    tie_tol: float = TIE_TOL,
    max_witnesses: int = 64,
) -> ThresholdReport:
    """Exact thresholds of C_n from the analytic census, without
    materializing the class list.

    Group reduction: within an (e, m) group every partition shares the
    modified term, and the expectation term is maximal at the
    max-automorphism shape; agrees with compute_thresholds over the full
    census (tested at small n).
    """
    if not 3 <= cycle_n <= ANALYTIC_CYCLE_CAP:
        raise CapacityError(f"analytic cycle census supports 3 <= n <= {ANALYTIC_CYCLE_CAP}")
    n = cycle_n if ambient_n is None else ambient_n
    if n < cycle_n:
        raise InfeasibleError(f"C_{cycle_n} cannot appear in K_{n}")
    log_ff = {}

    def lff(v: int) -> float:
        val = log_ff.get(v)
        if val is None:
            val = math.log(falling_factorial(n, v))
            log_ff[v] = val
        return val

    terms_e = []  # (log value, e, m, lengths for witness, tie-class count)
    terms_m = []
    for e in range(1, cycle_n):
        inv_e = 1.0 / e
        for m in range(1, min(e, cycle_n - e) + 1):
            v = e + m
            group_classes = _partition_count(e, m)
            ratio_num = cycle_n * math.factorial(m - 1) * (1 << m) * math.comb(
                cycle_n - e - 1, m - 1
            )
            t_mod = (math.log(ratio_num) - lff(v) - LN2) * inv_e
            terms_m.append((t_mod, e, m, _balanced_lengths(e, m), group_classes))
            aut_max = _max_aut_product(e, m) << m
            t_exp = (math.log(aut_max) - LN2 - lff(v)) * inv_e
            terms_e.append((t_exp, e, m, _max_aut_lengths(e, m), 1))
    t_full = (-LN2 + math.log(2 * cycle_n) - lff(cycle_n)) / cycle_n
    full_cls = _full_cycle_class(cycle_n)
    terms_e.append((t_full, cycle_n, 0, None, 1))
    terms_m.append((t_full, cycle_n, 0, None, 1))

    def collect(terms):
        best = max(t[0] for t in terms)
        tied = [t for t in terms if best - t[0] <= tie_tol]
        tied.sort(key=lambda t: (t[1], t[2]))
        witnesses = []
        ties = 0
        for val, e, m, lengths, group in tied:
            ties += group
            if len(witnesses) < max_witnesses:
                cls = full_cls if lengths is None else _cycle_class(cycle_n, lengths)
                witnesses.append(Witness(cls, val))
        return best, tuple(witnesses), ties

    log_pe, wit_e, ties_e = collect(terms_e)
    log_pm, wit_m, ties_m = collect(terms_m)
    pattern = full_cls.canonical
    return ThresholdReport(
        n=n,
        pattern=pattern,
        pattern_edge_count=cycle_n,
        log_p_expectation=log_pe,
        log_p_modified=log_pm,
        witnesses_expectation=wit_e,
        witnesses_modified=wit_m,
        tie_count_expectation=ties_e,
        tie_count_modified=ties_m,
    )


def matching_threshold_report(k: int, ambient_n: int, **kwargs) -> ThresholdReport:
    """Thresholds of the matching kK_2 at ambient order n."""
    census = analytic_census_matching(k)
    return compute_thresholds_from_census(
        census,
        ambient_n,
        pattern_edge_count=k,
        pattern_vertex_count=2 * k,
        **kwargs,
    )


@dataclass(frozen=True)
class ScalingRow:
    n: int
    label: str
    edge_count: int | None
    log_p_expectation: float | None
    log_p_modified: float | None
    p_expectation: float | None
    p_modified: float | None
    n_p_modified: float | None
    pc: object | None
    pc_n_over_log_n: float | None
    pc_over_modified_log_e: float | None
    note: str | None = None


def _row_pattern(kind: str, n: int, param: int | None):
    if kind == "cycle":
        size = param if param is not None else n
        return FamilySpec("cycle", size), f"C_{size}"
    if kind == "matching":
        if param is not None:
            size = param
        else:
            if n % 2:
                raise InputError(f"perfect matching needs even n, got {n}")
            size = n // 2
        return FamilySpec("matching", size), f"{size}K_2"
    if param is None:
        raise InputError(f"{kind} family needs an explicit --param")
    prefix = {"clique": "K", "path": "P", "star": "K_1x"}[kind]
    return FamilySpec(kind, param), f"{prefix}_{param}"


def _default_oracle(kind: str) -> str:
    return {
        "cycle": "hamiltonian_cycle",
        "matching": "perfect_matching",
        "clique": "clique",
        "path": "generic",
        "star": "generic",
    }[kind]


def scaling_table(
    kind: str,
    n_values,
    with_pc: bool = False,
    *,
    param: int | None = None,
    samples_per_probe: int = 2000,
    tol: float = 5e-3,
    seed: int = 0,
    sample_cap: int = 32000,
    threads: int = 1,
    oracle: str | None = None,
) -> list[ScalingRow]:
    """Threshold (and optionally p_c) scaling rows for a family.

    With no explicit param, cycle rows use the Hamiltonian cycle C_n and
    matching rows the perfect matching (n/2)K_2, tracking the ambient
    order.  Capacity problems mark the affected cell and keep the row.
    """
    if kind not in FAMILY_KINDS:
        raise InputError(f"unknown family kind {kind!r}; choose {FAMILY_KINDS}")
    if kind in ("clique", "path", "star") and param is None:
        raise InputError(f"{kind} family needs an explicit param")
    from .census import subgraph_census
    from .mclab import estimate_pc
    from .thresholds import compute_thresholds

    rows = []
    for n in n_values:
        try:
            spec, label = _row_pattern(kind, n, param)
            if kind == "cycle":
                report = cycle_threshold_report(spec.param, n)
            elif kind == "matching":
                report = matching_threshold_report(spec.param, n)
            else:
                pattern = make_family(spec)
                report = compute_thresholds(pattern, n, subgraph_census(pattern))
        except (CapacityError, InputError) as exc:
            rows.append(
                ScalingRow(n, f"{kind}", None, None, None, None, None, None, None, None, None, str(exc))
            )
            continue
        e = report.pattern_edge_count
        pm = report.p_modified
        pc = None
        note = None
        pc_scaled = None
        pc_ratio = None
        if with_pc:
            try:
                pattern = make_family(spec)
                pc = estimate_pc(
                    pattern,
                    n,
                    samples_per_probe=samples_per_probe,
                    tol=tol,
                    seed=seed,
                    oracle=oracle or _default_oracle(kind),
                    sample_cap=sample_cap,
                    threads=threads,
                )
                pc_scaled = pc.p_hat * n / math.log(n)
                pc_ratio = pc.p_hat / (pm * max(1.0, math.log(e)))
            except (CapacityError, InputError) as exc:
                note = f"p_c unavailable: {exc}"
        rows.append(
            ScalingRow(
                n=n,
                label=label,
                edge_count=e,
                log_p_expectation=report.log_p_expectation,
                log_p_modified=report.log_p_modified,
                p_expectation=report.p_expectation,
                p_modified=pm,
                n_p_modified=n * pm,
                pc=pc,
                pc_n_over_log_n=pc_scaled,
                pc_over_modified_log_e=pc_ratio,
                note=note,
            )
        )
    return rows
