"""Exact census of nonempty edge-induced subgraphs, grouped by
isomorphism class, plus copy counts in the complete graph.

The census enumerates all 2^e(H) - 1 nonempty edge subsets of H and
aggregates them by canonical form, so multiplicities M_{H',H} are exact
by construction and sum to 2^e(H) - 1.  Copy counts in K_n are
M_{H'} = n(n-1)...(n-v+1) / |Aut(H')|, kept as arbitrary-precision
integers with a mirrored natural log for threshold arithmetic.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

from .errors import CapacityError, InputError
from .graphs import (
    CanonicalForm,
    Graph,
    automorphism_count,
    canonical_key_of_rows,
    rows_connected,
)

DEFAULT_EDGE_CAP = 24

NEG_INF = float("-inf")


@dataclass(frozen=True)
class LogScaledCount:
    """Exact nonnegative integer with a float natural-log mirror."""

    exact: int
    log_value: float

    @classmethod
    def of(cls, exact: int) -> "LogScaledCount":
        if exact < 0:
            raise InputError("LogScaledCount requires a nonnegative integer")
        return cls(exact, math.log(exact) if exact > 0 else NEG_INF)


@dataclass(frozen=True)
class SubgraphClass:
    """One isomorphism class of nonempty edge subsets of a pattern H.

    representative is a compact (isolated-vertex-free) graph, or None for
    analytic classes too large to build concretely; canonical is likewise
    optional for analytic classes, with `label` as a structural stand-in.
    """

    edge_count: int
    vertex_count: int
    multiplicity: int
    aut_count: int
    representative: Graph | None = None
    canonical: CanonicalForm | None = None
    label: str | None = None

    def key_text(self) -> str:
        if self.canonical is not None:
            return self.canonical.key.hex()
        return f"analytic:{self.label}"


def falling_factorial(n: int, k: int) -> int:
    if k < 0:
        raise InputError("falling factorial needs k >= 0")
    if k > n:
        return 0
    out = 1
    for t in range(n, n - k, -1):
        out *= t
    return out


def copies_from_counts(vertex_count: int, aut_count: int, n: int) -> LogScaledCount:
    """M_{H'} = (n)_{v(H')} / |Aut(H')| from the two class statistics."""
    ff = falling_factorial(n, vertex_count)
    if ff == 0:
        return LogScaledCount.of(0)
    exact, rem = divmod(ff, aut_count)
    if rem:
        raise InputError("automorphism count does not divide the embedding count")
    return LogScaledCount.of(exact)


def copies_in_complete(pattern: Graph, n: int) -> LogScaledCount:
    """Number of copies of `pattern` in K_n (0 when v(pattern) > n)."""
    for v in range(pattern.order):
        if pattern.rows[v] == 0:
            raise InputError("copies_in_complete requires no isolated vertices")
    return copies_from_counts(pattern.order, automorphism_count(pattern), n)


def _census_chunk(host_edges, order, lo, hi, connected_only, memo):
    acc = {}
    for mask in range(lo, hi):
        kept_vertices = 0
        t = mask
        while t:
            b = t & -t
            i, j = host_edges[b.bit_length() - 1]
            kept_vertices |= (1 << i) | (1 << j)
            t ^= b
        pos = {}
        idx = 0
        kv = kept_vertices
        while kv:
            b = kv & -kv
            pos[b.bit_length() - 1] = idx
            idx += 1
            kv ^= b
        rows = [0] * idx
        t = mask
        while t:
            b = t & -t
            i, j = host_edges[b.bit_length() - 1]
            rows[pos[i]] |= 1 << pos[j]
            rows[pos[j]] |= 1 << pos[i]
            t ^= b
        rows = tuple(rows)
        if connected_only and not rows_connected(rows, idx):
            continue
        key = memo.get(rows)
        if key is None:
            key = canonical_key_of_rows(rows, idx)
            memo[rows] = key
        entry = acc.get(key)
        if entry is None:
            acc[key] = [1, mask, rows]
        else:
            entry[0] += 1
            if mask < entry[1]:
                entry[1] = mask
                entry[2] = rows
    return acc


def _merge(accs):
    total = {}
    for acc in accs:
        for key, (mult, mask, rows) in acc.items():
            entry = total.get(key)
            if entry is None:
                total[key] = [mult, mask, rows]
            else:
                entry[0] += mult
                if mask < entry[1]:
                    entry[1] = mask
                    entry[2] = rows
    return total


@lru_cache(maxsize=256)
def _census_cached(h: Graph, connected_only: bool, edge_cap: int):
    e = h.edge_count
    if e < 1:
        raise InputError("census requires a pattern with at least one edge")
    if e > edge_cap:
        raise CapacityError(
            f"exhaustive census over 2^{e} subsets exceeds the edge cap {edge_cap}; "
            "use connected-only mode or a family-analytic census"
        )
    host_edges = h.edges()
    merged = _merge([_census_chunk(host_edges, h.order, 1, 1 << e, connected_only, {})])
    classes = []
    for key, (mult, _mask, rows) in merged.items():
        rep = Graph(len(rows), rows)
        classes.append(
            SubgraphClass(
                edge_count=rep.edge_count,
                vertex_count=rep.order,
                multiplicity=mult,
                aut_count=automorphism_count(rep),
                representative=rep,
                canonical=CanonicalForm(key, rep.order, rep.edge_count),
            )
        )
    classes.sort(key=lambda c: (c.edge_count, c.canonical.key))
    return tuple(classes)


def subgraph_census(
    h: Graph,
    *,
    connected_only: bool = False,
    edge_cap: int = DEFAULT_EDGE_CAP,
    threads: int = 1,
) -> tuple[SubgraphClass, ...]:
    """All isomorphism classes of nonempty edge subsets of h.

    Deterministic order: (edge_count, canonical key).  Multiplicities sum
    to 2^e(H) - 1 in exhaustive mode; connected-only mode drops
    disconnected classes and therefore only lower-bounds both thresholds.
    Results are cached per (h, options); `threads` partitions the mask
    range, and the keyed merge makes the outcome schedule-independent.
    """
    if threads <= 1:
        return _census_cached(h, connected_only, edge_cap)
    e = h.edge_count
    if e < 1:
        raise InputError("census requires a pattern with at least one edge")
    if e > edge_cap:
        raise CapacityError(
            f"exhaustive census over 2^{e} subsets exceeds the edge cap {edge_cap}; "
            "use connected-only mode or a family-analytic census"
        )
    host_edges = h.edges()
    bounds = []
    step = ((1 << e) - 1 + threads - 1) // threads
    lo = 1
    while lo < 1 << e:
        bounds.append((lo, min(lo + step, 1 << e)))
        lo += step
    with ThreadPoolExecutor(max_workers=threads) as pool:
        accs = list(
            pool.map(
                lambda b: _census_chunk(host_edges, h.order, b[0], b[1], connected_only, {}),
                bounds,
            )
        )
    merged = _merge(accs)
    classes = []
    for key, (mult, _mask, rows) in merged.items():
        rep = Graph(len(rows), rows)
        classes.append(
            SubgraphClass(
                edge_count=rep.edge_count,
                vertex_count=rep.order,
                multiplicity=mult,
                aut_count=automorphism_count(rep),
                representative=rep,
                canonical=CanonicalForm(key, rep.order, rep.edge_count),
            )
        )
    classes.sort(key=lambda c: (c.edge_count, c.canonical.key))
    return tuple(classes)
