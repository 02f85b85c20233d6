"""Labelled small-graph substrate: bit-row adjacency, canonical forms,
automorphism and embedding counts.

Vertices are integers 0..order-1 and adjacency is one Python int bitmask
per vertex, so everything in the package operates on graphs of at most 64
vertices (one machine word per row).  Isomorphism classing treats graphs
as edge sets: isolated vertices are dropped before canonicalization, and
the canonical key is the lexicographically minimal column-major
upper-triangle encoding of the adjacency matrix over all vertex
orderings, found by colour refinement plus backtracking over the coarsest
stable partition.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from math import factorial

from .errors import CapacityError, InputError

MAX_ORDER = 64

# Canonical key of the edgeless graph (everything stripped away).
EMPTY_KEY = b"\x00"


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on a fixed labelled vertex set."""

    order: int
    rows: tuple[int, ...]
    edge_count: int = field(init=False, compare=False)

    def __post_init__(self):
        if not 1 <= self.order <= MAX_ORDER:
            raise CapacityError(
                f"graph order {self.order} outside supported range 1..{MAX_ORDER}"
            )
        if len(self.rows) != self.order:
            raise InputError("adjacency row count does not match order")
        limit = (1 << self.order) - 1
        edge_bits = 0
        for v, row in enumerate(self.rows):
            if row & ~limit:
                raise InputError(f"vertex {v}: neighbour bit beyond order")
            if row >> v & 1:
                raise InputError(f"vertex {v}: self-loop")
            r = row
            while r:
                b = r & -r
                u = b.bit_length() - 1
                if not self.rows[u] >> v & 1:
                    raise InputError(f"adjacency not symmetric at ({v}, {u})")
                r ^= b
            edge_bits += row.bit_count()
        object.__setattr__(self, "edge_count", edge_bits // 2)

    @classmethod
    def from_edges(cls, order: int, edges) -> "Graph":
        if not 1 <= order <= MAX_ORDER:
            raise CapacityError(
                f"graph order {order} outside supported range 1..{MAX_ORDER}"
            )
        rows = [0] * order
        for i, j in edges:
            if i == j:
                raise InputError(f"self-loop at vertex {i}")
            if not (0 <= i < order and 0 <= j < order):
                raise InputError(f"edge ({i}, {j}) outside vertex range 0..{order - 1}")
            if rows[i] >> j & 1:
                raise InputError(f"duplicate edge ({i}, {j})")
            rows[i] |= 1 << j
            rows[j] |= 1 << i
        return cls(order, tuple(rows))

    @classmethod
    def complete(cls, n: int) -> "Graph":
        full = (1 << n) - 1
        return cls(n, tuple(full ^ (1 << v) for v in range(n)))

    @classmethod
    def _unchecked(cls, order: int, rows: tuple[int, ...], edge_count: int) -> "Graph":
        # internal sampling paths only: rows symmetric by construction
        g = object.__new__(cls)
        object.__setattr__(g, "order", order)
        object.__setattr__(g, "rows", rows)
        object.__setattr__(g, "edge_count", edge_count)
        return g

    def edges(self) -> list[tuple[int, int]]:
        """Edge list in lexicographic (i, j) order, i < j.

        This order also defines the meaning of integer edge masks.
        """
        out = []
        for i in range(self.order):
            r = self.rows[i] >> (i + 1) << (i + 1)
            while r:
                b = r & -r
                out.append((i, b.bit_length() - 1))
                r ^= b
        return out

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    @property
    def vertex_count(self) -> int:
        """Number of non-isolated vertices, v(H) for edge-induced patterns."""
        return sum(1 for r in self.rows if r)


@dataclass(frozen=True)
class CanonicalForm:
    """Label-independent identity of a graph viewed as an edge set."""

    key: bytes
    order: int
    edge_count: int


def edge_induced_subgraph(g: Graph, edges) -> Graph:
    """Subgraph on the same labelled vertex set keeping exactly `edges`.

    `edges` is either an int mask over g.edges() (lex order) or an
    iterable of (i, j) pairs; every referenced edge must exist in g.
    """
    if isinstance(edges, int):
        all_edges = g.edges()
        if edges >> len(all_edges):
            raise InputError("edge mask references a missing edge")
        chosen = [all_edges[t] for t in range(len(all_edges)) if edges >> t & 1]
    else:
        chosen = []
        for i, j in edges:
            lo, hi = (i, j) if i < j else (j, i)
            if not (0 <= lo < g.order and hi < g.order) or not g.rows[lo] >> hi & 1:
                raise InputError(f"edge ({i}, {j}) not present in host graph")
            chosen.append((lo, hi))
    return Graph.from_edges(g.order, chosen)


def compact_rows(g: Graph) -> tuple[tuple[int, ...], list[int]]:
    """Strip isolated vertices and reindex; returns (rows, kept labels)."""
    kept = [v for v in range(g.order) if g.rows[v]]
    pos = {v: i for i, v in enumerate(kept)}
    rows = []
    for v in kept:
        r = g.rows[v]
        nr = 0
        while r:
            b = r & -r
            nr |= 1 << pos[b.bit_length() - 1]
            r ^= b
        rows.append(nr)
    return tuple(rows), kept


def stripped(g: Graph) -> Graph:
    """The graph with isolated vertices removed (compactly relabelled)."""
    rows, kept = compact_rows(g)
    if not kept:
        raise InputError("graph has no edges; nothing remains after stripping")
    return Graph(len(kept), rows)


def rows_connected(rows, m: int) -> bool:
    if m == 0:
        return False
    seen = 1
    frontier = 1
    while frontier:
        nxt = 0
        r = frontier
        while r:
            b = r & -r
            nxt |= rows[b.bit_length() - 1]
            r ^= b
        frontier = nxt & ~seen
        seen |= frontier
    return seen == (1 << m) - 1


def is_connected(g: Graph) -> bool:
    """Connectivity of the non-isolated part (edge-set semantics)."""
    rows, kept = compact_rows(g)
    return rows_connected(rows, len(kept))


def _refine(rows, m: int, colors):
    """Iterated colour refinement; colours are ranks, stable under relabelling."""
    while True:
        sigs = [None] * m
        for v in range(m):
            nb = []
            r = rows[v]
            while r:
                b = r & -r
                nb.append(colors[b.bit_length() - 1])
                r ^= b
            nb.sort()
            sigs[v] = (colors[v], tuple(nb))
        ranking = {s: i for i, s in enumerate(sorted(set(sigs)))}
        refined = [ranking[sigs[v]] for v in range(m)]
        if refined == colors:
            return colors
        colors = refined


def _encode(rows, order) -> int:
    # Column-major upper triangle: pairs (0,1),(0,2),(1,2),(0,3),... so a
    # settled prefix of k vertices fixes the leading C(k,2) bits.
    enc = 0
    for j in range(1, len(order)):
        rj = rows[order[j]]
        for i in range(j):
            enc = enc << 1 | (rj >> order[i] & 1)
    return enc


def _minimal_encoding(rows, m: int) -> int:
    total = m * (m - 1) // 2
    if total == 0:
        return 0
    full = (1 << m) - 1
    if all(rows[v] == full ^ (1 << v) for v in range(m)):
        return (1 << total) - 1
    best = None

    def rec(colors):
        nonlocal best
        buckets = defaultdict(list)
        for v, c in enumerate(colors):
            buckets[c].append(v)
        prefix = []
        target = None
        for c in sorted(buckets):
            cell = buckets[c]
            if target is None and len(cell) == 1:
                prefix.append(cell[0])
            elif target is None:
                target = cell
        if target is None:
            enc = _encode(rows, prefix)
            if best is None or enc < best:
                best = enc
            return
        if best is not None and len(prefix) >= 2:
            pb = len(prefix) * (len(prefix) - 1) // 2
            if _encode(rows, prefix) > best >> (total - pb):
                return
        for v in target:
            child = [2 * c for c in colors]
            child[v] -= 1
            rec(_refine(rows, m, child))

    rec(_refine(rows, m, [0] * m))
    return best


def _key_bytes(m: int, enc: int) -> bytes:
    total = m * (m - 1) // 2
    nbytes = (total + 7) // 8
    return bytes([m]) + (enc << (nbytes * 8 - total)).to_bytes(nbytes, "big")


def canonical_key_of_rows(rows, m: int) -> bytes:
    """Canonical key for an already-stripped compact adjacency."""
    if m == 0:
        return EMPTY_KEY
    return _key_bytes(m, _minimal_encoding(rows, m))


def canonical_form(g: Graph) -> CanonicalForm:
    """Canonical identity of g with isolated vertices dropped.

    Two graphs get equal keys iff they are isomorphic as edge sets; the
    key does not depend on the input labelling.
    """
    rows, kept = compact_rows(g)
    m = len(kept)
    if m == 0:
        return CanonicalForm(EMPTY_KEY, 0, 0)
    return CanonicalForm(canonical_key_of_rows(rows, m), m, g.edge_count)


def _search_order(rows, m: int, start_key=None) -> list[int]:
    # Greedy connected expansion: most placed neighbours first, then degree.
    if start_key is None:
        start_key = lambda v: (-rows[v].bit_count(), v)
    order = []
    placed = 0
    remaining = set(range(m))
    while remaining:
        if order:
            best = max(
                remaining,
                key=lambda v: ((rows[v] & placed).bit_count(), rows[v].bit_count(), -v),
            )
            if (rows[best] & placed) == 0:
                best = min(remaining, key=start_key)
        else:
            best = min(remaining, key=start_key)
        order.append(best)
        placed |= 1 << best
        remaining.discard(best)
    return order


def automorphism_count(g: Graph) -> int:
    """|Aut(g)|: adjacency-preserving vertex permutations.

    Requires a graph without isolated vertices (strip first); counted by
    backtracking over colour-consistent bijections, independent of the
    embedding-count machinery so the two can cross-check each other.
    """
    m = g.order
    rows = g.rows
    for v in range(m):
        if rows[v] == 0:
            raise InputError("automorphism_count requires no isolated vertices")
    full = (1 << m) - 1
    if all(rows[v] == full ^ (1 << v) for v in range(m)):
        return factorial(m)
    colors = _refine(rows, m, [0] * m)
    cells = defaultdict(list)
    for v, c in enumerate(colors):
        cells[c].append(v)
    order = _search_order(rows, m, start_key=lambda v: (len(cells[colors[v]]), colors[v], v))
    img = [-1] * m
    count = 0

    def rec(pos: int, used: int):
        nonlocal count
        if pos == m:
            count += 1
            return
        v = order[pos]
        for u in cells[colors[v]]:
            if used >> u & 1:
                continue
            ok = True
            for q in range(pos):
                w = order[q]
                if (rows[v] >> w & 1) != (rows[u] >> img[w] & 1):
                    ok = False
                    break
            if ok:
                img[v] = u
                rec(pos + 1, used | 1 << u)
        img[v] = -1

    rec(0, 0)
    return count


class EmbeddingMatcher:
    """Backtracking embedding search for one fixed pattern.

    Pattern preprocessing (vertex order, degree profile, placed-neighbour
    lists) happens once, so sampling loops can test millions of hosts
    against the same pattern without redoing it.
    """

    __slots__ = ("m", "prows", "pdeg", "order", "placed_nb", "edge_count", "pdeg_sorted")

    def __init__(self, pattern: Graph):
        prows, kept = compact_rows(pattern)
        self.m = len(kept)
        self.prows = prows
        self.pdeg = [prows[v].bit_count() for v in range(self.m)]
        self.order = _search_order(prows, self.m)
        self.placed_nb = [
            [w for w in self.order[:pos] if prows[v] >> w & 1]
            for pos, v in enumerate(self.order)
        ]
        self.edge_count = pattern.edge_count
        self.pdeg_sorted = sorted(self.pdeg, reverse=True)

    def search_rows(self, hrows, n: int, count_all: bool) -> int:
        m = self.m
        if m > n:
            return 0
        pdeg = self.pdeg
        # ge[d] = host vertices of degree >= d, via bucket + suffix OR
        buckets = [0] * (n + 2)
        for u in range(n):
            d = hrows[u].bit_count()
            if d > n:
                d = n
            buckets[d] |= 1 << u
        for d in range(n - 1, -1, -1):
            buckets[d] |= buckets[d + 1]
        base = [buckets[pdeg[v]] if pdeg[v] <= n else 0 for v in range(m)]
        order = self.order
        placed_nb = self.placed_nb
        img = [-1] * m

        def rec(pos: int, used: int) -> int:
            if pos == m:
                return 1
            v = order[pos]
            cand = base[v] & ~used
            for w in placed_nb[pos]:
                cand &= hrows[img[w]]
                if not cand:
                    return 0
            total = 0
            while cand:
                b = cand & -cand
                img[v] = b.bit_length() - 1
                total += rec(pos + 1, used | b)
                if total and not count_all:
                    return total
                cand ^= b
            return total

        return rec(0, 0)

    def exists_in(self, host: Graph) -> bool:
        if self.m == 0:
            return True
        if self.edge_count > host.edge_count:
            return False
        hdeg = sorted((r.bit_count() for r in host.rows), reverse=True)
        if any(p > h for p, h in zip(self.pdeg_sorted, hdeg)):
            return False
        return self.search_rows(host.rows, host.order, False) > 0


def count_embeddings(pattern: Graph, host: Graph) -> int:
    """Number of injective maps V(pattern) -> V(host) carrying every
    pattern edge to a host edge (non-induced embeddings).

    Pattern must have no isolated vertices.  Satisfies
    count_embeddings(H', H) = M_{H',H} * |Aut(H')|.
    """
    for v in range(pattern.order):
        if pattern.rows[v] == 0:
            raise InputError("count_embeddings requires a pattern without isolated vertices")
    return EmbeddingMatcher(pattern).search_rows(host.rows, host.order, True)


def contains_embedding(host: Graph, pattern: Graph) -> bool:
    """True iff host has a subgraph isomorphic to pattern (edge-set sense).

    Isolated pattern vertices are ignored; the edgeless pattern is
    contained in everything.
    """
    return EmbeddingMatcher(pattern).exists_in(host)
