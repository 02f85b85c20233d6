"""Independent brute-force oracles for test expectations.

Everything here avoids the library's canonical-form/backtracking
machinery on purpose: isomorphism is decided by trying all vertex
permutations, so these routines can certify the fast implementations.
"""

from itertools import combinations, permutations

from threshlab.graphs import Graph, compact_rows


def adjacency_set(g: Graph) -> frozenset:
    return frozenset(g.edges())


def brute_isomorphic(a: Graph, b: Graph) -> bool:
    """Edge-set isomorphism after dropping isolated vertices, by trying
    every bijection."""
    ra, _ = compact_rows(a)
    rb, _ = compact_rows(b)
    if len(ra) != len(rb):
        return False
    m = len(ra)
    dega = sorted(r.bit_count() for r in ra)
    degb = sorted(r.bit_count() for r in rb)
    if dega != degb:
        return False
    for perm in permutations(range(m)):
        if all(
            (ra[i] >> j & 1) == (rb[perm[i]] >> perm[j] & 1)
            for i in range(m)
            for j in range(i + 1, m)
        ):
            return True
    return False


def brute_automorphisms(g: Graph) -> int:
    n = g.order
    count = 0
    for perm in permutations(range(n)):
        if all(
            (g.rows[i] >> j & 1) == (g.rows[perm[i]] >> perm[j] & 1)
            for i in range(n)
            for j in range(i + 1, n)
        ):
            count += 1
    return count


def brute_embeddings(pattern: Graph, host: Graph) -> int:
    pr, kept = compact_rows(pattern)
    m = len(kept)
    count = 0
    for image in permutations(range(host.order), m):
        if all(
            host.rows[image[i]] >> image[j] & 1
            for i in range(m)
            for j in range(i + 1, m)
            if pr[i] >> j & 1
        ):
            count += 1
    return count


def brute_census(h: Graph) -> list[tuple[int, int, int]]:
    """(edge_count, vertex_count, multiplicity) per isomorphism class of
    nonempty edge subsets, classes found by pairwise permutation search."""
    edges = h.edges()
    reps: list[Graph] = []
    mult: list[int] = []
    for r in range(1, len(edges) + 1):
        for subset in combinations(edges, r):
            sub = Graph.from_edges(h.order, subset)
            for idx, rep in enumerate(reps):
                if rep.edge_count == sub.edge_count and brute_isomorphic(rep, sub):
                    mult[idx] += 1
                    break
            else:
                reps.append(sub)
                mult.append(1)
    out = []
    for rep, m in zip(reps, mult):
        out.append((rep.edge_count, rep.vertex_count, m))
    return sorted(out)


def brute_contains(host: Graph, pattern: Graph) -> bool:
    pr, kept = compact_rows(pattern)
    m = len(kept)
    if m == 0:
        return True
    for image in permutations(range(host.order), m):
        if all(
            host.rows[image[i]] >> image[j] & 1
            for i in range(m)
            for j in range(i + 1, m)
            if pr[i] >> j & 1
        ):
            return True
    return False


def random_graph(rng, order: int, p: float) -> Graph:
    edges = [
        (i, j)
        for i in range(order)
        for j in range(i + 1, order)
        if rng.random() < p
    ]
    return Graph.from_edges(order, edges)


def permuted(g: Graph, perm) -> Graph:
    return Graph.from_edges(
        g.order, [(perm[i], perm[j]) for i, j in g.edges()]
    )
