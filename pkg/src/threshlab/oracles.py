"""Specialized containment oracles.

Each oracle decides "host has a subgraph isomorphic to the pattern" for
one structured family, exactly, and agrees with the generic backtracking
search on its domain:

  hamiltonian_cycle  spanning cycle; bitmask dynamic programming over
                     vertex subsets (feasible to 20 vertices), fronted by
                     cheap necessary conditions and a budgeted exhaustive
                     DFS that settles almost all random instances early.
  perfect_matching   k disjoint edges; blossom augmenting-path maximum
                     matching, answer max-matching >= k.
  clique             K_k; branch and bound with a greedy colouring bound.
"""

from __future__ import annotations

from collections import deque

from .errors import CapacityError
from .graphs import Graph, rows_connected

HAMILTONIAN_ORDER_CAP = 20

_DFS_BUDGET = 20000


def _mask_connected(rows, mask: int, start: int) -> bool:
    seen = start
    frontier = start
    while frontier:
        nxt = 0
        r = frontier
        while r:
            b = r & -r
            nxt |= rows[b.bit_length() - 1]
            r ^= b
        frontier = nxt & mask & ~seen
        seen |= frontier
    return seen & mask == mask


def _has_cut_vertex(rows, n: int) -> bool:
    disc = [0] * n
    low = [0] * n
    timer = [1]

    def dfs(v: int, parent: int) -> bool:
        disc[v] = low[v] = timer[0]
        timer[0] += 1
        children = 0
        r = rows[v]
        while r:
            b = r & -r
            to = b.bit_length() - 1
            r ^= b
            if to == parent:
                continue
            if disc[to]:
                low[v] = min(low[v], disc[to])
            else:
                children += 1
                if dfs(to, v):
                    return True
                low[v] = min(low[v], low[to])
                if parent != -1 and low[to] >= disc[v]:
                    return True
        return parent == -1 and children > 1

    return dfs(0, -1)


def _ham_dfs(rows, n: int, budget: int):
    """Exhaustive path search; True/False when settled, None on budget."""
    full = (1 << n) - 1
    steps = budget

    def rec(end: int, visited: int):
        nonlocal steps
        if steps <= 0:
            return None
        steps -= 1
        if visited == full:
            return bool(rows[end] & 1)
        unvis = full & ~visited
        if not rows[0] & (unvis | (1 << end)):
            return False
        r = unvis
        while r:
            b = r & -r
            u = b.bit_length() - 1
            if (rows[u] & (unvis | (1 << end) | 1)).bit_count() < 2:
                return False
            r ^= b
        if not _mask_connected(rows, unvis | (1 << end), 1 << end):
            return False
        cand = rows[end] & unvis
        opts = []
        c = cand
        while c:
            b = c & -c
            u = b.bit_length() - 1
            opts.append(((rows[u] & unvis).bit_count(), u))
            c ^= b
        opts.sort()
        unsettled = False
        for _, u in opts:
            res = rec(u, visited | (1 << u))
            if res:
                return True
            if res is None:
                unsettled = True
        return None if unsettled else False

    return rec(0, 1)


def _ham_dp(rows, n: int) -> bool:
    # dp[mask] = bitset of endpoints v (mask contains 0 and v) such that a
    # path starting at 0 spans mask and ends at v.
    full = (1 << n) - 1
    dp = [0] * (1 << n)
    dp[1] = 1
    for mask in range(3, 1 << n, 2):
        rest = mask ^ 1
        acc = 0
        r = rest
        while r:
            b = r & -r
            if dp[mask ^ b] & rows[b.bit_length() - 1]:
                acc |= b
            r ^= b
        dp[mask] = acc
    return bool(dp[full] & rows[0])


def has_hamiltonian_cycle(g: Graph) -> bool:
    """Exact spanning-cycle decision for graphs on at most 20 vertices."""
    n = g.order
    if n > HAMILTONIAN_ORDER_CAP:
        raise CapacityError(
            f"hamiltonian oracle capped at {HAMILTONIAN_ORDER_CAP} vertices (got {n})"
        )
    if n < 3:
        return False
    rows = g.rows
    if any(rows[v].bit_count() < 2 for v in range(n)):
        return False
    if not rows_connected(rows, n):
        return False
    if _has_cut_vertex(rows, n):
        return False
    res = _ham_dfs(rows, n, _DFS_BUDGET)
    if res is not None:
        return res
    return _ham_dp(rows, n)


def max_matching_size(g: Graph) -> int:
    """Maximum matching via blossom contraction (general graphs)."""
    n = g.order
    adj = [[] for _ in range(n)]
    for v in range(n):
        r = g.rows[v]
        while r:
            b = r & -r
            adj[v].append(b.bit_length() - 1)
            r ^= b
    match = [-1] * n
    for v in range(n):
        if match[v] == -1:
            for u in adj[v]:
                if match[u] == -1:
                    match[v] = u
                    match[u] = v
                    break
    p = [-1] * n
    base = list(range(n))
    used = [False] * n
    blossom = [False] * n

    def lca(a: int, b: int) -> int:
        seen = [False] * n
        while True:
            a = base[a]
            seen[a] = True
            if match[a] == -1:
                break
            a = p[match[a]]
        while True:
            b = base[b]
            if seen[b]:
                return b
            b = p[match[b]]

    def mark_path(v: int, b: int, child: int):
        while base[v] != b:
            blossom[base[v]] = True
            blossom[base[match[v]]] = True
            p[v] = child
            child = match[v]
            v = p[match[v]]

    def find_path(root: int) -> bool:
        for i in range(n):
            used[i] = False
            p[i] = -1
            base[i] = i
        used[root] = True
        q = deque([root])
        while q:
            v = q.popleft()
            for to in adj[v]:
                if base[v] == base[to] or match[v] == to:
                    continue
                if to == root or (match[to] != -1 and p[match[to]] != -1):
                    curbase = lca(v, to)
                    for i in range(n):
                        blossom[i] = False
                    mark_path(v, curbase, to)
                    mark_path(to, curbase, v)
                    for i in range(n):
                        if blossom[base[i]]:
                            base[i] = curbase
                            if not used[i]:
                                used[i] = True
                                q.append(i)
                elif p[to] == -1:
                    p[to] = v
                    if match[to] == -1:
                        cur = to
                        while cur != -1:
                            pv = p[cur]
                            ppv = match[pv]
                            match[cur] = pv
                            match[pv] = cur
                            cur = ppv
                        return True
                    used[match[to]] = True
                    q.append(match[to])
        return False

    for v in range(n):
        if match[v] == -1:
            find_path(v)
    return sum(1 for v in range(n) if match[v] != -1) // 2


def _greedy_color_count(rows, cand: int) -> int:
    count = 0
    rest = cand
    while rest:
        count += 1
        avail = rest
        while avail:
            b = avail & -avail
            rest ^= b
            avail &= ~(rows[b.bit_length() - 1] | b)
    return count


def has_clique_of_size(g: Graph, k: int) -> bool:
    """True iff the host has a clique on k vertices."""
    if k <= 1:
        return k <= g.order
    if k == 2:
        return g.edge_count >= 1
    rows = g.rows

    def expand(cand: int, size: int) -> bool:
        if size + cand.bit_count() < k:
            return False
        if size + _greedy_color_count(rows, cand) < k:
            return False
        while cand:
            if size + cand.bit_count() < k:
                return False
            b = cand & -cand
            v = b.bit_length() - 1
            if size + 1 == k:
                return True
            if expand(cand & rows[v], size + 1):
                return True
            cand ^= b
        return False

    return expand((1 << g.order) - 1, 0)
