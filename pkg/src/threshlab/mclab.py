"""G(n,p) sampling, containment oracles, exact small-n critical
probabilities, and Monte Carlo bisection estimation of p_c(H).

p_c(H) is the smallest p with P_p(Z_H >= 1) >= 1/2, where Z_H counts
copies of H in G(n,p).  At desk scale (C(n,2) <= 24 potential edges) the
probability is an exact polynomial obtained by summing over every host
graph; beyond that, a monotone bisection drives fresh Monte Carlo probes
whose brackets only move when the Wilson 95% interval excludes 1/2.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

from .errors import CapacityError, InfeasibleError, InputError
from .graphs import (
    MAX_ORDER,
    CanonicalForm,
    EmbeddingMatcher,
    Graph,
    canonical_form,
    rows_connected,
    stripped,
)
from .oracles import (
    HAMILTONIAN_ORDER_CAP,
    has_clique_of_size,
    has_hamiltonian_cycle,
    max_matching_size,
)
from .rng import CounterStream

STREAM_TAG_GNP = 7
STREAM_TAG_PC = 13

EXACT_EDGE_CAP = 24

Z95 = 1.959963984540054

ORACLE_KINDS = ("generic", "hamiltonian_cycle", "perfect_matching", "clique")


@dataclass(frozen=True)
class Probe:
    p: float
    successes: int
    samples: int


@dataclass(frozen=True)
class PcEstimate:
    n: int
    pattern: CanonicalForm
    method: str
    p_hat: float
    ci_low: float
    ci_high: float
    samples_per_probe: int
    probes: tuple[Probe, ...]
    seed: int
    oracle: str
    low_confidence: bool = False


def wilson_interval(successes: int, samples: int, z: float = Z95) -> tuple[float, float]:
    """Score interval; robust near success probabilities 0 and 1."""
    if samples <= 0:
        raise InputError("wilson interval needs at least one sample")
    ph = successes / samples
    denom = 1.0 + z * z / samples
    center = (ph + z * z / (2 * samples)) / denom
    half = z * math.sqrt(ph * (1.0 - ph) / samples + z * z / (4 * samples * samples)) / denom
    lo = 0.0 if successes == 0 else max(0.0, center - half)
    hi = 1.0 if successes == samples else min(1.0, center + half)
    return lo, hi


def _edge_list(n: int) -> tuple[tuple[int, int], ...]:
    return tuple((i, j) for i in range(n) for j in range(i + 1, n))


def sample_gnp(n: int, p: float, stream: CounterStream, index: int = 0) -> Graph:
    """One G(n,p) draw; edge t of the lex edge list uses stream variate
    index*C(n,2)+t, so draws at p1 <= p2 with the same index are coupled
    monotonely."""
    if not 0.0 <= p <= 1.0:
        raise InputError(f"probability {p} outside [0, 1]")
    if n > MAX_ORDER:
        raise CapacityError(f"order {n} exceeds {MAX_ORDER}")
    edges = _edge_list(n)
    base = index * len(edges)
    rows = [0] * n
    for t, (i, j) in enumerate(edges):
        if stream.uniform(base + t) < p:
            rows[i] |= 1 << j
            rows[j] |= 1 << i
    return Graph(n, tuple(rows))


def _sample_batch(n: int, p: float, stream: CounterStream, offset: int, count: int) -> list[Graph]:
    edges = _edge_list(n)
    ne = len(edges)
    us = stream.uniform_block(count * ne, offset * ne).reshape(count, ne)
    out = []
    for row in us:
        rows = [0] * n
        hits = (row < p).nonzero()[0]
        for t in hits:
            i, j = edges[t]
            rows[i] |= 1 << j
            rows[j] |= 1 << i
        out.append(Graph._unchecked(n, tuple(rows), len(hits)))
    return out


def _resolve_oracle(pattern: Graph, host_order: int, oracle: str):
    pat = stripped(pattern)
    if oracle == "generic":
        return EmbeddingMatcher(pat).exists_in
    if oracle == "hamiltonian_cycle":
        degs = [pat.rows[v].bit_count() for v in range(pat.order)]
        if any(d != 2 for d in degs) or not rows_connected(pat.rows, pat.order):
            raise InputError("hamiltonian_cycle oracle requires a cycle pattern")
        if pat.order != host_order:
            raise InputError(
                "hamiltonian_cycle oracle requires a spanning cycle "
                f"(pattern on {pat.order} vertices, host on {host_order})"
            )
        if host_order > HAMILTONIAN_ORDER_CAP:
            raise CapacityError(
                f"hamiltonian oracle capped at {HAMILTONIAN_ORDER_CAP} vertices"
            )
        return has_hamiltonian_cycle
    if oracle == "perfect_matching":
        if any(pat.rows[v].bit_count() != 1 for v in range(pat.order)):
            raise InputError("perfect_matching oracle requires a disjoint-edges pattern")
        k = pat.order // 2
        return lambda host: max_matching_size(host) >= k
    if oracle == "clique":
        if pat.edge_count != pat.order * (pat.order - 1) // 2:
            raise InputError("clique oracle requires a complete pattern")
        k = pat.order
        return lambda host: has_clique_of_size(host, k)
    raise InputError(f"unknown oracle {oracle!r}; choose one of {ORACLE_KINDS}")


def contains_copy(host: Graph, pattern: Graph, oracle: str = "generic") -> bool:
    """True iff host has a subgraph isomorphic to pattern.

    Specialized oracles demand a pattern of the matching family shape and
    agree with the generic search on their domain.
    """
    return _resolve_oracle(pattern, host.order, oracle)(host)


def _count_probe_successes(n, p, predicate, stream, offset, count, threads):
    if threads <= 1:
        hits = 0
        for host in _sample_batch(n, p, stream, offset, count):
            hits += predicate(host)
        return hits
    chunk = (count + threads - 1) // threads
    jobs = []
    start = 0
    while start < count:
        jobs.append((offset + start, min(chunk, count - start)))
        start += chunk

    def run(job):
        off, cnt = job
        hits = 0
        for host in _sample_batch(n, p, stream, off, cnt):
            hits += predicate(host)
        return hits

    with ThreadPoolExecutor(max_workers=threads) as pool:
        return sum(pool.map(run, jobs))


def containment_rate(
    pattern: Graph,
    n: int,
    p: float,
    samples: int,
    seed: int = 0,
    oracle: str = "generic",
    threads: int = 1,
) -> tuple[float, float]:
    """Empirical P_p(Z_pattern >= 1) with binomial standard error."""
    if samples < 1:
        raise InputError("need at least one sample")
    predicate = _resolve_oracle(pattern, n, oracle)
    stream = CounterStream(seed, STREAM_TAG_GNP)
    hits = _count_probe_successes(n, p, predicate, stream, 0, samples, threads)
    rate = hits / samples
    return rate, math.sqrt(rate * (1.0 - rate) / samples)


@lru_cache(maxsize=64)
def _containment_profile(pattern: Graph, n: int) -> tuple[int, ...]:
    """A_k = number of k-edge host graphs on [n] containing the pattern.

    Single ascending pass over all edge masks: containment is monotone,
    so a mask is contained as soon as any one-edge-smaller child is, and
    the embedding search only runs on the frontier.
    """
    pat = stripped(pattern)
    matcher = EmbeddingMatcher(pat)
    edges = _edge_list(n)
    ne = len(edges)
    ep = pat.edge_count
    ind = bytearray(1 << ne)
    profile = [0] * (ne + 1)
    for mask in range(1, 1 << ne):
        pc = mask.bit_count()
        if pc < ep:
            continue
        hit = 0
        t = mask
        while t:
            b = t & -t
            if ind[mask ^ b]:
                hit = 1
                break
            t ^= b
        if not hit:
            rows = [0] * n
            t = mask
            while t:
                b = t & -t
                i, j = edges[b.bit_length() - 1]
                rows[i] |= 1 << j
                rows[j] |= 1 << i
                t ^= b
            hit = 1 if matcher.search_rows(rows, n, False) else 0
        if hit:
            ind[mask] = 1
            profile[pc] += 1
    return tuple(profile)


def exact_containment_probability(pattern: Graph, n: int, p: float) -> float:
    """Exact P_p(Z_pattern >= 1) by summation over all 2^C(n,2) hosts."""
    if not 0.0 <= p <= 1.0:
        raise InputError(f"probability {p} outside [0, 1]")
    ne = n * (n - 1) // 2
    if ne > EXACT_EDGE_CAP:
        raise CapacityError(
            f"exact containment needs C(n,2) <= {EXACT_EDGE_CAP}; n={n} gives {ne}"
        )
    if pattern.vertex_count > n:
        return 0.0
    profile = _containment_profile(pattern, n)
    q = 1.0 - p
    total = 0.0
    for k, a in enumerate(profile):
        if a:
            total += a * p**k * q ** (ne - k)
    return total


def exact_pc(pattern: Graph, n: int, tol: float = 1e-12) -> PcEstimate:
    """Bisection solve of exact P_p(contain) = 1/2; method 'exact'."""
    if tol <= 0:
        raise InputError("tolerance must be positive")
    if pattern.edge_count < 1:
        raise InputError("pattern needs at least one edge")
    if pattern.vertex_count > n:
        raise InfeasibleError(
            f"pattern needs {pattern.vertex_count} vertices, K_{n} has {n}"
        )
    ne = n * (n - 1) // 2
    if ne > EXACT_EDGE_CAP:
        raise CapacityError(
            f"exact containment needs C(n,2) <= {EXACT_EDGE_CAP}; n={n} gives {ne}"
        )
    profile = _containment_profile(pattern, n)

    def prob(p: float) -> float:
        q = 1.0 - p
        return sum(a * p**k * q ** (ne - k) for k, a in enumerate(profile) if a)

    lo, hi = 0.0, 1.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if prob(mid) >= 0.5:
            hi = mid
        else:
            lo = mid
    p_hat = 0.5 * (lo + hi)
    return PcEstimate(
        n=n,
        pattern=canonical_form(pattern),
        method="exact",
        p_hat=p_hat,
        ci_low=p_hat,
        ci_high=p_hat,
        samples_per_probe=0,
        probes=(),
        seed=0,
        oracle="exact",
    )


def estimate_pc(
    pattern: Graph,
    n: int,
    samples_per_probe: int = 2000,
    tol: float = 5e-3,
    seed: int = 0,
    oracle: str = "generic",
    sample_cap: int = 32000,
    threads: int = 1,
) -> PcEstimate:
    """Monte Carlo bisection for p_c(pattern) in G(n,p).

    Each probe draws fresh samples from a counter-based stream keyed by
    (seed, probe index); the bracket moves only when the Wilson interval
    excludes 1/2, otherwise the probe doubles its samples up to the cap
    and then splits on the point estimate.  Deterministic for a given
    seed, regardless of thread count.
    """
    if samples_per_probe < 100:
        raise InputError("samples_per_probe must be at least 100")
    if not 1e-4 <= tol < 1.0:
        raise InputError("tol must lie in [1e-4, 1)")
    if sample_cap < samples_per_probe:
        raise InputError("sample cap below samples_per_probe")
    if pattern.vertex_count > n:
        raise InfeasibleError(
            f"pattern needs {pattern.vertex_count} vertices, K_{n} has {n}"
        )
    predicate = _resolve_oracle(pattern, n, oracle)
    base = CounterStream(seed, STREAM_TAG_PC)
    lo, hi = 0.0, 1.0
    probes: list[Probe] = []
    probe_idx = 0
    last_cap_split = False
    while hi - lo > tol:
        p = 0.5 * (lo + hi)
        stream = base.subkey(probe_idx)
        total_s = 0
        total_n = 0
        batch = samples_per_probe
        last_cap_split = False
        while True:
            total_s += _count_probe_successes(n, p, predicate, stream, total_n, batch, threads)
            total_n += batch
            wlo, whi = wilson_interval(total_s, total_n)
            if wlo > 0.5:
                hi = p
                break
            if whi < 0.5:
                lo = p
                break
            if total_n >= sample_cap:
                if 2 * total_s >= total_n:
                    hi = p
                else:
                    lo = p
                last_cap_split = True
                break
            batch = min(total_n, sample_cap - total_n)
        probes.append(Probe(p, total_s, total_n))
        probe_idx += 1
    below = [pr.p for pr in probes if wilson_interval(pr.successes, pr.samples)[1] < 0.5]
    above = [pr.p for pr in probes if wilson_interval(pr.successes, pr.samples)[0] > 0.5]
    return PcEstimate(
        n=n,
        pattern=canonical_form(pattern),
        method="monte_carlo",
        p_hat=0.5 * (lo + hi),
        ci_low=max(below, default=0.0),
        ci_high=min(above, default=1.0),
        samples_per_probe=samples_per_probe,
        probes=tuple(probes),
        seed=seed,
        oracle=oracle,
        low_confidence=last_cap_split,
    )
