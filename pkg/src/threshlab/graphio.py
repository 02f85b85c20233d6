"""Edge-list and graph6 parsing/serialization.

Edge-list format: one edge per line, two 0-based vertex indices separated
by whitespace; `#` starts a comment; blank lines are ignored.  A comment
of the form `# n=K` pins the vertex count, which keeps trailing isolated
vertices across a round trip.  graph6 input is recognised by the
`>>graph6<<` header (or by file extension at the CLI layer).
"""

from __future__ import annotations

from .errors import CapacityError, InputError
from .graphs import MAX_ORDER, Graph

GRAPH6_HEADER = ">>graph6<<"


def parse_edge_list(text: str) -> Graph:
    edges = []
    declared = None
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        comment = raw.split("#", 1)[1].strip() if "#" in raw else ""
        if comment.startswith("n=") and declared is None:
            try:
                declared = int(comment[2:].strip())
            except ValueError:
                raise InputError(f"line {ln}: malformed order directive {comment!r}")
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise InputError(f"line {ln}: expected two vertex indices, got {raw!r}")
        try:
            i, j = int(parts[0]), int(parts[1])
        except ValueError:
            raise InputError(f"line {ln}: non-integer vertex index in {raw!r}")
        if i < 0 or j < 0:
            raise InputError(f"line {ln}: negative vertex index")
        if i >= MAX_ORDER or j >= MAX_ORDER:
            raise InputError(f"line {ln}: vertex index >= {MAX_ORDER}")
        if i == j:
            raise InputError(f"line {ln}: self-loop at vertex {i}")
        lo, hi = (i, j) if i < j else (j, i)
        if (lo, hi) in set(edges):
            raise InputError(f"line {ln}: duplicate edge ({i}, {j})")
        edges.append((lo, hi))
    if not edges and declared is None:
        raise InputError("no edges found in edge-list input")
    order = max((j for _, j in edges), default=-1) + 1
    if declared is not None:
        if declared < order:
            raise InputError(f"order directive n={declared} below max vertex index")
        order = declared
    if order > MAX_ORDER:
        raise InputError(f"declared order {order} exceeds {MAX_ORDER}")
    return Graph.from_edges(order, edges)


def parse_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(GRAPH6_HEADER):
        s = s[len(GRAPH6_HEADER):].strip()
    if not s:
        raise InputError("empty graph6 payload")
    data = [ord(c) - 63 for c in s]
    if any(d < 0 or d > 63 for d in data):
        raise InputError("invalid graph6 character")
    if data[0] < 63:
        n, body = data[0], data[1:]
    elif len(data) >= 4 and data[1] < 63:
        n = (data[1] << 12) | (data[2] << 6) | data[3]
        body = data[4:]
    else:
        raise InputError("unsupported graph6 size prefix")
    if n > MAX_ORDER:
        raise CapacityError(f"graph6 order {n} exceeds {MAX_ORDER}")
    if n == 0:
        raise InputError("graph6 encodes the order-0 graph")
    nbits = n * (n - 1) // 2
    if len(body) != (nbits + 5) // 6:
        raise InputError("graph6 payload length does not match order")
    bits = []
    for d in body:
        for k in range(5, -1, -1):
            bits.append(d >> k & 1)
    edges = []
    t = 0
    for j in range(1, n):
        for i in range(j):
            if bits[t]:
                edges.append((i, j))
            t += 1
    return Graph.from_edges(n, edges)


def write_graph6(g: Graph) -> str:
    if g.order <= 62:
        prefix = chr(g.order + 63)
    else:
        prefix = chr(126) + "".join(
            chr(((g.order >> s) & 63) + 63) for s in (12, 6, 0)
        )
    bits = []
    for j in range(1, g.order):
        for i in range(j):
            bits.append(g.rows[j] >> i & 1)
    while len(bits) % 6:
        bits.append(0)
    chars = []
    for t in range(0, len(bits), 6):
        val = 0
        for b in bits[t:t + 6]:
            val = val << 1 | b
        chars.append(chr(val + 63))
    return GRAPH6_HEADER + prefix + "".join(chars)


def parse_graph(text: str) -> Graph:
    """Parse edge-list text, or graph6 when the header identifies it."""
    if text.lstrip().startswith(GRAPH6_HEADER):
        return parse_graph6(text)
    return parse_edge_list(text)


def serialize_graph(g: Graph, fmt: str = "edge-list") -> str:
    """Round-trip serialization; parse_graph(serialize_graph(g)) == g."""
    if fmt == "edge-list":
        lines = [f"# n={g.order}"]
        lines += [f"{i} {j}" for i, j in g.edges()]
        return "\n".join(lines) + "\n"
    if fmt == "graph6":
        return write_graph6(g) + "\n"
    raise InputError(f"unknown serialization format {fmt!r}")
