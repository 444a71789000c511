"""Simple undirected graphs, named constructions, structural predicates and I/O.

Vertices are the dense indices ``0..n-1``.  A :class:`Graph` is immutable;
every operation that "changes" a graph returns a new one.
"""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional

from .errors import GraphFormatError, InvalidInputError, InvalidParameterError

Edge = tuple[int, int]


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph stored as sorted neighbour tuples."""

    n: int
    adjacency: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.adjacency) != self.n:
            raise InvalidParameterError("adjacency length must equal n")
        for v, nbrs in enumerate(self.adjacency):
            for u in nbrs:
                if u == v:
                    raise InvalidParameterError(f"self-loop at vertex {v}")
                if not 0 <= u < self.n:
                    raise InvalidParameterError(f"neighbour {u} of {v} out of range")
                if v not in self.adjacency[u]:
                    raise InvalidParameterError(f"asymmetric adjacency {v}-{u}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Edge]) -> "Graph":
        if n < 0:
            raise InvalidParameterError("n must be nonnegative")
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise InvalidParameterError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidParameterError(f"edge ({u}, {v}) out of range for n={n}")
            if v in nbrs[u]:
                raise InvalidParameterError(f"duplicate edge ({u}, {v})")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(n, tuple(tuple(sorted(s)) for s in nbrs))

    @property
    def m(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    @property
    def edges(self) -> list[Edge]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        return [(u, v) for u in range(self.n) for v in self.adjacency[u] if u < v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adjacency]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]


# Builders


def _require_positive(n: int) -> None:
    if n < 1:
        raise InvalidParameterError(f"n must be >= 1, got {n}")


def build_path(n: int) -> Graph:
    _require_positive(n)
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def build_star(n: int) -> Graph:
    """Star on ``n`` vertices with centre 0."""
    _require_positive(n)
    return Graph.from_edges(n, [(0, i) for i in range(1, n)])


def build_complete(n: int) -> Graph:
    _require_positive(n)
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def build_cycle(n: int) -> Graph:
    if n < 3:
        raise InvalidParameterError(f"a cycle needs n >= 3, got {n}")
    return Graph.from_edges(n, [(i, (i + 1) % n) if i < n - 1 else (0, n - 1) for i in range(n)])


def build_double_star(n: int, a: int) -> Graph:
    """Double star S_n(a, n-a): centres 0 and 1 joined by an edge.

    Centre 0 carries ``a - 1`` pendants (vertices ``2..a``), centre 1 carries
    ``n - a - 1`` pendants (the remaining vertices).
    """
    if n < 4:
        raise InvalidParameterError(f"double star needs n >= 4, got {n}")
    if not 2 <= a <= n // 2:
        raise InvalidParameterError(f"need 2 <= a <= {n // 2}, got a={a}")
    edges = [(0, 1)]
    edges += [(0, i) for i in range(2, a + 1)]
    edges += [(1, i) for i in range(a + 1, n)]
    return Graph.from_edges(n, edges)


def build_broom(n: int) -> Graph:
    """C_n(n-5): the path 0-1-2-3-4 with ``n - 5`` pendants hung on vertex 2."""
    if n < 6:
        raise InvalidParameterError(f"broom needs n >= 6, got {n}")
    edges = [(i, i + 1) for i in range(4)] + [(2, i) for i in range(5, n)]
    return Graph.from_edges(n, edges)


# Derived graphs


def line_graph(g: Graph) -> Graph:
    """Line graph; vertex ``i`` of the result is ``g.edges[i]``."""
    edges = g.edges
    incident: list[list[int]] = [[] for _ in range(g.n)]
    for i, (u, v) in enumerate(edges):
        incident[u].append(i)
        incident[v].append(i)
    lg_edges = set()
    for inc in incident:
        for x in range(len(inc)):
            for y in range(x + 1, len(inc)):
                lg_edges.add((inc[x], inc[y]))
    return Graph.from_edges(len(edges), sorted(lg_edges))


# Predicates


def two_coloring(g: Graph) -> Optional[list[int]]:
    """Return a proper 2-colouring as a list of 0/1, or ``None`` if none exists."""
    color = [-1] * g.n
    for s in range(g.n):
        if color[s] >= 0:
            continue
        color[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for u in g.adjacency[v]:
                if color[u] < 0:
                    color[u] = 1 - color[v]
                    queue.append(u)
                elif color[u] == color[v]:
                    return None
    return color


def is_bipartite(g: Graph) -> bool:
    return two_coloring(g) is not None


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for u in g.adjacency[v]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return len(seen) == g.n


def is_tree(g: Graph) -> bool:
    return g.n >= 1 and g.m == g.n - 1 and is_connected(g)


def tree_centers(t: Graph) -> list[int]:
    """Centre vertices (one or two, ascending) found by repeated leaf stripping."""
    if not is_tree(t):
        raise InvalidInputError("tree_centers requires a tree")
    if t.n <= 2:
        return list(range(t.n))
    deg = t.degrees()
    layer = [v for v in range(t.n) if deg[v] == 1]
    remaining = t.n
    while remaining > 2:
        remaining -= len(layer)
        nxt = []
        for v in layer:
            for u in t.adjacency[v]:
                deg[u] -= 1
                if deg[u] == 1:
                    nxt.append(u)
        layer = nxt
    return sorted(layer)


def _ahu(t: Graph, root: int) -> str:
    parent = [-1] * t.n
    order = [root]
    parent[root] = root
    for v in order:
        for u in t.adjacency[v]:
            if parent[u] < 0:
                parent[u] = v
                order.append(u)
    codes: list[list[str]] = [[] for _ in range(t.n)]
    label = [""] * t.n
    for v in reversed(order):
        label[v] = "(" + "".join(sorted(codes[v])) + ")"
        if v != root:
            codes[parent[v]].append(label[v])
    return label[root]


def canonical_tree_form(t: Graph) -> str:
    """AHU parenthesis string of ``t`` rooted at its centre (min over two centres)."""
    return min(_ahu(t, c) for c in tree_centers(t))


def is_isomorphic_tree(t1: Graph, t2: Graph) -> bool:
    if not (is_tree(t1) and is_tree(t2)):
        raise InvalidInputError("is_isomorphic_tree requires two trees")
    if t1.n != t2.n or sorted(t1.degrees()) != sorted(t2.degrees()):
        return False
    return canonical_tree_form(t1) == canonical_tree_form(t2)


def tree_from_parents(parents: Iterable[int]) -> Graph:
    """Tree from a parent array where the root has parent -1."""
    parents = list(parents)
    return Graph.from_edges(len(parents), [(p, v) if p < v else (v, p)
                                           for v, p in enumerate(parents) if p >= 0])


def tree_from_prufer(seq: list[int]) -> Graph:
    n = len(seq) + 2
    degree = [1] * n
    for x in seq:
        if not 0 <= x < n:
            raise InvalidParameterError(f"Pruefer entry {x} out of range")
        degree[x] += 1
    edges = []
    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.append((min(leaf, x), max(leaf, x)))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    u, v = heapq.heappop(leaves), heapq.heappop(leaves)
    edges.append((u, v))
    return Graph.from_edges(n, edges)


# Text formats


def parse_edgelist(text: str) -> Graph:
    """Parse the ``n m`` header + ``u v`` lines format.  ``#`` lines are comments."""
    header = None
    edges: list[Edge] = []
    seen: set[Edge] = set()
    last_line = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        last_line = lineno
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        tokens, cols = [], []
        col = 0
        for tok in raw.split():
            col = raw.index(tok, col)
            tokens.append(tok)
            cols.append(col + 1)
            col += len(tok)
        if len(tokens) != 2:
            raise GraphFormatError(f"expected 2 integers, found {len(tokens)} tokens",
                                   lineno, cols[min(2, len(cols) - 1)])
        values = []
        for tok, c in zip(tokens, cols):
            try:
                values.append(int(tok))
            except ValueError:
                raise GraphFormatError(f"not an integer: {tok!r}", lineno, c) from None
        if header is None:
            if values[0] < 0 or values[1] < 0:
                raise GraphFormatError("n and m must be nonnegative", lineno, 1)
            header = values
            continue
        n = header[0]
        u, v = values
        for val, c in ((u, cols[0]), (v, cols[1])):
            if not 0 <= val < n:
                raise GraphFormatError(f"vertex {val} out of range [0, {n})", lineno, c)
        if u == v:
            raise GraphFormatError(f"self-loop at vertex {u}", lineno, cols[0])
        key = (min(u, v), max(u, v))
        if key in seen:
            raise GraphFormatError(f"duplicate edge {key}", lineno, cols[0])
        seen.add(key)
        edges.append(key)
    if header is None:
        raise GraphFormatError("missing 'n m' header", max(last_line, 1), 1)
    if len(edges) != header[1]:
        raise GraphFormatError(f"header declares {header[1]} edges, found {len(edges)}",
                               max(last_line, 1), 1)
    return Graph.from_edges(header[0], edges)


def format_edgelist(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"] + [f"{u} {v}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


def parse_graph6(text: str) -> Graph:
    """Decode a headerless graph6 string with n <= 62."""
    s = text.strip()
    if not s:
        raise GraphFormatError("empty graph6 string", 1, 1)
    for i, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise GraphFormatError(f"invalid graph6 character {ch!r}", 1, i + 1)
    n = ord(s[0]) - 63
    if n == 63:
        raise GraphFormatError("multi-byte size field (n > 62) is not supported", 1, 1)
    nbits = n * (n - 1) // 2
    nbytes = -(-nbits // 6)
    if len(s) != 1 + nbytes:
        raise GraphFormatError(f"expected {1 + nbytes} bytes for n={n}, got {len(s)}",
                               1, min(len(s), 1 + nbytes) + 1)
    bits = []
    for ch in s[1:]:
        val = ord(ch) - 63
        bits.extend((val >> (5 - k)) & 1 for k in range(6))
    if any(bits[nbits:]):
        raise GraphFormatError("nonzero padding bits", 1, len(s))
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                edges.append((i, j))
            k += 1
    return Graph.from_edges(n, edges)
