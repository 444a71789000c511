"""Brute-force oracles, deliberately independent of the library's code paths."""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

import numpy as np


def edge_set(g) -> set[tuple[int, int]]:
    return {(min(u, v), max(u, v)) for u in range(g.n) for v in g.adjacency[u]}


def count_closed_walks(g, k: int) -> int:
    """Count closed walks of length ``k`` by explicit depth-first enumeration."""
    total = 0

    def walk(start, v, remaining):
        nonlocal total
        if remaining == 0:
            total += v == start
            return
        for u in g.adjacency[v]:
            walk(start, u, remaining - 1)

    for s in range(g.n):
        walk(s, s, k)
    return total


def isomorphic_by_permutation(g1, g2) -> bool:
    if g1.n != g2.n or g1.m != g2.m:
        return False
    e1, e2 = edge_set(g1), edge_set(g2)
    for perm in itertools.permutations(range(g1.n)):
        if all((min(perm[u], perm[v]), max(perm[u], perm[v])) in e2 for u, v in e1):
            return True
    return False


def rooted_code(adj, root, parent=-1) -> str:
    return "(" + "".join(sorted(rooted_code(adj, c, root) for c in adj[root] if c != parent)) + ")"


def _eccentricity(adj, s) -> int:
    dist = {s: 0}
    frontier = [s]
    while frontier:
        nxt = []
        for v in frontier:
            for u in adj[v]:
                if u not in dist:
                    dist[u] = dist[v] + 1
                    nxt.append(u)
        frontier = nxt
    return max(dist.values())


def free_tree_code(n: int, edges) -> str:
    """Minimum rooted code over the minimum-eccentricity vertices (brute-force centres)."""
    adj = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    ecc = [_eccentricity(adj, r) for r in range(n)]
    best = min(ecc)
    return min(rooted_code(adj, r) for r in range(n) if ecc[r] == best)


def prufer_decode_edges(seq, n):
    """Linear-time decode with a moving leaf pointer."""
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    ptr = degree.index(1)
    leaf = ptr
    edges = []
    for x in seq:
        edges.append((leaf, x))
        degree[x] -= 1
        if x < ptr and degree[x] == 1:
            leaf = x
        else:
            ptr += 1
            while degree[ptr] != 1:
                ptr += 1
            leaf = ptr
    edges.append((leaf, n - 1))
    return edges


def _farthest(adj, s):
    parent = {s: -1}
    queue = [s]
    for v in queue:
        for u in adj[v]:
            if u not in parent:
                parent[u] = v
                queue.append(u)
    return queue[-1], parent


def diameter_tree_code(n: int, edges) -> str:
    """Centre-rooted code with centres taken from the middle of a longest path."""
    adj = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    a, _ = _farthest(adj, 0)
    b, parent = _farthest(adj, a)
    path = [b]
    while path[-1] != a:
        path.append(parent[path[-1]])
    d = len(path) - 1
    centres = path[d // 2: d // 2 + 1 + d % 2]
    return min(rooted_code(adj, c) for c in centres)


def count_free_trees_prufer(n: int) -> int:
    """Decode every Pruefer sequence and deduplicate up to isomorphism."""
    if n <= 2:
        return 1
    codes = set()
    for seq in itertools.product(range(n), repeat=n - 2):
        codes.add(diameter_tree_code(n, prufer_decode_edges(seq, n)))
    return len(codes)


def free_trees_by_growth(n_max: int) -> dict[int, set[str]]:
    """Second generator: grow every tree by one leaf at every vertex, dedupe by code.

    Trees are stored as edge lists keyed by their centre-rooted canonical code.
    """
    levels = {1: {free_tree_code(1, []): []}}
    for n in range(2, n_max + 1):
        nxt = {}
        for edges in levels[n - 1].values():
            for v in range(n - 1):
                new = edges + [(v, n - 1)]
                code = free_tree_code(n, new)
                if code not in nxt:
                    nxt[code] = new
        levels[n] = nxt
    return {n: set(d) for n, d in levels.items()}


def odd_cycle_masks(n: int, edge_index: dict) -> list[int]:
    """Edge bitmasks of every odd simple cycle on ``n`` labelled vertices."""
    masks = set()
    for length in range(3, n + 1, 2):
        for verts in itertools.permutations(range(n), length):
            if verts[0] != min(verts) or verts[1] > verts[-1]:
                continue
            mask = 0
            for i in range(length):
                a, b = verts[i], verts[(i + 1) % length]
                mask |= 1 << edge_index[(min(a, b), max(a, b))]
            masks.add(mask)
    return sorted(masks)


def charpoly_eigs(matrix) -> list[float]:
    """Eigenvalues from the exact integer characteristic polynomial (Faddeev-LeVerrier)."""
    a = [[Fraction(int(x)) for x in row] for row in np.asarray(matrix)]
    n = len(a)
    coeffs = [Fraction(1)]
    mk = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I ; c_{n-k} = -tr(A M_k) / k
        prod = [[sum(a[i][l] * mk[l][j] for l in range(n)) for j in range(n)] for i in range(n)]
        mk = [[prod[i][j] + (coeffs[-1] if i == j else 0) for j in range(n)] for i in range(n)]
        am = [[sum(a[i][l] * mk[l][j] for l in range(n)) for j in range(n)] for i in range(n)]
        coeffs.append(-sum(am[i][i] for i in range(n)) / k)
    roots = np.roots([float(c) for c in coeffs])
    return sorted(roots.real.tolist(), reverse=True)


def lee_closed(values) -> float:
    return math.fsum(math.exp(x) for x in values)


def _rooted_aut(adj, root, parent=-1) -> tuple[str, int]:
    kids = [_rooted_aut(adj, c, root) for c in adj[root] if c != parent]
    aut = 1
    mult: dict[str, int] = {}
    for code, a in kids:
        aut *= a
        mult[code] = mult.get(code, 0) + 1
    for k in mult.values():
        aut *= math.factorial(k)
    return "(" + "".join(sorted(c for c, _ in kids)) + ")", aut


def tree_automorphisms(n: int, edges) -> int:
    """Size of the automorphism group of a free tree."""
    adj = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    ecc = [_eccentricity(adj, r) for r in range(n)]
    centres = [r for r in range(n) if ecc[r] == min(ecc)]
    if len(centres) == 1:
        return _rooted_aut(adj, centres[0])[1]
    c1, c2 = centres
    code1, aut1 = _rooted_aut(adj, c1, c2)
    code2, aut2 = _rooted_aut(adj, c2, c1)
    return aut1 * aut2 * (2 if code1 == code2 else 1)
