"""Pendant-migration (sigma) transformation and the chain it induces on trees.

A site is a vertex ``v`` whose neighbours are ``p >= 1`` pendant vertices plus
exactly one further vertex ``u``.  The transform detaches all of ``v``'s
pendants and re-attaches them to ``u``, which leaves ``v`` itself as a pendant
of ``u``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidInputError, InvalidParameterError
from .graph_core import Graph, is_tree, tree_centers


@dataclass(frozen=True)
class SigmaSite:
    v: int
    u: int
    pendants: tuple[int, ...]

    @property
    def p(self) -> int:
        return len(self.pendants)


def _site_at(g: Graph, v: int) -> SigmaSite | None:
    pendants = [w for w in g.adjacency[v] if g.degree(w) == 1]
    others = [w for w in g.adjacency[v] if g.degree(w) != 1]
    if pendants and len(others) == 1:
        return SigmaSite(v, others[0], tuple(pendants))
    return None


def find_sigma_sites(g: Graph) -> list[SigmaSite]:
    """Every vertex admitting a sigma transform, in increasing vertex order."""
    return [s for v in range(g.n) if (s := _site_at(g, v)) is not None]


def sigma_transform(g: Graph, site: SigmaSite) -> Graph:
    if not 0 <= site.v < g.n or _site_at(g, site.v) != site:
        raise InvalidParameterError(f"{site} is not a valid sigma site of this graph")
    moved = set(site.pendants)
    edges = [(a, b) for a, b in g.edges if not (a == site.v and b in moved)
             and not (b == site.v and a in moved)]
    edges += [(min(site.u, w), max(site.u, w)) for w in site.pendants]
    return Graph.from_edges(g.n, edges)


def deepest_leaf_site(t: Graph) -> SigmaSite | None:
    """Site at the parent of a deepest leaf, rooting ``t`` at its (smaller) centre.

    Among parents of deepest leaves the smallest vertex index wins.  Returns
    ``None`` once ``t`` is a star.
    """
    root = tree_centers(t)[0]
    depth = [-1] * t.n
    parent = [-1] * t.n
    depth[root] = 0
    order = [root]
    for v in order:
        for w in t.adjacency[v]:
            if depth[w] < 0:
                depth[w] = depth[v] + 1
                parent[w] = v
                order.append(w)
    deepest = max(depth)
    if deepest <= 1:
        return None
    v = min(parent[w] for w in range(t.n) if depth[w] == deepest)
    site = _site_at(t, v)
    assert site is not None and site.u == parent[v]
    return site


def sigma_chain_to_star(t: Graph) -> list[Graph]:
    """Trees ``T_0 = t, T_1, ..., T_k`` ending at a star; ``T_{i+1} = sigma(T_i)``."""
    if not is_tree(t):
        raise InvalidInputError("sigma_chain_to_star requires a tree")
    if t.n < 3:
        raise InvalidInputError("sigma_chain_to_star requires n >= 3")
    chain = [t]
    while (site := deepest_leaf_site(chain[-1])) is not None:
        chain.append(sigma_transform(chain[-1], site))
    return chain
