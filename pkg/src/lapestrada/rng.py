"""Portable seeded randomness: SplitMix64 and uniform random labelled trees.

The generator is fixed so that seeded runs reproduce bit-for-bit on every
platform and Python version.
"""

from __future__ import annotations

from .graph_core import Graph, tree_from_prufer

_MASK = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int = 42):
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def randbelow(self, k: int) -> int:
        """Uniform integer in ``[0, k)`` by rejection (no modulo bias)."""
        if k <= 0:
            raise ValueError("k must be positive")
        limit = (1 << 64) - ((1 << 64) % k)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % k

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in ``[lo, hi]``."""
        return lo + self.randbelow(hi - lo + 1)

    def choice(self, items):
        return items[self.randbelow(len(items))]


def random_tree(rng: SplitMix64, n: int) -> Graph:
    """Uniformly random labelled tree on ``n >= 2`` vertices via a Pruefer sequence."""
    if n < 2:
        raise ValueError("random_tree needs n >= 2")
    if n == 2:
        return Graph.from_edges(2, [(0, 1)])
    return tree_from_prufer([rng.randbelow(n) for _ in range(n - 2)])
