"""Exhaustive generation of free trees and LEE rankings over them.

Free trees are produced as canonical level sequences (depths of a preorder
walk of the tree rooted at its centre) using the Wright-Richmond-Odlyzko-McKay
successor rule on top of Beyer-Hedetniemi rooted-tree generation.  Generation
starts at the path and ends at the star; consecutive sequences are strictly
decreasing in lexicographic order.

Ranking evaluates the Laplacian Estrada index of every tree in fixed-size
chunks, optionally across worker processes.  The result depends only on the
chunk contents, never on the worker count.
"""

from __future__ import annotations

import heapq
import logging
import os
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, Optional

import numpy as np

from .errors import InvalidParameterError
from .graph_core import (
    Graph,
    build_broom,
    build_double_star,
    build_path,
    build_star,
    canonical_tree_form,
    tree_from_parents,
)
from .spectral import FLOAT_MARGIN_REL, compare_lee_exact, lee_of_parent_arrays

log = logging.getLogger(__name__)

CHUNK_SIZE = 4096


# Generation


def _next_rooted(seq: list[int], p: Optional[int] = None) -> Optional[list[int]]:
    """Beyer-Hedetniemi successor (lexicographically previous rooted tree)."""
    if p is None:
        p = len(seq) - 1
        while seq[p] == 1:
            p -= 1
    if p == 0:
        return None
    q = p - 1
    while seq[q] != seq[p] - 1:
        q -= 1
    out = list(seq)
    for i in range(p, len(out)):
        out[i] = out[i - p + q]
    return out


def _split(seq: list[int]) -> tuple[list[int], list[int]]:
    """Split off the first subtree of the root: ``(left, rest)``."""
    m = len(seq)
    for i in range(2, len(seq)):
        if seq[i] == 1:
            m = i
            break
    left = [x - 1 for x in seq[1:m]]
    rest = [0] + seq[m:]
    return left, rest


def _to_free(seq: list[int]) -> list[int]:
    """Return ``seq`` if it is a centre-rooted canonical free tree, else the next candidate."""
    left, rest = _split(seq)
    lh, rh = max(left), max(rest)
    valid = rh >= lh
    if valid and rh == lh:
        if len(left) > len(rest) or (len(left) == len(rest) and left > rest):
            valid = False
    if valid:
        return seq
    p = len(left)
    cand = _next_rooted(seq, p)
    if seq[p] > 2:
        new_left, _ = _split(cand)
        tail = list(range(1, max(new_left) + 2))
        cand[-len(tail):] = tail
    return cand


def level_sequences(n: int) -> Iterator[tuple[int, ...]]:
    """Canonical level sequence of every free tree on ``n`` vertices, exactly once."""
    if n < 1:
        raise InvalidParameterError(f"n must be >= 1, got {n}")
    if n == 1:
        yield (0,)
        return
    if n == 2:
        yield (0, 1)
        return
    seq: Optional[list[int]] = list(range(n // 2 + 1)) + list(range(1, (n + 1) // 2))
    while seq is not None:
        seq = _to_free(seq)
        if seq is None:
            return
        yield tuple(seq)
        seq = _next_rooted(seq)


def parents_from_levels(levels) -> list[int]:
    parents = [-1] * len(levels)
    stack: list[int] = []
    for i, depth in enumerate(levels):
        del stack[depth:]
        if stack:
            parents[i] = stack[-1]
        stack.append(i)
    return parents


def tree_from_levels(levels) -> Graph:
    return tree_from_parents(parents_from_levels(levels))


def generate_trees(n: int) -> Iterator[Graph]:
    for seq in level_sequences(n):
        yield tree_from_levels(seq)


def count_trees(n: int) -> int:
    return sum(1 for _ in level_sequences(n))


# Ranking


@dataclass
class RankedTree:
    levelseq: tuple[int, ...]
    lee: float
    index: int  # position in generation order
    name: Optional[str] = None

    def graph(self) -> Graph:
        return tree_from_levels(self.levelseq)


@dataclass
class TreeRanking:
    """Extreme trees of one vertex count, ordered by LEE.

    ``top`` is descending, ``bottom`` ascending.  ``top_margins[i]`` is
    ``LEE(top[i]) - LEE(top[i+1])``, likewise ``bottom_margins`` upwards.
    ``ambiguous`` lists level-sequence pairs re-decided by the exact route;
    ``ties`` those the exact route could not separate.
    """

    n: int
    count: int
    top: list[RankedTree]
    bottom: list[RankedTree]
    top_margins: list[float] = field(default_factory=list)
    bottom_margins: list[float] = field(default_factory=list)
    ambiguous: list[tuple[tuple[int, ...], tuple[int, ...]]] = field(default_factory=list)
    ties: list[tuple[tuple[int, ...], tuple[int, ...]]] = field(default_factory=list)
    runner_up_top: Optional[RankedTree] = None
    runner_up_bottom: Optional[RankedTree] = None

    def to_json(self) -> dict:
        def entry(t: RankedTree) -> dict:
            return {"levelseq": " ".join(map(str, t.levelseq)), "lee": t.lee, "name": t.name}

        def pair(p) -> list[str]:
            return [" ".join(map(str, s)) for s in p]

        return {
            "n": self.n,
            "count": self.count,
            "top": [entry(t) for t in self.top],
            "bottom": [entry(t) for t in self.bottom],
            "top_margins": self.top_margins,
            "bottom_margins": self.bottom_margins,
            "ambiguous": [pair(p) for p in self.ambiguous],
            "ties": [pair(p) for p in self.ties],
        }


def named_trees(n: int) -> dict[str, str]:
    """Canonical forms of the named extremal families, keyed by canonical string."""
    named = {canonical_tree_form(build_path(n)): "P",
             canonical_tree_form(build_star(n)): "S"}
    if n >= 4:
        for a in (2, 3):
            if a <= n // 2:
                named.setdefault(canonical_tree_form(build_double_star(n, a)), f"S({a},{n - a})")
    if n >= 6:
        named.setdefault(canonical_tree_form(build_broom(n)), f"C({n - 5})")
    return named


def _lee_chunk(task: tuple[int, np.ndarray]) -> tuple[int, np.ndarray]:
    start, levels = task
    parents = np.empty(levels.shape, dtype=np.int64)
    for row in range(levels.shape[0]):
        parents[row] = parents_from_levels(levels[row].tolist())
    return start, lee_of_parent_arrays(parents)


def _chunks(n: int, size: int) -> Iterator[tuple[int, np.ndarray]]:
    buf: list[tuple[int, ...]] = []
    start = 0
    for seq in level_sequences(n):
        buf.append(seq)
        if len(buf) == size:
            yield start, np.array(buf, dtype=np.int8)
            start += size
            buf = []
    if buf:
        yield start, np.array(buf, dtype=np.int8)


def _evaluate(n: int, threads: int) -> Iterator[tuple[int, np.ndarray, np.ndarray]]:
    """Yield ``(start, levels, lee_values)`` per chunk in generation order."""
    if threads <= 1:
        for start, levels in _chunks(n, CHUNK_SIZE):
            yield start, levels, _lee_chunk((start, levels))[1]
        return
    with ProcessPoolExecutor(max_workers=threads) as pool:
        pending: deque = deque()
        for task in _chunks(n, CHUNK_SIZE):
            pending.append((task[1], pool.submit(_lee_chunk, task)))
            if len(pending) >= 2 * threads:
                levels, fut = pending.popleft()
                start, values = fut.result()
                yield start, levels, values
        while pending:
            levels, fut = pending.popleft()
            start, values = fut.result()
            yield start, levels, values


def _resolve_order(items: list[RankedTree], descending: bool, ranking: TreeRanking) -> None:
    """Insertion sort with exact re-decision of near ties, in place."""
    sign_wanted = 1 if descending else -1
    for i in range(1, len(items)):
        j = i
        while j > 0:
            hi, lo = items[j - 1], items[j]
            diff = hi.lee - lo.lee
            if abs(diff) > FLOAT_MARGIN_REL * max(hi.lee, lo.lee):
                sign = 1 if diff > 0 else -1
            else:
                sign = compare_lee_exact(hi.graph(), lo.graph())
                ranking.ambiguous.append((hi.levelseq, lo.levelseq))
                if sign == 0:
                    ranking.ties.append((hi.levelseq, lo.levelseq))
            if sign == sign_wanted or sign == 0:
                break
            items[j - 1], items[j] = lo, hi
            j -= 1


def rank_trees(n: int, top_k: int = 4, bottom_k: int = 1, threads: int = 1) -> TreeRanking:
    """Rank all free trees on ``n`` vertices by LEE, keeping the extremes.

    One extra tree beyond ``top_k``/``bottom_k`` is kept so that the last
    reported margin (and hence uniqueness of the last position) is known.
    """
    if n < 4:
        raise InvalidParameterError(f"n must be >= 4, got {n}")
    if top_k < 1 or bottom_k < 1:
        raise InvalidParameterError("top_k and bottom_k must be >= 1")
    keep_top, keep_bottom = top_k + 1, bottom_k + 1
    # heaps of (key, -index, levels) so equal values keep the earlier tree
    top_heap: list = []
    bottom_heap: list = []
    count = 0
    for start, levels, values in _evaluate(n, threads):
        count += len(values)
        k_top = min(keep_top, len(values))
        k_bot = min(keep_bottom, len(values))
        for i in np.argsort(-values, kind="stable")[:k_top]:
            item = (float(values[i]), -(start + int(i)), tuple(levels[i].tolist()))
            if len(top_heap) < keep_top:
                heapq.heappush(top_heap, item)
            else:
                heapq.heappushpop(top_heap, item)
        for i in np.argsort(values, kind="stable")[:k_bot]:
            item = (-float(values[i]), -(start + int(i)), tuple(levels[i].tolist()))
            if len(bottom_heap) < keep_bottom:
                heapq.heappush(bottom_heap, item)
            else:
                heapq.heappushpop(bottom_heap, item)

    names = named_trees(n)
    ranking = TreeRanking(n=n, count=count, top=[], bottom=[])

    def make(lee: float, neg_index: int, levels: tuple[int, ...]) -> RankedTree:
        t = RankedTree(levels, lee, -neg_index)
        t.name = names.get(canonical_tree_form(t.graph()))
        return t

    top = [make(v, i, s) for v, i, s in sorted(top_heap, key=lambda x: (-x[0], -x[1]))]
    bottom = [make(-v, i, s) for v, i, s in sorted(bottom_heap, key=lambda x: (-x[0], -x[1]))]
    _resolve_order(top, True, ranking)
    _resolve_order(bottom, False, ranking)
    ranking.top_margins = [a.lee - b.lee for a, b in zip(top, top[1:])]
    ranking.bottom_margins = [b.lee - a.lee for a, b in zip(bottom, bottom[1:])]
    ranking.top = top[:top_k]
    ranking.bottom = bottom[:bottom_k]
    ranking.runner_up_top = top[top_k] if len(top) > top_k else None
    ranking.runner_up_bottom = bottom[bottom_k] if len(bottom) > bottom_k else None
    return ranking


def _strictly_separated(ranking: TreeRanking, first: RankedTree, second: RankedTree,
                        margin: float) -> bool:
    pairs = {(first.levelseq, second.levelseq), (second.levelseq, first.levelseq)}
    if pairs & set(ranking.ties):
        return False
    if margin > FLOAT_MARGIN_REL * max(first.lee, second.lee):
        return True
    # near tie: ordered by the exact route when it was consulted
    return bool(pairs & set(ranking.ambiguous))


def verify_extremal(n_max: int, n_min: int = 5, threads: int = 1) -> dict:
    """Check the extremal LEE ordering over all trees for ``n_min <= n <= n_max``.

    For each n: P_n is the unique minimum, S_n the unique maximum and
    S_n(2, n-2) the unique second maximum; for n >= 6 also S_n(3, n-3) third and
    C_n(n-5) fourth, each unique.  Violations are reported, not raised.
    """
    if n_max < 5:
        raise InvalidParameterError(f"n_max must be >= 5, got {n_max}")
    per_n = []
    failures = []
    for n in range(max(5, n_min), n_max + 1):
        expected = ["S", f"S(2,{n - 2})"]
        if n >= 6:
            expected += [f"S(3,{n - 3})", f"C({n - 5})"]
        r = rank_trees(n, top_k=len(expected), bottom_k=1, threads=threads)
        problems = []
        for pos, want in enumerate(expected):
            if pos >= len(r.top):
                problems.append(f"position {pos + 1} missing")
                continue
            t = r.top[pos]
            if t.name != want:
                problems.append(f"position {pos + 1}: expected {want}, got tree "
                                f"{' '.join(map(str, t.levelseq))}")
            nxt = r.runner_up_top if pos + 1 == len(r.top) else r.top[pos + 1]
            if nxt is not None and not _strictly_separated(r, t, nxt, r.top_margins[pos]):
                problems.append(f"position {pos + 1} not unique")
        low = r.bottom[0]
        if low.name != "P":
            problems.append(f"minimum: expected P, got tree {' '.join(map(str, low.levelseq))}")
        nxt = r.runner_up_bottom
        if nxt is not None and not _strictly_separated(r, nxt, low, r.bottom_margins[0]):
            problems.append("minimum not unique")
        per_n.append({
            "n": n,
            "count": r.count,
            "top": [{"name": t.name, "levelseq": " ".join(map(str, t.levelseq)), "lee": t.lee}
                    for t in r.top],
            "min_lee": low.lee,
            "top_margins": r.top_margins,
            "min_margin": r.bottom_margins[0] if r.bottom_margins else None,
            "exact_resolutions": len(r.ambiguous),
            "ok": not problems,
            "problems": problems,
        })
        failures += [f"n={n}: {p}" for p in problems]
        log.info("n=%d: %d trees, %s", n, r.count, "ok" if not problems else problems)
    return {"n_min": max(5, n_min), "n_max": n_max, "ok": not failures,
            "results": per_n, "failures": failures}


def default_threads() -> int:
    return os.cpu_count() or 1
