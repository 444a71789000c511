"""Seeded sampling verifications behind the ``verify-*`` commands."""

from __future__ import annotations

from .graph_core import build_cycle, line_graph
from .rng import SplitMix64, random_tree
from .spectral import (
    check_line_graph_identity,
    compare_lee,
    laplacian_estrada_index,
    spectral_moments_walks,
)
from .transforms import find_sigma_sites, sigma_transform

IDENTITY_REL_TOL = 1e-8


def verify_identity(samples: int = 200, n_min: int = 4, n_max: int = 40, seed: int = 42,
                    even_cycles: bool = True, tol: float = IDENTITY_REL_TOL) -> dict:
    """LEE(G) = n - m + e^2 EE(L(G)) on random trees and on even cycles up to ``n_max``."""
    rng = SplitMix64(seed)
    worst = 0.0
    failures = []
    for i in range(samples):
        t = random_tree(rng, rng.randint(n_min, n_max))
        rep = check_line_graph_identity(t)
        worst = max(worst, rep["rel_err"])
        if not rep["rel_err"] < tol:
            failures.append({"sample": i, **rep})
    cycles = list(range(4, n_max + 1, 2)) if even_cycles else []
    for n in cycles:
        rep = check_line_graph_identity(build_cycle(n))
        worst = max(worst, rep["rel_err"])
        if not rep["rel_err"] < tol:
            failures.append({"cycle": n, **rep})
    return {"check": "identity", "seed": seed, "samples": samples, "n_min": n_min,
            "n_max": n_max, "even_cycles": len(cycles), "tolerance": tol,
            "max_rel_err": worst, "failures": failures, "ok": not failures}


def _random_site_pair(rng: SplitMix64, n_min: int, n_max: int):
    while True:
        g = random_tree(rng, rng.randint(n_min, n_max))
        sites = find_sigma_sites(g)
        if sites:
            site = rng.choice(sites)
            return g, site, sigma_transform(g, site)


def moment_domination(g, g2, K: int = 10) -> tuple[bool, bool]:
    """``(M_k(L(g2)) >= M_k(L(g)) for all k <= K, strict for some k)``."""
    before = spectral_moments_walks(line_graph(g), K).counts
    after = spectral_moments_walks(line_graph(g2), K).counts
    return (all(b >= a for a, b in zip(before, after)),
            any(b > a for a, b in zip(before, after)))


def verify_sigma(samples: int = 500, n_max: int = 20, moment_samples: int = 100,
                 moment_n_max: int = 10, seed: int = 42, n_min: int = 4) -> dict:
    """LEE strictly increases under a random sigma transform; line-graph moments dominate."""
    rng = SplitMix64(seed)
    failures = []
    min_rel_margin = float("inf")
    exact_decisions = 0
    for i in range(samples):
        g, site, g2 = _random_site_pair(rng, n_min, n_max)
        before, after = laplacian_estrada_index(g), laplacian_estrada_index(g2)
        sign, exact = compare_lee(g2, g, after, before)
        exact_decisions += exact
        min_rel_margin = min(min_rel_margin, (after - before) / after)
        if sign <= 0:
            failures.append({"sample": i, "n": g.n, "v": site.v, "u": site.u,
                             "lee_before": before, "lee_after": after})
    for i in range(moment_samples):
        g, site, g2 = _random_site_pair(rng, n_min, moment_n_max)
        dominated, strict = moment_domination(g, g2)
        if not (dominated and strict):
            failures.append({"moment_sample": i, "n": g.n, "v": site.v, "u": site.u,
                             "dominated": dominated, "strict": strict})
    return {"check": "sigma", "seed": seed, "samples": samples, "n_max": n_max,
            "moment_samples": moment_samples, "moment_n_max": moment_n_max,
            "strict_increases": samples - sum("sample" in f for f in failures),
            "min_rel_margin": min_rel_margin if samples else None,
            "exact_decisions": exact_decisions, "failures": failures, "ok": not failures}
