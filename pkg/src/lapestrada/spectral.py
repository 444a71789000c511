"""Adjacency/Laplacian spectra, Estrada-type indices and closed-walk moments.

The dense eigensolver is a cyclic Jacobi iteration compiled with numba.  Exact
spectral moments are counted with Python integers so they never overflow,
which makes the moment routes usable as high-precision oracles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numba
import numpy as np

from .errors import NumericalFailure, PreconditionError
from .graph_core import Graph, is_bipartite, line_graph

JACOBI_REL_TOL = 1e-13
JACOBI_MAX_SWEEPS = 100
E_SQUARED = math.exp(2.0)


@dataclass(frozen=True)
class Spectrum:
    values: tuple[float, ...]
    kind: str  # "adjacency" or "laplacian"

    def __iter__(self):
        return iter(self.values)

    def __len__(self):
        return len(self.values)


@dataclass(frozen=True)
class MomentSequence:
    """Exact closed-walk counts ``counts[k] = M_k`` for ``k = 0..K``."""

    counts: tuple[int, ...]

    @property
    def K(self) -> int:
        return len(self.counts) - 1

    def __getitem__(self, k: int) -> int:
        return self.counts[k]


# Matrices


def adjacency_matrix(g: Graph) -> np.ndarray:
    a = np.zeros((g.n, g.n))
    for u, v in g.edges:
        a[u, v] = a[v, u] = 1.0
    return a


def laplacian_matrix(g: Graph) -> np.ndarray:
    lap = -adjacency_matrix(g)
    for v in range(g.n):
        lap[v, v] = g.degree(v)
    return lap


# Eigensolver


@numba.njit(cache=True)
def _jacobi_inplace(a, rel_tol, max_sweeps):
    """Cyclic Jacobi on a symmetric matrix, overwritten in place.

    Returns the number of sweeps used, or -1 if the budget ran out.
    """
    n = a.shape[0]
    fro = 0.0
    for i in range(n):
        for j in range(n):
            fro += a[i, j] * a[i, j]
    threshold = rel_tol * max(1.0, math.sqrt(fro))
    for sweep in range(max_sweeps + 1):
        off = 0.0
        for i in range(n):
            for j in range(i + 1, n):
                off += a[i, j] * a[i, j]
        if math.sqrt(2.0 * off) < threshold:
            return sweep
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                tau = s / (1.0 + c)
                a[p, p] -= t * apq
                a[q, q] += t * apq
                a[p, q] = 0.0
                a[q, p] = 0.0
                for r in range(n):
                    if r != p and r != q:
                        arp = a[r, p]
                        arq = a[r, q]
                        a[r, p] = arp - s * (arq + tau * arp)
                        a[r, q] = arq + s * (arp - tau * arq)
                        a[p, r] = a[r, p]
                        a[q, r] = a[r, q]
    return -1


def eigenvalues(matrix: np.ndarray) -> np.ndarray:
    """All eigenvalues of a symmetric matrix, sorted descending.

    Raises :class:`NumericalFailure` if Jacobi does not converge within
    ``JACOBI_MAX_SWEEPS`` sweeps.
    """
    a = np.array(matrix, dtype=np.float64, copy=True)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("eigenvalues expects a square matrix")
    if not np.array_equal(a, a.T):
        raise ValueError("eigenvalues expects a symmetric matrix")
    if a.shape[0] == 0:
        return np.zeros(0)
    sweeps = _jacobi_inplace(a, JACOBI_REL_TOL, JACOBI_MAX_SWEEPS)
    if sweeps < 0:
        raise NumericalFailure(f"Jacobi did not converge in {JACOBI_MAX_SWEEPS} sweeps")
    return np.sort(np.diag(a))[::-1].copy()


def adjacency_spectrum(g: Graph) -> Spectrum:
    return Spectrum(tuple(eigenvalues(adjacency_matrix(g)).tolist()), "adjacency")


def laplacian_spectrum(g: Graph) -> Spectrum:
    return Spectrum(tuple(eigenvalues(laplacian_matrix(g)).tolist()), "laplacian")


def estrada_index(g: Graph) -> float:
    return math.fsum(math.exp(x) for x in adjacency_spectrum(g))


def laplacian_estrada_index(g: Graph) -> float:
    return math.fsum(math.exp(x) for x in laplacian_spectrum(g))


@numba.njit(cache=True)
def _lee_from_parents(parents, out, rel_tol, max_sweeps):
    count, n = parents.shape
    lap = np.empty((n, n))
    for t in range(count):
        lap[:, :] = 0.0
        for v in range(n):
            p = parents[t, v]
            if p >= 0:
                lap[v, p] = -1.0
                lap[p, v] = -1.0
                lap[v, v] += 1.0
                lap[p, p] += 1.0
        if _jacobi_inplace(lap, rel_tol, max_sweeps) < 0:
            return t
        total = 0.0
        for v in range(n):
            total += math.exp(lap[v, v])
        out[t] = total
    return -1


def lee_of_parent_arrays(parents: np.ndarray) -> np.ndarray:
    """Laplacian Estrada index of a batch of trees given as parent arrays.

    ``parents`` has shape ``(count, n)``; the root's entry is -1.  Same solver
    and tolerances as :func:`laplacian_estrada_index`, without per-tree Python
    overhead.
    """
    parents = np.ascontiguousarray(parents, dtype=np.int64)
    out = np.empty(parents.shape[0])
    failed = _lee_from_parents(parents, out, JACOBI_REL_TOL, JACOBI_MAX_SWEEPS)
    if failed >= 0:
        raise NumericalFailure(f"Jacobi did not converge for tree #{failed} of the batch")
    return out


# Moments


def spectral_moments_walks(g: Graph, K: int) -> MomentSequence:
    """Exact ``M_k = trace(A^k)`` for ``k <= K`` in arbitrary-precision integers."""
    if K < 0:
        raise ValueError("K must be nonnegative")
    n = g.n
    counts = [n]
    if K == 0:
        return MomentSequence(tuple(counts))
    # power[i][j] = number of i->j walks of the current length
    power = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    adj = g.adjacency
    for _ in range(K):
        power = [[sum(row[l] for l in adj[j]) for j in range(n)] for row in power]
        counts.append(sum(power[i][i] for i in range(n)))
    return MomentSequence(tuple(counts))


def spectral_moments_eigen(g: Graph, K: int) -> list[float]:
    if K < 0:
        raise ValueError("K must be nonnegative")
    lam = np.array(adjacency_spectrum(g).values)
    return [float(g.n)] + [math.fsum(lam ** k) for k in range(1, K + 1)]


def moment_truncation_order(n: int, degree_bound: int, tol: float) -> int:
    """Smallest K with ``n * d^(K+1) * e^d / (K+1)! < tol``.

    ``d`` bounds the spectral radius; the maximum degree is used throughout.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if n == 0 or degree_bound == 0:
        return 0
    log_n, log_d = math.log(n), math.log(degree_bound)
    log_tol = math.log(tol)
    K = 0
    while log_n + (K + 1) * log_d + degree_bound - math.lgamma(K + 2) >= log_tol:
        K += 1
    return K


def _moment_series(g: Graph, tol: float) -> tuple[MomentSequence, int]:
    d = max(g.degrees(), default=0)
    K = moment_truncation_order(g.n, d, tol)
    return spectral_moments_walks(g, K), K


def estrada_via_moments(g: Graph, tol: float = 1e-12) -> float:
    """``sum_k M_k / k!`` truncated where the analytic tail bound drops below ``tol``."""
    moments, K = _moment_series(g, tol)
    # int / int is correctly rounded even for huge numerators
    return math.fsum(moments[k] / math.factorial(k) for k in range(K + 1))


def _require_bipartite(g: Graph) -> None:
    if not is_bipartite(g):
        raise PreconditionError("graph is not bipartite")


def check_line_graph_identity(g: Graph) -> dict:
    """Compare LEE(G) with ``n - m + e^2 * EE(L(G))``; valid for bipartite G."""
    _require_bipartite(g)
    lhs = laplacian_estrada_index(g)
    rhs = g.n - g.m + E_SQUARED * estrada_index(line_graph(g))
    abs_err = abs(lhs - rhs)
    return {"n": g.n, "m": g.m, "lhs": lhs, "rhs": rhs,
            "abs_err": abs_err, "rel_err": abs_err / abs(lhs) if lhs else abs_err}


def lee_via_line_moments(g: Graph, tol: float = 1e-12) -> float:
    """LEE of a bipartite graph through exact closed-walk counts of its line graph."""
    _require_bipartite(g)
    return g.n - g.m + E_SQUARED * estrada_via_moments(line_graph(g), tol / E_SQUARED)


# Exact comparison used to break near-ties

EXACT_FALLBACK_TOL = 1e-15
FLOAT_MARGIN_REL = 1e-6


def _exact_line_series(g: Graph, tol: float) -> Fraction:
    moments, K = _moment_series(line_graph(g), tol)
    return sum((Fraction(moments[k], math.factorial(k)) for k in range(K + 1)), Fraction(0))


def compare_lee_exact(g1: Graph, g2: Graph, tol: float = EXACT_FALLBACK_TOL) -> int:
    """Sign of ``LEE(g1) - LEE(g2)`` for bipartite graphs via exact moment series.

    Each truncated series is an exact rational within ``tol`` of the true line
    graph Estrada index.  Returns 0 when the difference is inside that slack.
    """
    _require_bipartite(g1)
    _require_bipartite(g2)
    series_diff = _exact_line_series(g1, tol) - _exact_line_series(g2, tol)
    base = (g1.n - g1.m) - (g2.n - g2.m)
    slack = Fraction(2 * tol)
    if base == 0:
        if abs(series_diff) <= slack:
            return 0
        return 1 if series_diff > 0 else -1
    with mpmath.workdps(50):
        e2 = mpmath.exp(2)
        value = base + e2 * mpmath.mpf(series_diff.numerator) / series_diff.denominator
        if abs(value) <= e2 * mpmath.mpf(float(slack)):
            return 0
        return 1 if value > 0 else -1


def compare_lee(g1: Graph, g2: Graph, lee1: float | None = None,
                lee2: float | None = None) -> tuple[int, bool]:
    """Decide ``sign(LEE(g1) - LEE(g2))``.

    Float eigen-route values decide when the relative margin exceeds
    ``FLOAT_MARGIN_REL``; otherwise the exact route re-decides.  Returns
    ``(sign, used_exact)``.
    """
    lee1 = laplacian_estrada_index(g1) if lee1 is None else lee1
    lee2 = laplacian_estrada_index(g2) if lee2 is None else lee2
    diff = lee1 - lee2
    if abs(diff) > FLOAT_MARGIN_REL * max(abs(lee1), abs(lee2)):
        return (1 if diff > 0 else -1), False
    return compare_lee_exact(g1, g2), True
