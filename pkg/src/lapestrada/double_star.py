"""Closed-form Laplacian analysis of double stars S_n(a, b).

The Laplacian characteristic polynomial of S_n(a, b) factors as
``(-1)^n x (x - 1)^(n-4) f(x)`` with the cubic
``f(x) = x^3 - (n+2) x^2 + (n + 2 + ab) x - n``.  Everything sign-related is
evaluated exactly; floats appear only in the final root polish and the
exponentials.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from .errors import InvalidParameterError
from .graph_core import build_double_star
from .spectral import FLOAT_MARGIN_REL, compare_lee_exact

_BISECTION_STEPS = 60


@dataclass(frozen=True)
class DoubleStarParams:
    n: int
    a: int

    def __post_init__(self):
        if self.n < 5:
            raise InvalidParameterError(f"double-star analysis needs n >= 5, got {self.n}")
        if not 2 <= self.a <= self.n // 2:
            raise InvalidParameterError(f"need 2 <= a <= {self.n // 2}, got a={self.a}")

    @property
    def b(self) -> int:
        return self.n - self.a

    @property
    def small_case(self) -> bool:
        """True for n = 5, where the ordering argument is not claimed."""
        return self.n <= 5

    @property
    def in_bracket_range(self) -> bool:
        """True when ``2 <= a <= n/2 - 1``, where the closed root brackets are proved."""
        return 2 * self.a <= self.n - 2

    def cubic(self) -> tuple[int, int, int, int]:
        """Coefficients of ``f`` from the constant term up."""
        n = self.n
        return (-n, n + 2 + self.a * self.b, -(n + 2), 1)


@dataclass(frozen=True)
class CubicRoots:
    x1: float
    x2: float
    x3: float
    brackets: tuple[tuple[Fraction, Fraction], ...]  # for x1, x2, x3

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.x1, self.x2, self.x3)


def _poly_mul(p: list[int], q: list[int]) -> list[int]:
    out = [0] * (len(p) + len(q) - 1)
    for i, x in enumerate(p):
        for j, y in enumerate(q):
            out[i + j] += x * y
    return out


def char_poly_coeffs(p: DoubleStarParams) -> list[int]:
    """Integer coefficients of ``det(L - xI)``, ``coeffs[k]`` multiplying ``x^k``."""
    poly = [0, 1]  # x
    for _ in range(p.n - 4):
        poly = _poly_mul(poly, [-1, 1])
    poly = _poly_mul(poly, list(p.cubic()))
    sign = -1 if p.n % 2 else 1
    return [sign * c for c in poly]


def cubic_sign_probe(p: DoubleStarParams, x):
    """Evaluate ``f`` at ``x``; exact (int/Fraction) for rational ``x``."""
    if isinstance(x, Rational):
        x = Fraction(x)
    c0, c1, c2, c3 = p.cubic()
    return ((c3 * x + c2) * x + c1) * x + c0


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def _bisect(p: DoubleStarParams, lo: Fraction, hi: Fraction) -> float:
    flo, fhi = cubic_sign_probe(p, lo), cubic_sign_probe(p, hi)
    if flo == 0:
        return float(lo)
    if fhi == 0:
        return float(hi)
    if _sign(flo) == _sign(fhi):
        raise ArithmeticError(f"no sign change of f on [{lo}, {hi}] for {p}")
    for _ in range(_BISECTION_STEPS):
        mid = (lo + hi) / 2
        fm = cubic_sign_probe(p, mid)
        if fm == 0:
            return float(mid)
        if _sign(fm) == _sign(flo):
            lo, flo = mid, fm
        else:
            hi = mid
    x = float((lo + hi) / 2)
    # one Newton step from the tight bracket, kept only if it stays inside
    c0, c1, c2, _ = p.cubic()
    fx = ((x + c2) * x + c1) * x + c0
    dfx = (3 * x + 2 * c2) * x + c1
    if dfx != 0:
        y = x - fx / dfx
        if float(lo) <= y <= float(hi):
            x = y
    return x


def integer_brackets(p: DoubleStarParams) -> tuple[tuple[Fraction, Fraction], ...]:
    """Brackets for ``x1, x2, x3``: ``[n-a+1, n-a+3/2], [a, a+1], [0, 1]``."""
    n, a = p.n, p.a
    return ((Fraction(n - a + 1), Fraction(2 * (n - a) + 3, 2)),
            (Fraction(a), Fraction(a + 1)),
            (Fraction(0), Fraction(1)))


def _scan_bracket(p: DoubleStarParams, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    steps = 16 * max(1, math.ceil(hi - lo))
    width = (hi - lo) / steps
    prev_x, prev_f = lo, cubic_sign_probe(p, lo)
    for i in range(1, steps + 1):
        x = lo + i * width
        fx = cubic_sign_probe(p, x)
        if prev_f == 0:
            return prev_x, prev_x
        if fx == 0 or _sign(fx) != _sign(prev_f):
            return prev_x, x
        prev_x, prev_f = x, fx
    raise ArithmeticError(f"no root of f found in [{lo}, {hi}] for {p}")


def vieta_brackets(p: DoubleStarParams) -> tuple[tuple[Fraction, Fraction], ...]:
    """Brackets for the boundary case, narrowed by scanning for a sign change.

    Coarse brackets ``[(n+2)/2, n+2]``, ``[1, (n+2)/2]``, ``[0, 1]`` each hold
    one root because the roots sum to ``n + 2`` and ``f(0) < 0 < f(1)``.
    """
    half = Fraction(p.n + 2, 2)
    coarse = ((half, Fraction(p.n + 2)), (Fraction(1), half), (Fraction(0), Fraction(1)))
    return tuple(_scan_bracket(p, lo, hi) for lo, hi in coarse)


def cubic_roots(p: DoubleStarParams) -> CubicRoots:
    brackets = integer_brackets(p) if p.in_bracket_range else vieta_brackets(p)
    x1, x2, x3 = (_bisect(p, lo, hi) for lo, hi in brackets)
    return CubicRoots(x1, x2, x3, brackets)


def laplacian_spectrum_closed_form(p: DoubleStarParams) -> list[float]:
    """``{x1, x2, x3, 1 (n-4 times), 0}`` sorted descending."""
    r = cubic_roots(p)
    return sorted([r.x1, r.x2, r.x3] + [1.0] * (p.n - 4) + [0.0], reverse=True)


def lee_closed_form(p: DoubleStarParams) -> float:
    r = cubic_roots(p)
    return math.fsum([1.0, (p.n - 4) * math.e, math.exp(r.x1), math.exp(r.x2), math.exp(r.x3)])


def h_function(n: int, a: float) -> float:
    """``1 + e^a + e^(n-a+1) - e - e^(a+2) - e^(n-a+1/2)``, decreasing in ``a``."""
    return (1 + math.exp(a) + math.exp(n - a + 1)
            - math.e - math.exp(a + 2) - math.exp(n - a + 0.5))


def _lee_gap(n: int, a_hi: int, a_lo: int, lee_hi: float, lee_lo: float) -> tuple[int, bool]:
    diff = lee_hi - lee_lo
    if abs(diff) > FLOAT_MARGIN_REL * max(lee_hi, lee_lo):
        return (1 if diff > 0 else -1), False
    return compare_lee_exact(build_double_star(n, a_hi), build_double_star(n, a_lo)), True


def verify_double_star_ordering(n: int) -> dict:
    """Check LEE(S_n(2, n-2)) > LEE(S_n(3, n-3)) > ... > LEE(S_n(floor(n/2), ceil(n/2))).

    Also checks the direct comparison of ``a = 2`` against ``a = floor(n/2)``.
    Failures are reported in the returned dict, never raised.
    """
    if n < 5:
        raise InvalidParameterError(f"n must be >= 5, got {n}")
    alist = list(range(2, n // 2 + 1))
    lees = {a: lee_closed_form(DoubleStarParams(n, a)) for a in alist}
    chain, failures = [], []
    for a in alist:
        entry = {"a": a, "b": n - a, "lee": lees[a], "margin_to_next": None, "exact": False}
        if a + 1 in lees:
            sign, exact = _lee_gap(n, a, a + 1, lees[a], lees[a + 1])
            entry["margin_to_next"] = lees[a] - lees[a + 1]
            entry["exact"] = exact
            if sign <= 0:
                failures.append(f"LEE(S_{n}({a},{n - a})) <= LEE(S_{n}({a + 1},{n - a - 1}))")
        chain.append(entry)
    last = alist[-1]
    special = None
    if last != 2:
        sign, _ = _lee_gap(n, 2, last, lees[2], lees[last])
        special = lees[2] - lees[last]
        if sign <= 0:
            failures.append(f"LEE(S_{n}(2,{n - 2})) <= LEE(S_{n}({last},{n - last}))")
    return {"n": n, "chain": chain, "special_case_margin": special,
            "ok": not failures, "failures": failures}


def double_star_table(n_min: int, n_max: int) -> list[dict]:
    """Rows ``n, a, b, x1, x2, x3, lee_closed_form, margin_to_next`` for every double star."""
    rows = []
    for n in range(max(5, n_min), n_max + 1):
        lees = {}
        for a in range(2, n // 2 + 1):
            p = DoubleStarParams(n, a)
            r = cubic_roots(p)
            lees[a] = lee_closed_form(p)
            rows.append({"n": n, "a": a, "b": p.b, "x1": r.x1, "x2": r.x2, "x3": r.x3,
                         "lee_closed_form": lees[a], "margin_to_next": None})
        for row in rows:
            if row["n"] == n and row["a"] + 1 in lees:
                row["margin_to_next"] = lees[row["a"]] - lees[row["a"] + 1]
    return rows
