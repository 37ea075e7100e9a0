"""Symbolic group law on the Tate normal form and raw models of X1(N).

The curve is E(b, c): y^2 + (1 - c)xy - by = x^3 - bx^2 with the marked point
P = (0, 0).  With b = rs(r - 1), c = s(r - 1) every multiple nP has coordinates
in Q(r, s), and P has order N exactly when x_m = x_n for the index pair from
:func:`torsion_indices`.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass, field

from .poly import BiPoly, BiRat, divides, poly_exact_div

VARS = ("r", "s")
_r, _s = BiPoly.gens(VARS)
_one = BiPoly.const(1, VARS)


@dataclass(frozen=True)
class TateSymbolic:
    b: BiRat
    c: BiRat


def tate_parameters() -> TateSymbolic:
    """b = rs(r-1), c = s(r-1) over Q(r, s)."""
    return TateSymbolic(BiRat(_r * _s * (_r - 1), _one), BiRat(_s * (_r - 1), _one))


@dataclass(frozen=True)
class SymbolicPoint:
    n: int
    x: BiRat
    y: BiRat

    def on_curve(self, tate: TateSymbolic | None = None) -> bool:
        t = tate or tate_parameters()
        x, y = self.x, self.y
        lhs = y * y + (1 - t.c) * x * y - t.b * y
        rhs = x * x * x - t.b * x * x
        return (lhs - rhs).is_zero()


def multiples_of_P(n_max: int) -> list[SymbolicPoint]:
    """Points nP for 2 <= n <= n_max, each coordinate a reduced fraction."""
    if n_max < 2:
        raise ValueError("n_max must be at least 2")
    t = tate_parameters()
    b = t.b
    x, y = b, b * t.c
    out = [SymbolicPoint(2, x, y)]
    for n in range(3, n_max + 1):
        x2 = x * x
        x, y = b * y / x2, b * b * (x2 - y) / (x2 * x)
        out.append(SymbolicPoint(n, x, y))
    return out


def negate_point(pt: SymbolicPoint) -> SymbolicPoint:
    """-(x, y) = (x, b + (c - 1)x - y)."""
    t = tate_parameters()
    return SymbolicPoint(pt.n, pt.x, t.b + (t.c - 1) * pt.x - pt.y)


def torsion_indices(N: int) -> tuple[int, int]:
    """(m, n) with m + n = N and m != n, so that NP = 0 iff x_m = x_n."""
    if N <= 3:
        raise ValueError("torsion condition x_m = x_n needs N > 3")
    return (N + 2) // 2, (N - 1) // 2


@dataclass(frozen=True)
class RawModel:
    N: int
    F: BiPoly
    removed_factors: tuple[BiPoly, ...] = field(default=())

    def F_star(self) -> BiPoly:
        """Rebuild the unreduced cross-multiplied polynomial (up to sign/content)."""
        out = self.F
        for f in self.removed_factors:
            out = out * f
        return out


_cache: dict[int, RawModel] = {}
_cache_lock = threading.Lock()


def raw_form(N: int) -> RawModel:
    """Raw plane model F(r, s) = 0 of X1(N), for N >= 6.

    F* = num(x_m) den(x_n) - num(x_n) den(x_m); the factors r, r - 1, s and
    the raw forms of X1(M) for divisors 5 < M < N are divided out until none
    of them divides what is left.
    """
    if N < 6:
        raise ValueError("raw forms are defined for N >= 6; N = 4, 5 are c = 0 and b = c")
    hit = _cache.get(N)
    if hit is not None:
        return hit
    m, n = torsion_indices(N)
    pts = {p.n: p for p in multiples_of_P(m)}
    xm, xn = pts[m].x, pts[n].x
    F = xm.num * xn.den - xn.num * xm.den
    candidates = [_r, _r - 1, _s]
    candidates += [raw_form(M).F for M in range(6, N) if N % M == 0]
    removed: list[BiPoly] = []
    progress = True
    while progress:
        progress = False
        for cand in candidates:
            if F.total_degree() >= cand.total_degree() and divides(cand, F):
                F = poly_exact_div(F, cand)
                removed.append(cand)
                progress = True
    if F.is_zero():
        raise ArithmeticError(f"raw form for N={N} vanished")
    F = F.canonical()
    if F.total_degree() == 0:
        raise ArithmeticError(f"raw form for N={N} reduced to a constant")
    model = RawModel(N, F, tuple(removed))
    with _cache_lock:
        _cache.setdefault(N, model)
    return _cache[N]
