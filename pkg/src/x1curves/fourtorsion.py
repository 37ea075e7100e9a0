"""Points of order 4 from a known point of order 2, by quadratic-character tests.

For y^2 = f(x) = x^3 + Ax + B with f(x0) = 0, deciding whether E(F_p) has a
point of order 4 takes at most one square root and two character tests once
x0 is known.  With curves from X1(2N), N odd, this gives curves with a point
of order 4N, or curves whose group order is 2N mod 4N.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from .ec import ShortWCurve, has_exact_order
from .field import PrimeField, quadratic_character, sqrt_mod
from .generate import GeneratedCurve, GenerationStats, generate

REQUIRE = "require-4N"
FORBID = "forbid-4N"


@dataclass
class TestsUsed:
    chi: int = 0
    sqrt: int = 0

    def as_dict(self) -> dict:
        return {"chi": self.chi, "sqrt": self.sqrt}


@dataclass(frozen=True)
class TwoTorsionData:
    curve: ShortWCurve
    x0: int
    n_roots: int
    x1: int | None = None
    x2: int | None = None
    tests: TestsUsed = field(default_factory=TestsUsed, compare=False)


@dataclass(frozen=True)
class TorsionClassification:
    has_order_4: bool
    tests_used: TestsUsed


def fprime(w: ShortWCurve, x: int) -> int:
    return (3 * x * x + w.A) % w.p


def halving_criterion(u: int, x0: int, A: int, p: int) -> bool:
    """(u - x0)^2 = 3 x0^2 + A: the x-coordinate u halves (x0, 0) on E or its twist."""
    return (u - x0) ** 2 % p == (3 * x0 * x0 + A) % p


def find_two_torsion(w: ShortWCurve, x0: int) -> TwoTorsionData:
    """The other roots of f from x^2 + x0 x + (x0^2 + A), discriminant -3x0^2 - 4A."""
    p = w.p
    x0 %= p
    if w.rhs(x0) != 0:
        raise ValueError(f"{x0} is not a root of x^3 + {w.A}x + {w.B} mod {p}")
    tests = TestsUsed()
    disc = (-3 * x0 * x0 - 4 * w.A) % p
    tests.chi += 1
    if quadratic_character(disc, p) != 1:
        # a zero discriminant means a repeated root, excluded by nonsingularity
        if disc == 0:
            raise ValueError("repeated root: the curve is singular")
        return TwoTorsionData(w, x0, 1, tests=tests)
    tests.sqrt += 1
    r = sqrt_mod(disc, p)
    inv2 = (p + 1) // 2
    x1 = (-x0 + r) * inv2 % p
    x2 = (-x0 - r) * inv2 % p
    return TwoTorsionData(w, x0, 3, x1, x2, tests=tests)


def classify_four_torsion(data: TwoTorsionData) -> TorsionClassification:
    """Decide whether E(F_p) has a point of order 4 with at most two character tests."""
    w, p = data.curve, data.curve.p
    if data.n_roots not in (1, 3) or (data.n_roots == 3 and (data.x1 is None or data.x2 is None)):
        raise ValueError("inconsistent two-torsion data")
    tests = TestsUsed(data.tests.chi, data.tests.sqrt)
    budget = tests.chi

    def chi(a):
        tests.chi += 1
        return quadratic_character(a, p)

    c0 = chi(fprime(w, data.x0))
    if c0 == 0:
        raise ValueError("f'(x0) = 0: the curve is singular")
    if p % 4 == 3:
        if c0 == 1:
            result = True
        else:
            result = data.n_roots == 3 and chi(fprime(w, data.x1)) == 1
    else:
        if data.n_roots == 1:
            result = c0 == 1
        elif c0 == 1:
            result = chi(data.x0 - data.x1) == 1
        else:
            result = chi(data.x1 - data.x2) == 1
    assert tests.chi - budget <= 2
    return TorsionClassification(result, tests)


def parity_identity(x0: int, x1: int, x2: int, F: PrimeField | int) -> bool:
    """chi(-1) chi(f'(x0)) chi(f'(x1)) chi(f'(x2)) = 1 for f = (x - x0)(x - x1)(x - x2)."""
    p = F.p if isinstance(F, PrimeField) else F
    roots = [x0 % p, x1 % p, x2 % p]
    if len(set(roots)) < 3:
        raise ValueError("roots must be distinct")
    prod = quadratic_character(-1, p)
    for i, xi in enumerate(roots):
        d = 1
        for j, xj in enumerate(roots):
            if i != j:
                d = d * (xi - xj) % p
        prod *= quadratic_character(d, p)
    return prod == 1


def order_four_point(data: TwoTorsionData) -> tuple[int, int] | None:
    """An explicit point of order 4, or None if E(F_p) has none.

    Each root xi with f'(xi) a square gives candidates u = xi +- sqrt(f'(xi));
    a candidate lies on E (rather than its twist) when f(u) is a square.
    """
    w, p = data.curve, data.curve.p
    roots = [data.x0] + ([data.x1, data.x2] if data.n_roots == 3 else [])
    for xi in roots:
        t = sqrt_mod(fprime(w, xi), p)
        if t is None:
            continue
        for u in ((xi + t) % p, (xi - t) % p):
            y = sqrt_mod(w.rhs(u), p)
            if y is not None and y != 0:
                return u, y
    return None


@dataclass(frozen=True)
class FourTorsionCurve:
    base: GeneratedCurve
    classification: TorsionClassification
    point: tuple[int, int]
    order: int
    n_roots: int

    def to_json(self) -> dict:
        obj = self.base.to_json()
        obj["N"] = self.order
        obj["point"] = [str(self.point[0]), str(self.point[1])]
        obj["classification"] = {"has_order_4": self.classification.has_order_4}
        obj["tests_used"] = self.classification.tests_used.as_dict()
        return obj


@dataclass
class FourTorsionStats:
    examined: int = 0
    accepted: int = 0
    shortcut_discards: int = 0
    generation: GenerationStats = field(default_factory=GenerationStats)

    @property
    def examined_per_accepted(self) -> float:
        return self.examined / self.accepted if self.accepted else float("inf")


def generate_order_4N(N: int, F: PrimeField | int, m: int, rng: random.Random | int | None = None,
                      mode: str = REQUIRE, shortcut: bool = True, batch: int = 8,
                      stats: FourTorsionStats | None = None) -> list[FourTorsionCurve]:
    """m curves from X1(2N), N odd, with a point of order 4N (require) or #E = 2N mod 4N (forbid).

    In require mode the emitted point 2P + alpha, alpha of order 4, is checked
    to have exact order 4N.  In forbid mode the emitted point is P of order 2N
    and the curve has a single 2-torsion point and no point of order 4.  With
    ``shortcut`` a curve is dropped in require mode as soon as chi(f'(x0)) != 1.
    """
    if N % 2 == 0 or N < 1:
        raise ValueError("N must be odd")
    if mode not in (REQUIRE, FORBID):
        raise ValueError(f"mode must be {REQUIRE!r} or {FORBID!r}")
    F = F if isinstance(F, PrimeField) else PrimeField(F)
    rng = rng if isinstance(rng, random.Random) else random.Random(rng)
    stats = stats if stats is not None else FourTorsionStats()
    p = F.p
    out: list[FourTorsionCurve] = []
    limit = 32 * max(m, 1)
    while len(out) < m:
        if stats.examined >= limit + stats.accepted:
            raise RuntimeError(f"retry budget exhausted with {len(out)} of {m} curves")
        for g in generate(2 * N, F, batch, rng, stats=stats.generation):
            if len(out) == m:
                break
            stats.examined += 1
            w, P = g.curve, g.torsion_point
            beta = w.mul(N, P)
            x0 = beta[0]
            if mode == REQUIRE and shortcut and quadratic_character(fprime(w, x0), p) != 1:
                stats.shortcut_discards += 1
                continue
            data = find_two_torsion(w, x0)
            cls = classify_four_torsion(data)
            if mode == REQUIRE:
                if not cls.has_order_4:
                    continue
                alpha = order_four_point(data)
                if alpha is None:
                    raise ArithmeticError("classification promised a point of order 4")
                Q = w.add(w.mul(2, P), alpha)
                if not has_exact_order(w, Q, 4 * N):
                    raise ArithmeticError("constructed point does not have order 4N")
                out.append(FourTorsionCurve(g, cls, Q, 4 * N, data.n_roots))
            else:
                if cls.has_order_4 or data.n_roots != 1:
                    continue
                out.append(FourTorsionCurve(g, cls, P, 2 * N, data.n_roots))
            stats.accepted += 1
    return out
