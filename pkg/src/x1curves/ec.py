"""Elliptic curves over F_p: Tate normal form, short Weierstrass form, affine arithmetic.

Points are ``(x, y)`` tuples of ints; the identity is ``None``.
"""
from __future__ import annotations

from dataclasses import dataclass

Point = tuple[int, int] | None


def prime_factors(n: int) -> list[int]:
    out, q = [], 2
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True)
class TateCurve:
    """E(b, c): y^2 + (1 - c)xy - by = x^3 - bx^2, with (0, 0) the marked point."""

    b: int
    c: int
    p: int

    def discriminant(self) -> int:
        b, c, p = self.b, self.c, self.p
        return pow(b, 3, p) * (16 * b * b - 8 * b * c * c - 20 * b * c + b + c * (c - 1) ** 3) % p


@dataclass(frozen=True)
class ShortWCurve:
    """y^2 = x^3 + Ax + B over F_p."""

    A: int
    B: int
    p: int

    def discriminant(self) -> int:
        return (-4 * pow(self.A, 3, self.p) - 27 * self.B * self.B) % self.p

    def rhs(self, x: int) -> int:
        return (x * x * x + self.A * x + self.B) % self.p

    def contains(self, P: Point) -> bool:
        if P is None:
            return True
        x, y = P
        return (y * y - self.rhs(x)) % self.p == 0

    def add(self, P: Point, Q: Point) -> Point:
        return ec_add(P, Q, self.A, self.p)

    def mul(self, k: int, P: Point) -> Point:
        return ec_mul(k, P, self.A, self.p)

    def neg(self, P: Point) -> Point:
        return None if P is None else (P[0], -P[1] % self.p)


def ec_add(P: Point, Q: Point, A: int, p: int) -> Point:
    if P is None:
        return Q
    if Q is None:
        return P
    x1, y1 = P
    x2, y2 = Q
    if x1 == x2:
        if (y1 + y2) % p == 0:
            return None
        lam = (3 * x1 * x1 + A) * pow(2 * y1, -1, p) % p
    else:
        lam = (y2 - y1) * pow(x2 - x1, -1, p) % p
    x3 = (lam * lam - x1 - x2) % p
    return x3, (lam * (x1 - x3) - y1) % p


def ec_mul(k: int, P: Point, A: int, p: int) -> Point:
    """Double-and-add; negative k multiplies the negated point."""
    if k < 0:
        k, P = -k, (None if P is None else (P[0], -P[1] % p))
    R: Point = None
    while k:
        if k & 1:
            R = ec_add(R, P, A, p)
        k >>= 1
        if k:
            P = ec_add(P, P, A, p)
    return R


def has_exact_order(w: ShortWCurve, P: Point, N: int) -> bool:
    """N P = O and (N / l) P != O for every prime l | N."""
    if P is None or N < 1:
        return False
    if w.mul(N, P) is not None:
        return False
    return all(w.mul(N // q, P) is not None for q in prime_factors(N))


def rs_to_tate(r: int, s: int, p: int) -> TateCurve:
    """c = s(r - 1), b = cr."""
    c = s * (r - 1) % p
    return TateCurve(c * r % p, c, p)


def tate_to_sws(tc: TateCurve) -> tuple[ShortWCurve, tuple[int, int]]:
    """Short Weierstrass model of E(b, c) and the image (3e, -108b) of (0, 0)."""
    b, c, p = tc.b, tc.c, tc.p
    d = (c - 1) % p
    e = (d * d - 4 * b) % p
    A = 27 * (24 * b * d - e * e) % p
    B = 54 * (pow(e, 3, p) - 36 * b * d * e + 216 * b * b) % p
    return ShortWCurve(A, B, p), (3 * e % p, -108 * b % p)


def check_discriminant(w: ShortWCurve) -> bool:
    return w.discriminant() != 0


def count_points(w: ShortWCurve) -> int:
    """#E(F_p) by summing characters; only for small p."""
    from .field import quadratic_character

    return 1 + w.p + sum(quadratic_character(w.rhs(x), w.p) for x in range(w.p))


def all_points(w: ShortWCurve) -> list[Point]:
    """Every point including the identity; only for small p."""
    p = w.p
    squares: dict[int, list[int]] = {}
    for y in range(p):
        squares.setdefault(y * y % p, []).append(y)
    pts: list[Point] = [None]
    for x in range(p):
        pts.extend((x, y) for y in squares.get(w.rhs(x), ()))
    return pts


def point_order(w: ShortWCurve, P: Point, bound: int) -> int:
    """Smallest n <= bound with nP = O (0 if none); linear scan for small groups."""
    Q, n = P, 1
    while Q is not None:
        if n >= bound:
            return 0
        Q = w.add(Q, P)
        n += 1
    return n


def division_polynomial(n: int, A: int, B: int, p: int) -> list[int]:
    """psi_n over F_p for odd n >= 1, as a coefficient list in x (low first).

    Even-index values are carried as psi_n / 2y, so every intermediate is a
    polynomial in x alone; Y = 4(x^3 + Ax + B) stands for (2y)^2.
    """
    from .field import fp_poly, poly_mul, poly_sub

    if n < 1 or n % 2 == 0:
        raise ValueError("n must be odd and positive")
    Y = fp_poly([4 * B, 4 * A, 0, 4], p)
    Y2 = poly_mul(Y, Y, p)
    f = {
        0: [],
        1: [1],
        2: [1],
        3: fp_poly([-A * A, 12 * B, 6 * A, 0, 3], p),
        4: fp_poly([2 * (-8 * B * B - A**3), 2 * (-4 * A * B), 2 * (-5 * A * A), 2 * 20 * B, 2 * 5 * A, 0, 2], p),
    }

    def get(k):
        if k not in f:
            m = k // 2
            if k % 2:
                a = poly_mul(get(m + 2), poly_mul(get(m), poly_mul(get(m), get(m), p), p), p)
                b = poly_mul(get(m - 1), poly_mul(get(m + 1), poly_mul(get(m + 1), get(m + 1), p), p), p)
                if m % 2 == 0:
                    a = poly_mul(Y2, a, p)
                else:
                    b = poly_mul(Y2, b, p)
                f[k] = poly_sub(a, b, p)
            else:
                u = poly_mul(get(m + 2), poly_mul(get(m - 1), get(m - 1), p), p)
                v = poly_mul(get(m - 2), poly_mul(get(m + 1), get(m + 1), p), p)
                f[k] = poly_mul(get(m), poly_sub(u, v, p), p)
        return f[k]

    return get(n)


def has_point_of_order(w: ShortWCurve, ell: int) -> bool:
    """Whether E(F_p) has a point of odd prime order ell, via the roots of psi_ell."""
    from .field import poly_roots, quadratic_character

    for x in poly_roots(division_polynomial(ell, w.A, w.B, w.p), w.p):
        if quadratic_character(w.rhs(x), w.p) >= 0:
            return True
    return False
