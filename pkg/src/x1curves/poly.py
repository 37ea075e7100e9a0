"""Exact bivariate polynomials and rational functions over the integers.

A :class:`BiPoly` is a sparse map ``(i, j) -> c`` standing for ``c * a^i * b^j``
where ``(a, b)`` is an ordered pair of variable names.  Coefficients are
Python ints, so nothing ever overflows.  :class:`BiRat` is a reduced quotient
of two such polynomials.

The gcd works on the dense "univariate over Z[other]" view with a primitive
polynomial remainder sequence.  Everything here is pure; instances are never
mutated after construction.
"""
from __future__ import annotations

import json
import re
from math import gcd
from typing import Iterable, NamedTuple

Monomial = tuple[int, int]


# ---------------------------------------------------------------------------
# dense univariate helpers over Z (lists, low degree first, [] is zero)
# ---------------------------------------------------------------------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _zadd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return _trim(out)


def _zsub(a, b):
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        out[i] -= c
    return _trim(out)


def _zmul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _zscale(a, k):
    if k == 0:
        return []
    return [k * c for c in a]


def _zcontent(a) -> int:
    g = 0
    for c in a:
        g = gcd(g, c)
        if g == 1:
            break
    return g


def _zdivexact(a, b):
    """Exact quotient a / b in Z[t]; raises ValueError when b does not divide a."""
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    if not a:
        return []
    db = len(b) - 1
    lb = b[-1]
    r = list(a)
    if len(r) - 1 < db:
        raise ValueError("not an exact division")
    q = [0] * (len(r) - db)
    for k in range(len(r) - 1 - db, -1, -1):
        c = r[k + db]
        if c:
            qk, rem = divmod(c, lb)
            if rem:
                raise ValueError("not an exact division")
            q[k] = qk
            for i, bc in enumerate(b):
                r[k + i] -= qk * bc
    if any(r[:db]):
        raise ValueError("not an exact division")
    return _trim(q)


def _zprem(a, b):
    """Pseudo-remainder of a by b in Z[t]."""
    db = len(b) - 1
    lb = b[-1]
    r = list(a)
    while r and len(r) - 1 >= db:
        c = r[-1]
        shift = len(r) - 1 - db
        r = [lb * x for x in r]
        for i, bc in enumerate(b):
            r[shift + i] -= c * bc
        _trim(r)
    return r


def _zprimitive(a):
    g = _zcontent(a)
    if g == 0:
        return []
    if a[-1] < 0:
        g = -g
    return [c // g for c in a]


def _zgcd(a, b):
    """Gcd in Z[t], normalized to a positive leading coefficient."""
    if not a or not b:
        g = a or b
        return [-c for c in g] if g and g[-1] < 0 else list(g)
    c = gcd(_zcontent(a), _zcontent(b))
    a, b = _zprimitive(a), _zprimitive(b)
    if len(a) < len(b):
        a, b = b, a
    while b:
        if len(b) == 1:
            return [c]
        r = _zprem(a, b)
        a, b = b, _zprimitive(r)
    return [c * x for x in a]


# ---------------------------------------------------------------------------
# dense bivariate helpers: list indexed by main-variable degree of Z[t] lists
# ---------------------------------------------------------------------------

def _bcontent(A):
    g: list[int] = []
    for coef in A:
        if coef:
            g = _zgcd(g, coef)
            if len(g) == 1 and g[0] == 1:
                break
    return g


def _bprimitive(A):
    g = _bcontent(A)
    if not g:
        return []
    return [_zdivexact(coef, g) if coef else [] for coef in A]


def _bprem(A, B):
    dB = len(B) - 1
    lB = B[-1]
    R = [list(c) for c in A]
    while R and len(R) - 1 >= dB:
        lc = R[-1]
        shift = len(R) - 1 - dB
        R = [_zmul(lB, c) for c in R]
        for i, bc in enumerate(B):
            if bc:
                R[shift + i] = _zsub(R[shift + i], _zmul(lc, bc))
        while R and not R[-1]:
            R.pop()
    return R


def _bdivexact(A, B):
    dB = len(B) - 1
    lB = B[-1]
    R = [list(c) for c in A]
    if len(R) - 1 < dB:
        raise ValueError("not an exact division")
    Q: list[list[int]] = [[] for _ in range(len(R) - dB)]
    for k in range(len(R) - 1 - dB, -1, -1):
        c = R[k + dB]
        if c:
            qk = _zdivexact(c, lB)
            Q[k] = qk
            for i, bc in enumerate(B):
                if bc:
                    R[k + i] = _zsub(R[k + i], _zmul(qk, bc))
    if any(R[:dB]):
        raise ValueError("not an exact division")
    while Q and not Q[-1]:
        Q.pop()
    return Q


def _bgcd(A, B):
    cg = _zgcd(_bcontent(A), _bcontent(B))
    A, B = _bprimitive(A), _bprimitive(B)
    if len(A) < len(B):
        A, B = B, A
    while B:
        if len(B) == 1:
            return [cg]
        R = _bprem(A, B)
        A, B = B, _bprimitive(R)
    return [_zmul(cg, c) for c in A]


# ---------------------------------------------------------------------------
# public types
# ---------------------------------------------------------------------------

class ComplexityVector(NamedTuple):
    """(d_y, m_y, d_x, d_tot, t, S); tuple order is the lexicographic ranking."""

    d_y: int
    m_y: int
    d_x: int
    d_tot: int
    t: int
    S: int


class BiPoly:
    """Sparse polynomial in two variables with integer coefficients."""

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, terms: dict[Monomial, int] | None = None, vars: tuple[str, str] = ("x", "y")):
        clean = {}
        if terms:
            for m, c in terms.items():
                if c:
                    i, j = m
                    if i < 0 or j < 0:
                        raise ValueError(f"negative exponent in {m}")
                    clean[(int(i), int(j))] = int(c)
        self.terms: dict[Monomial, int] = clean
        self.vars = tuple(vars)
        self._hash = None

    # -- constructors -------------------------------------------------------
    @classmethod
    def const(cls, c: int, vars=("x", "y")) -> "BiPoly":
        return cls({(0, 0): c}, vars)

    @classmethod
    def gens(cls, vars=("x", "y")) -> tuple["BiPoly", "BiPoly"]:
        return cls({(1, 0): 1}, vars), cls({(0, 1): 1}, vars)

    # -- basic queries ------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def degree(self, which: int = 0) -> int:
        """Degree in variable ``which`` (0 or 1); -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(m[which] for m in self.terms)

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(i + j for i, j in self.terms)

    def sorted_terms(self) -> list[tuple[Monomial, int]]:
        """Terms in graded lexicographic order, leading term first."""
        return sorted(self.terms.items(), key=lambda mc: (mc[0][0] + mc[0][1], mc[0][0]), reverse=True)

    def lex_terms(self) -> list[tuple[Monomial, int]]:
        return sorted(self.terms.items(), reverse=True)

    def leading_coefficient(self) -> int:
        if not self.terms:
            return 0
        return self.sorted_terms()[0][1]

    def content(self) -> int:
        g = 0
        for c in self.terms.values():
            g = gcd(g, c)
            if g == 1:
                break
        return g

    def monomial_factor(self) -> Monomial:
        if not self.terms:
            return (0, 0)
        return (min(i for i, _ in self.terms), min(j for _, j in self.terms))

    # -- normalization ------------------------------------------------------
    def canonical(self) -> "BiPoly":
        """Content 1, positive leading coefficient (grlex)."""
        if not self.terms:
            return self
        g = self.content()
        if self.leading_coefficient() < 0:
            g = -g
        if g == 1:
            return self
        return BiPoly({m: c // g for m, c in self.terms.items()}, self.vars)

    def strip_monomial(self) -> "BiPoly":
        a, b = self.monomial_factor()
        if a == 0 and b == 0:
            return self
        return BiPoly({(i - a, j - b): c for (i, j), c in self.terms.items()}, self.vars)

    def normalized(self) -> "BiPoly":
        """Monomial-free, content-free, canonical sign."""
        return self.strip_monomial().canonical()

    def swap(self) -> "BiPoly":
        """f(y, x): exchange the exponents, keep the variable names."""
        return BiPoly({(j, i): c for (i, j), c in self.terms.items()}, self.vars)

    def rename(self, vars: tuple[str, str]) -> "BiPoly":
        return BiPoly(self.terms, vars)

    # -- arithmetic ---------------------------------------------------------
    def _check(self, other: "BiPoly"):
        if self.vars != other.vars:
            raise ValueError(f"variable mismatch: {self.vars} vs {other.vars}")

    def _coerce(self, other) -> "BiPoly":
        if isinstance(other, BiPoly):
            self._check(other)
            return other
        if isinstance(other, int):
            return BiPoly.const(other, self.vars)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return BiPoly(out, self.vars)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly({m: -c for m, c in self.terms.items()}, self.vars)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[Monomial, int] = {}
        get = out.get
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                m = (i1 + i2, j1 + j2)
                out[m] = get(m, 0) + c1 * c2
        return BiPoly(out, self.vars)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = BiPoly.const(1, self.vars)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, k: int) -> "BiPoly":
        return BiPoly({m: k * c for m, c in self.terms.items()}, self.vars)

    def shift(self, a: int, b: int) -> "BiPoly":
        """Multiply by the monomial x^a y^b."""
        return BiPoly({(i + a, j + b): c for (i, j), c in self.terms.items()}, self.vars)

    def __eq__(self, other):
        if isinstance(other, int):
            return self.terms == ({(0, 0): other} if other else {})
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vars, frozenset(self.terms.items())))
        return self._hash

    # -- evaluation ---------------------------------------------------------
    def evaluate(self, a, b, mod: int | None = None):
        """Evaluate at (a, b); reduce mod ``mod`` when given."""
        total = 0
        if mod is None:
            for (i, j), c in self.terms.items():
                total += c * a**i * b**j
            return total
        pa: dict[int, int] = {}
        pb: dict[int, int] = {}
        for (i, j), c in self.terms.items():
            if i not in pa:
                pa[i] = pow(a, i, mod)
            if j not in pb:
                pb[j] = pow(b, j, mod)
            total += c * pa[i] * pb[j]
        return total % mod

    def coefficients_in(self, which: int = 1) -> dict[int, "BiPoly"]:
        """Group by powers of variable ``which``; values are polynomials in the other one."""
        out: dict[int, dict[Monomial, int]] = {}
        for (i, j), c in self.terms.items():
            if which == 1:
                out.setdefault(j, {})[(i, 0)] = c
            else:
                out.setdefault(i, {})[(0, j)] = c
        return {k: BiPoly(v, self.vars) for k, v in out.items()}

    def specialize_first(self, a: int, mod: int) -> list[int]:
        """Coefficients (low first) of h(t) = f(a, t) mod ``mod``."""
        d = self.degree(1)
        out = [0] * (d + 1)
        for (i, j), c in self.terms.items():
            out[j] = (out[j] + c * pow(a, i, mod)) % mod
        return _trim(out)

    # -- dense conversion ---------------------------------------------------
    def _dense(self, main: int):
        """Dense list indexed by degree in variable ``main`` of Z[other] lists."""
        other = 1 - main
        if not self.terms:
            return []
        D = self.degree(main)
        rows: list[list[int]] = [[] for _ in range(D + 1)]
        for m, c in self.terms.items():
            row = rows[m[main]]
            k = m[other]
            if len(row) <= k:
                row.extend([0] * (k + 1 - len(row)))
            row[k] = c
        return rows

    @classmethod
    def _from_dense(cls, rows, main: int, vars) -> "BiPoly":
        out = {}
        for e, row in enumerate(rows):
            for k, c in enumerate(row):
                if c:
                    out[(e, k) if main == 0 else (k, e)] = c
        return cls(out, vars)

    # -- printing -----------------------------------------------------------
    def __repr__(self):
        return f"BiPoly({self!s}, vars={self.vars})"

    def __str__(self):
        return format_poly(self)

    def to_json(self) -> dict:
        return {
            "vars": list(self.vars),
            "terms": [[i, j, str(c)] for (i, j), c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "BiPoly":
        vars = tuple(obj["vars"])
        return cls({(int(i), int(j)): int(c) for i, j, c in obj["terms"]}, vars)


# ---------------------------------------------------------------------------
# gcd / division
# ---------------------------------------------------------------------------

def poly_add(a: BiPoly, b: BiPoly) -> BiPoly:
    a._check(b)
    return a + b


def poly_mul(a: BiPoly, b: BiPoly) -> BiPoly:
    a._check(b)
    return a * b


def _main_var(a: BiPoly, b: BiPoly) -> int:
    return 0 if max(a.degree(0), b.degree(0)) <= max(a.degree(1), b.degree(1)) else 1


def poly_gcd(a: BiPoly, b: BiPoly) -> BiPoly:
    """Greatest common divisor with positive grlex leading coefficient.

    The integer content of the result is the gcd of the two contents, so
    ``gcd(6x, 4x^2) == 2x``.
    """
    a._check(b)
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    if a.is_zero():
        return b.scale(-1 if b.leading_coefficient() < 0 else 1)
    if b.is_zero():
        return a.scale(-1 if a.leading_coefficient() < 0 else 1)
    # pull out the monomial part first: cheap and keeps the PRS short
    ma, mb = a.monomial_factor(), b.monomial_factor()
    mono = (min(ma[0], mb[0]), min(ma[1], mb[1]))
    a, b = a.strip_monomial(), b.strip_monomial()
    main = _main_var(a, b)
    g = BiPoly._from_dense(_bgcd(a._dense(main), b._dense(main)), main, a.vars)
    if g.leading_coefficient() < 0:
        g = -g
    return g.shift(*mono)


def poly_exact_div(a: BiPoly, b: BiPoly) -> BiPoly:
    """Quotient ``a / b``; raises ValueError when the division is not exact."""
    a._check(b)
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if a.is_zero():
        return a
    if len(b) == 1:
        ((bi, bj), bc), = b.terms.items()
        out = {}
        for (i, j), c in a.terms.items():
            q, r = divmod(c, bc)
            if r or i < bi or j < bj:
                raise ValueError("not an exact division")
            out[(i - bi, j - bj)] = q
        return BiPoly(out, a.vars)
    main = 0 if b.degree(0) > 0 else 1
    return BiPoly._from_dense(_bdivexact(a._dense(main), b._dense(main)), main, a.vars)


def divides(b: BiPoly, a: BiPoly) -> bool:
    try:
        poly_exact_div(a, b)
    except ValueError:
        return False
    return True


def primitive_part(f: BiPoly) -> BiPoly:
    return f.canonical()


# ---------------------------------------------------------------------------
# rational functions
# ---------------------------------------------------------------------------

class BiRat:
    """Reduced fraction num/den with a positive leading coefficient in den.

    Reduction includes integer content, so ``(2x)/(4y)`` becomes ``x/(2y)``.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: BiPoly, den: BiPoly | None = None, reduce: bool = True):
        if den is None:
            den = BiPoly.const(1, num.vars)
        num._check(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if reduce:
            num, den = _reduce(num, den)
        self.num = num
        self.den = den

    @property
    def vars(self):
        return self.num.vars

    @classmethod
    def from_int(cls, c: int, vars=("x", "y")) -> "BiRat":
        return cls(BiPoly.const(c, vars), BiPoly.const(1, vars), reduce=False)

    @classmethod
    def gens(cls, vars=("x", "y")) -> tuple["BiRat", "BiRat"]:
        x, y = BiPoly.gens(vars)
        one = BiPoly.const(1, vars)
        return cls(x, one, reduce=False), cls(y, one, reduce=False)

    def is_zero(self):
        return self.num.is_zero()

    def is_polynomial(self):
        return self.den == 1

    def _coerce(self, other):
        if isinstance(other, BiRat):
            return other
        if isinstance(other, BiPoly):
            return BiRat(other, BiPoly.const(1, other.vars), reduce=False)
        if isinstance(other, int):
            return BiRat.from_int(other, self.vars)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return BiRat(self.num + other.num, self.den)
        g = poly_gcd(self.den, other.den)
        d1 = poly_exact_div(self.den, g)
        d2 = poly_exact_div(other.den, g)
        return BiRat(self.num * d2 + other.num * d1, d1 * other.den)

    __radd__ = __add__

    def __neg__(self):
        return BiRat(-self.num, self.den, reduce=False)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        # cross-cancel before multiplying keeps intermediate sizes down
        g1 = poly_gcd(self.num, other.den) if not self.num.is_zero() else other.den
        g2 = poly_gcd(other.num, self.den) if not other.num.is_zero() else self.den
        n = poly_exact_div(self.num, g1) * poly_exact_div(other.num, g2)
        d = poly_exact_div(self.den, g2) * poly_exact_div(other.den, g1)
        return BiRat(n, d, reduce=False)._normalize_sign()

    __rmul__ = __mul__

    def inverse(self) -> "BiRat":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return BiRat(self.den, self.num, reduce=False)._normalize_sign()

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return BiRat(self.num**n, self.den**n, reduce=False)

    def _normalize_sign(self):
        g = gcd(self.num.content(), self.den.content())
        if self.den.leading_coefficient() < 0:
            g = -g
        if g != 1:
            self.num = BiPoly({m: v // g for m, v in self.num.terms.items()}, self.num.vars)
            self.den = BiPoly({m: v // g for m, v in self.den.terms.items()}, self.den.vars)
        return self

    def __eq__(self, other):
        if isinstance(other, (int, BiPoly)):
            other = self._coerce(other)
        if not isinstance(other, BiRat):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def evaluate(self, a, b, mod: int):
        """Value mod ``mod``; ZeroDivisionError when the denominator vanishes."""
        d = self.den.evaluate(a, b, mod)
        if d == 0:
            raise ZeroDivisionError("denominator vanishes")
        return self.num.evaluate(a, b, mod) * pow(d, -1, mod) % mod

    def __repr__(self):
        return f"BiRat({self!s})"

    def __str__(self):
        if self.den == 1:
            return format_poly(self.num)
        return f"({format_poly(self.num)}) / ({format_poly(self.den)})"

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, obj: dict) -> "BiRat":
        return cls(BiPoly.from_json(obj["num"]), BiPoly.from_json(obj["den"]))


def _reduce(num: BiPoly, den: BiPoly) -> tuple[BiPoly, BiPoly]:
    if num.is_zero():
        return num, BiPoly.const(1, num.vars)
    g = poly_gcd(num, den)
    if den.leading_coefficient() < 0:
        g = -g
    if not (g == 1):
        num = poly_exact_div(num, g)
        den = poly_exact_div(den, g)
    return num, den


# ---------------------------------------------------------------------------
# substitution and complexity
# ---------------------------------------------------------------------------

def rational_substitute(f: BiPoly, gx: BiRat, gy: BiRat) -> BiPoly:
    """Expand f(gx, gy), clear denominators, drop content and monomial factors.

    Raises ValueError when the substitution collapses f to zero.
    """
    if gx.vars != f.vars or gy.vars != f.vars:
        raise ValueError("substitution must use the polynomial's variable pair")
    if f.is_zero():
        raise ValueError("cannot substitute into the zero polynomial")
    dx, dy = f.degree(0), f.degree(1)
    nx, dnx, ny, dny = gx.num, gx.den, gy.num, gy.den
    same_den = dnx == dny
    one = BiPoly.const(1, f.vars)

    def powers(p: BiPoly, n: int) -> list[BiPoly]:
        out = [one]
        for _ in range(n):
            out.append(out[-1] * p)
        return out

    if same_den:
        D = f.total_degree()
        pnx, pny, pd = powers(nx, dx), powers(ny, dy), powers(dnx, D)
        total = BiPoly({}, f.vars)
        for (i, j), c in f.terms.items():
            total = total + (pnx[i] * pny[j] * pd[D - i - j]).scale(c)
    else:
        pnx, pdx = powers(nx, dx), powers(dnx, dx)
        pny, pdy = powers(ny, dy), powers(dny, dy)
        total = BiPoly({}, f.vars)
        for (i, j), c in f.terms.items():
            total = total + (pnx[i] * pdx[dx - i] * pny[j] * pdy[dy - j]).scale(c)
    if total.is_zero():
        raise ValueError("substitution yields the zero polynomial")
    total = total.strip_monomial()
    for den in {dnx, dny}:
        if den.total_degree() > 0 and len(den) > 1:
            while True:
                try:
                    total = poly_exact_div(total, den)
                except ValueError:
                    break
    return total.normalized()


def complexity_vector(f: BiPoly) -> ComplexityVector:
    if f.is_zero():
        raise ValueError("complexity of the zero polynomial")
    d_y = f.degree(1)
    m_y = int(any(i >= 1 and j == d_y for i, j in f.terms))
    return ComplexityVector(
        d_y,
        m_y,
        f.degree(0),
        f.total_degree(),
        len(f.terms),
        sum(abs(c) for c in f.terms.values()),
    )


def curve_vector(f: BiPoly) -> tuple[ComplexityVector, bool]:
    """Minimum of v(f(x,y)) and v(f(y,x)); the flag is True when swapped wins."""
    v = complexity_vector(f)
    w = complexity_vector(f.swap())
    if w < v:
        return w, True
    return v, False


# ---------------------------------------------------------------------------
# text form
# ---------------------------------------------------------------------------

def _mono_str(i: int, j: int, vars) -> str:
    out = ""
    for e, v in ((i, vars[0]), (j, vars[1])):
        if e == 1:
            out += v
        elif e > 1:
            out += f"{v}^{e}" if e < 10 else f"{v}^{{{e}}}"
    return out


def _terms_str(items) -> str:
    parts = []
    for (i, j), c, vars in items:
        mono = _mono_str(i, j, vars)
        a = abs(c)
        body = mono if (a == 1 and mono) else f"{a}{mono}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return " ".join(parts) if parts else "0"


def format_poly(f: BiPoly) -> str:
    """Printed-table style, lexicographic in the first variable."""
    return _terms_str([(m, c, f.vars) for m, c in f.lex_terms()])


def format_grouped(f: BiPoly) -> str:
    """Group by descending powers of the second variable, e.g. ``y^2 + (x^2 + 1)y + x``."""
    groups = f.coefficients_in(1)
    x, y = f.vars
    parts: list[str] = []
    for k in sorted(groups, reverse=True):
        g = groups[k]
        ymono = _mono_str(0, k, f.vars)
        if k == 0:
            s = _terms_str([(m, c, f.vars) for m, c in g.lex_terms()])
            if parts:
                s = s if s.startswith("-") else "+ " + s
                s = s.replace("-", "- ", 1) if s.startswith("-") and not s.startswith("- ") else s
            parts.append(s)
            continue
        if len(g) == 1:
            ((i, _), c), = g.terms.items()
            s = _terms_str([((i, k), c, f.vars)])
            if parts:
                s = ("- " + s[1:]) if s.startswith("-") else "+ " + s
            parts.append(s)
            continue
        neg = g.lex_terms()[0][1] < 0
        inner = format_poly(-g if neg else g)
        sign = "-" if neg else "+"
        if parts:
            parts.append(f"{sign} ({inner}){ymono}")
        else:
            parts.append(f"{'-' if neg else ''}({inner}){ymono}")
    return " ".join(parts)


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z])|(\^\{?)|([-+*/()}]))")


def parse_rational(text: str, vars=("x", "y"), env: dict[str, BiRat] | None = None) -> BiRat:
    """Parse a table-style expression such as ``1 - xy/(y + 1)``.

    Juxtaposition means multiplication; ``^`` takes an integer exponent
    (``^{10}`` is accepted).  Names in ``env`` expand to the given values.
    """
    tokens: list[tuple[str, str]] = []
    pos = 0
    text = text.replace("\\enspace", " ").replace("$", "")
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip() == "":
                break
            raise ValueError(f"cannot parse {text!r} at {pos}")
        pos = m.end()
        num, name, caret, op = m.groups()
        if num:
            tokens.append(("num", num))
        elif name:
            tokens.append(("name", name))
        elif caret:
            tokens.append(("^", caret))
        elif op == "}":
            continue
        else:
            tokens.append(("op", op))
    env = env or {}
    gens = dict(zip(vars, BiRat.gens(vars)))
    i = 0

    def peek():
        return tokens[i] if i < len(tokens) else ("end", "")

    def take():
        nonlocal i
        tok = peek()
        i += 1
        return tok

    def expr():
        sign = 1
        tok = peek()
        if tok == ("op", "-"):
            take()
            sign = -1
        elif tok == ("op", "+"):
            take()
        val = term()
        if sign < 0:
            val = -val
        while peek() in (("op", "+"), ("op", "-")):
            op = take()[1]
            rhs = term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term():
        val = factor()
        while True:
            tok = peek()
            if tok == ("op", "*"):
                take()
                val = val * factor()
            elif tok == ("op", "/"):
                take()
                val = val / factor()
            elif tok[0] in ("num", "name") or tok == ("op", "("):
                val = val * factor()
            else:
                return val

    def factor():
        base = atom()
        if peek()[0] == "^":
            take()
            kind, e = take()
            if kind != "num":
                raise ValueError("exponent must be an integer")
            base = base ** int(e)
        return base

    def atom():
        kind, v = take()
        if kind == "num":
            return BiRat.from_int(int(v), vars)
        if kind == "name":
            if v in gens:
                return gens[v]
            if v in env:
                return env[v]
            raise ValueError(f"unknown name {v!r}")
        if (kind, v) == ("op", "("):
            val = expr()
            if take() != ("op", ")"):
                raise ValueError("unbalanced parentheses")
            return val
        raise ValueError(f"unexpected token {v!r}")

    out = expr()
    if i != len(tokens):
        raise ValueError(f"trailing input in {text!r}")
    return out


def parse_poly(text: str, vars=("x", "y")) -> BiPoly:
    r = parse_rational(text, vars)
    if not r.is_polynomial():
        raise ValueError(f"{text!r} is not a polynomial")
    return r.num


def dumps(polys: dict[str, BiPoly]) -> str:
    return json.dumps({k: v.to_json() for k, v in polys.items()})


def loads(text: str) -> dict[str, BiPoly]:
    return {k: BiPoly.from_json(v) for k, v in json.loads(text).items()}


def equal_up_to_sign(a: BiPoly, b: BiPoly) -> bool:
    return a == b or a == -b


def iter_monomials(f: BiPoly) -> Iterable[Monomial]:
    return iter(f.terms)
