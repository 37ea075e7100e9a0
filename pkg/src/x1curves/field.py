"""Prime-field arithmetic: characters, square roots, roots of univariate polynomials.

Polynomials over F_p are plain lists of ints, lowest degree first, with no
trailing zeros (the zero polynomial is ``[]``).
"""
from __future__ import annotations

import random
from dataclasses import dataclass

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin with the first twelve prime bases (deterministic below 3.3e24)."""
    if n < 2:
        return False
    for q in _SMALL_PRIMES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _SMALL_PRIMES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass
class Counters:
    chi: int = 0
    sqrt: int = 0
    roots: int = 0
    inversions: int = 0
    multiplications: int = 0


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if self.p < 5 or not is_probable_prime(self.p):
            raise ValueError(f"need a prime p >= 5, got {self.p}")

    def __call__(self, a: int) -> int:
        return a % self.p

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return pow(a, -1, self.p)

    def chi(self, a: int) -> int:
        return quadratic_character(a, self.p)

    def sqrt(self, a: int) -> int | None:
        return sqrt_mod(a, self.p)

    def random_element(self, rng: random.Random) -> int:
        return rng.randrange(self.p)


counters = Counters()


def reset_counters():
    for name in vars(counters):
        setattr(counters, name, 0)


def quadratic_character(a: int, p: int) -> int:
    """Legendre symbol via Euler's criterion."""
    counters.chi += 1
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def sqrt_mod(a: int, p: int) -> int | None:
    """Tonelli-Shanks.  Of the two roots the even representative is returned."""
    counters.sqrt += 1
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        r = pow(a, (p + 1) // 4, p)
    else:
        q, s = p - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = 2
        while pow(z, (p - 1) // 2, p) != p - 1:
            z += 1
        m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
        while t != 1:
            i, t2 = 0, t
            while t2 != 1:
                t2 = t2 * t2 % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            m, c = i, b * b % p
            t, r = t * c % p, r * b % p
    return r if r % 2 == 0 else p - r


def batch_invert(elems: list[int], p: int) -> list[int]:
    """Montgomery's trick: one inversion and 3(n - 1) multiplications."""
    n = len(elems)
    if n == 0:
        return []
    prefix = [0] * n
    acc = 1
    for k, a in enumerate(elems):
        if a % p == 0:
            raise ZeroDivisionError(f"element {k} is zero")
        acc = acc * a % p if k else a % p
        prefix[k] = acc
    counters.inversions += 1
    inv = pow(acc, -1, p)
    out = [0] * n
    for k in range(n - 1, 0, -1):
        out[k] = inv * prefix[k - 1] % p
        inv = inv * elems[k] % p
    out[0] = inv
    counters.multiplications += 3 * (n - 1)
    return out


# ---------------------------------------------------------------------------
# dense polynomials over F_p
# ---------------------------------------------------------------------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def fp_poly(coeffs, p: int) -> list[int]:
    return _trim([c % p for c in coeffs])


def poly_eval(a: list[int], x: int, p: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % p
    return acc


def poly_sub(a: list[int], b: list[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    return _trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)])


def poly_mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim([c % p for c in out])


def poly_divmod(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    inv = pow(b[-1], -1, p)
    db = len(b) - 1
    q = [0] * max(0, len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k] * inv % p
        if c:
            q[k - db] = c
            for j in range(db + 1):
                a[k - db + j] = (a[k - db + j] - c * b[j]) % p
    return _trim(q), _trim(a[:db])


def poly_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    """Monic gcd."""
    while b:
        a, b = b, poly_divmod(a, b, p)[1]
    if not a:
        return a
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def _powmod_numpy(base: list[int], e: int, mod: list[int], p: int) -> list[int]:
    # products stay below 2^63: coefficients < 2^24, at most 2^12 terms per sum
    import numpy as np

    d = len(mod) - 1
    inv = pow(mod[-1], -1, p)
    g = np.array([c * inv % p for c in mod], dtype=np.int64)
    # R[k] = x^(d + k) mod g, for k = 0 .. d - 2
    R = np.zeros((max(d - 1, 1), d), dtype=np.int64)
    row = (-g[:d]) % p
    for k in range(d - 1):
        R[k] = row
        top = row[-1]
        row = np.concatenate(([0], row[:-1]))
        row = (row - top * g[:d]) % p

    def mulmod(a, b):
        c = np.convolve(a, b) % p
        if len(c) <= d:
            return np.pad(c, (0, d - len(c)))
        low = c[:d].copy()
        high = c[d:]
        return (low + (high[:, None] * R[: len(high)] % p).sum(axis=0)) % p

    b = np.zeros(d, dtype=np.int64)
    rem = poly_divmod(base, mod, p)[1]
    b[: len(rem)] = rem
    result = np.zeros(d, dtype=np.int64)
    result[0] = 1
    while e:
        if e & 1:
            result = mulmod(result, b)
        e >>= 1
        if e:
            b = mulmod(b, b)
    return _trim([int(v) for v in result])


def poly_powmod(base: list[int], e: int, mod: list[int], p: int) -> list[int]:
    if p < 1 << 24 and len(mod) > 8:
        return _powmod_numpy(base, e, mod, p)
    result = [1]
    base = poly_divmod(base, mod, p)[1]
    while e:
        if e & 1:
            result = poly_divmod(poly_mul(result, base, p), mod, p)[1]
        e >>= 1
        if e:
            base = poly_divmod(poly_mul(base, base, p), mod, p)[1]
    return result


def _split(g: list[int], p: int, rng: random.Random, out: list[int]):
    """Equal-degree splitting of a monic product of distinct linear factors."""
    if len(g) == 2:
        out.append(-g[0] % p)
        return
    if len(g) == 3:
        # quadratic formula is cheaper than random splitting
        b, c = g[1], g[0]
        r = sqrt_mod(b * b - 4 * c, p)
        inv2 = (p + 1) // 2
        out.extend(sorted({(-b + r) * inv2 % p, (-b - r) * inv2 % p}))
        return
    while True:
        d = rng.randrange(p)
        h = poly_powmod([d, 1], (p - 1) // 2, g, p)
        f = poly_gcd(g, poly_sub(h, [1], p), p)
        if 1 < len(f) < len(g):
            _split(f, p, rng, out)
            _split(poly_divmod(g, f, p)[0], p, rng, out)
            return


def poly_roots(h, p: int, rng: random.Random | None = None) -> list[int]:
    """Distinct roots of h in F_p, sorted ascending.

    gcd(h, x^p - x) isolates the product of the linear factors, which is then
    split by Cantor-Zassenhaus.  ``rng`` defaults to a fixed seed.
    """
    counters.roots += 1
    h = fp_poly(h, p)
    if not h:
        raise ValueError("the zero polynomial has every element as a root")
    if len(h) == 1:
        return []
    rng = rng if rng is not None else random.Random(0)
    inv = pow(h[-1], -1, p)
    h = [c * inv % p for c in h]
    out: list[int] = []
    if h[0] == 0:
        out.append(0)
        while h[0] == 0:
            h = h[1:]
        if len(h) == 1:
            return out
    xp = poly_powmod([0, 1], p, h, p)
    g = poly_gcd(h, poly_sub(xp, [0, 1], p), p)
    if len(g) > 1:
        _split(g, p, rng, out)
    return sorted(out)


def random_prime(bits: int, rng: random.Random) -> int:
    """Uniform-ish random prime with exactly ``bits`` bits (bits >= 4)."""
    if bits < 4:
        raise ValueError("need at least 4 bits")
    while True:
        n = rng.getrandbits(bits) | (1 << (bits - 1)) | 1
        if is_probable_prime(n):
            return n


def next_prime(n: int) -> int:
    n = max(n, 5)
    while not is_probable_prime(n):
        n += 1
    return n
