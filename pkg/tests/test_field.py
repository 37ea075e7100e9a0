import random

import pytest
import sympy
from hypothesis import assume, given, strategies as st

from x1curves import field as fieldmod
from x1curves.field import (PrimeField, batch_invert, is_probable_prime, next_prime, poly_mul,
                            poly_powmod, poly_roots, quadratic_character, random_prime, sqrt_mod)

PRIMES = [5, 7, 11, 13, 101, 1009, 10007, 1000003, (1 << 61) - 1]
primes = st.sampled_from(PRIMES)


def test_character_examples():
    assert quadratic_character(4, 13) == 1
    assert quadratic_character(2, 13) == -1
    assert quadratic_character(0, 13) == 0
    assert quadratic_character(26, 13) == 0
    assert sqrt_mod(4, 13) == 2
    assert sqrt_mod(2, 13) is None
    assert sqrt_mod(0, 13) == 0


def test_batch_invert_example():
    assert batch_invert([2, 3, 4], 7) == [4, 5, 2]
    assert batch_invert([], 7) == []
    with pytest.raises(ZeroDivisionError):
        batch_invert([2, 0], 7)


def test_prime_field_validation():
    for bad in (1, 2, 3, 4, 9, 15):
        with pytest.raises(ValueError):
            PrimeField(bad)
    F = PrimeField(13)
    assert F.inv(2) == 7 and F.chi(4) == 1 and F.sqrt(4) == 2
    with pytest.raises(ZeroDivisionError):
        F.inv(0)


@given(primes, st.integers(), st.integers())
def test_character_multiplicative(p, a, b):
    assert quadratic_character(a * b, p) == quadratic_character(a, p) * quadratic_character(b, p)


@given(primes, st.integers())
def test_character_is_euler(p, a):
    e = pow(a, (p - 1) // 2, p)
    assert quadratic_character(a, p) == (e if e <= 1 else -1)


@given(primes, st.integers())
def test_sqrt_squares_back(p, a):
    r = sqrt_mod(a, p)
    if quadratic_character(a, p) == -1:
        assert r is None
    else:
        assert r * r % p == a % p


@given(primes, st.lists(st.integers(), min_size=1, max_size=20))
def test_batch_invert_property(p, xs):
    xs = [x % p for x in xs]
    assume(all(xs))
    assert all(x * y % p == 1 for x, y in zip(xs, batch_invert(xs, p)))


def test_primality_against_sympy():
    for n in range(0, 3000):
        assert is_probable_prime(n) == sympy.isprime(n), n
    rng = random.Random(3)
    for _ in range(200):
        n = rng.getrandbits(64) | 1
        assert is_probable_prime(n) == sympy.isprime(n)


def test_random_and_next_prime():
    rng = random.Random(0)
    p = random_prime(64, rng)
    assert p.bit_length() == 64 and sympy.isprime(p)
    assert next_prime(1000) == 1009 and next_prime(1009) == 1009


def test_roots_examples():
    assert poly_roots([-1, 0, 1], 13) == [1, 12]          # x^2 - 1
    assert poly_roots([1, 0, 1], 7) == []                 # x^2 + 1, 7 = 3 mod 4
    assert poly_roots([0, 0, 0, 1], 11) == [0]            # x^3
    assert poly_roots([5], 11) == []
    with pytest.raises(ValueError):
        poly_roots([0, 0], 11)


def test_roots_exhaustive_small_primes():
    rng = random.Random(5)
    for p in [q for q in range(5, 500) if sympy.isprime(q)]:
        for _ in range(4):
            h = [rng.randrange(p) for _ in range(rng.randrange(2, 8))]
            if not any(h[1:]):
                continue
            brute = [x for x in range(p) if sum(c * pow(x, i, p) for i, c in enumerate(h)) % p == 0]
            assert poly_roots(h, p, rng) == brute, (h, p)


@given(st.sets(st.integers(0, 10**6 + 2), min_size=1, max_size=12))
def test_roots_of_products(rs):
    p = 1000003
    h = [1]
    for r in rs:
        h = poly_mul(h, [-r % p, 1], p)
    h = poly_mul(h, [1, 0, 1], p)  # no roots mod p = 3 mod 4
    assert poly_roots(h, p) == sorted(r % p for r in rs)


def test_numpy_powmod_matches_reference():
    rng = random.Random(9)
    p = 1000003
    mod = [rng.randrange(p) for _ in range(15)] + [1]
    base = [0, 1]
    e = (p - 1) // 2
    fast = poly_powmod(base, e, mod, p)
    # reference square-and-multiply with plain list arithmetic
    acc, b = [1], base
    k = e
    while k:
        if k & 1:
            acc = fieldmod.poly_divmod(poly_mul(acc, b, p), mod, p)[1]
        b = fieldmod.poly_divmod(poly_mul(b, b, p), mod, p)[1]
        k >>= 1
    assert fast == acc


def test_counters_track_calls():
    fieldmod.reset_counters()
    poly_roots([-1, 0, 1], 13)
    quadratic_character(3, 13)
    assert fieldmod.counters.roots == 1 and fieldmod.counters.chi >= 1
