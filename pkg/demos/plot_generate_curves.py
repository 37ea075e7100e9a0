"""
Curves with a point of order N over a 64-bit field
==================================================

Sample points on the bundled model, push them through the map to (r, s),
and read off a short Weierstrass curve with a point of exact order N.
"""
import random
import time

from x1curves.field import random_prime
from x1curves.generate import GenerationStats, generate

rng = random.Random(1)
p = random_prime(64, rng)
print("p =", p)

for N in (7, 13, 16, 24):
    stats = GenerationStats()
    t0 = time.perf_counter()
    curves = generate(N, p, 200, rng, stats=stats)
    dt = time.perf_counter() - t0
    print(f"N={N:>2}: {len(curves)} curves in {dt:.2f}s, rejection rate {stats.rejection_rate:.3f}")

g = curves[0]
print(f"y^2 = x^3 + {g.curve.A}x + {g.curve.B}")
print("point of order", g.N, "=", g.torsion_point)

###############################################################################
# Genus-1 levels can walk an arithmetic progression instead of finding roots
stats = GenerationStats()
generate(11, p, 200, rng, fast_genus1=True, stats=stats)
print("genus-1 path, root-finding calls:", stats.root_calls)
