"""
Order 4N from X1(2N) and two character tests
============================================

A curve from X1(2N) has the 2-torsion point N*P.  Whether it is also twice
a rational point is decided by quadratic characters alone.
"""
import random

from x1curves.ec import count_points
from x1curves.fourtorsion import FORBID, REQUIRE, FourTorsionStats, generate_order_4N

rng = random.Random(4)

stats = FourTorsionStats()
out = generate_order_4N(7, 1000003, 50, rng, REQUIRE, stats=stats)
print(f"require: {stats.examined_per_accepted:.2f} curves examined per accepted")
print("shortcut discards:", stats.shortcut_discards)
c = out[0]
print("point of order", c.order, "=", c.point, "tests:", c.classification.tests_used)

###############################################################################
# Forbid mode, checked by counting points at a small prime
for c in generate_order_4N(7, 9923, 5, rng, FORBID):
    n = count_points(c.base.curve)
    print(f"#E = {n}, #E mod 28 = {n % 28}")
