"""
Searching for a small model of X1(16)
=====================================

Local search over chains of the eight atomic substitutions, ranked by the
complexity vector (d_y, m_y, d_x, d_tot, t, S).
"""
import time

from x1curves.data import load_entry
from x1curves.search import optimize

raw = load_entry(16).raw_F.rename(("x", "y"))
print("start:", raw)

t0 = time.perf_counter()
res = optimize(raw, R=8)
print(f"search took {time.perf_counter() - t0:.1f}s, {res.evaluated} curves evaluated")

###############################################################################
# Each improvement, the path that found it and the depth it was found at
for step in res.steps:
    print(f"k={step.k}  path={step.path}  vector={tuple(step.curve.vector)}")

###############################################################################
# The final model and the map back to the raw model
print("f(x, y) =", res.C1.f)
print("r =", res.phi.x_image)
print("s =", res.phi.y_image)
