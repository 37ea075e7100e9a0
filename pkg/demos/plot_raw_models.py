"""
From the group law to a raw model of X1(N)
==========================================

Multiples of the marked point on the Tate normal form, and the plane
equation obtained by asking for nP to have order N.
"""

from x1curves.tate import multiples_of_P, raw_form, torsion_indices

###############################################################################
# x-coordinates of nP as rational functions of (r, s)
for pt in multiples_of_P(8):
    print(f"x_{pt.n} = {pt.x}")

###############################################################################
# The torsion condition x_m = x_n, with m + n = N, gives F(r, s) = 0
for N in (11, 13, 16):
    m, n = torsion_indices(N)
    F = raw_form(N).F
    print(f"N={N}: x_{m} = x_{n} -> {len(F)} terms, total degree {F.total_degree()}")
    print("   ", F)
