from hypothesis import strategies as st

from x1curves.poly import BiPoly

coeffs = st.integers(min_value=-(1 << 70), max_value=1 << 70)
small = st.integers(min_value=-9, max_value=9)


@st.composite
def bipolys(draw, vars=("x", "y"), max_deg=4, max_terms=6, coeff=small, nonzero=False):
    n = draw(st.integers(min_value=1 if nonzero else 0, max_value=max_terms))
    terms = {}
    for _ in range(n):
        i = draw(st.integers(0, max_deg))
        j = draw(st.integers(0, max_deg))
        terms[(i, j)] = draw(coeff)
    f = BiPoly(terms, vars)
    if nonzero and f.is_zero():
        f = BiPoly({(0, 0): 1}, vars)
    return f
