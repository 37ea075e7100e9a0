"""Printed values the acceptance suite compares against."""

# x-coordinates of nP on E(b, c), b = rs(r - 1), c = s(r - 1)
MULTIPLES_X = {
    2: "rs(r-1)",
    3: "s(r-1)",
    4: "r(r-1)",
    5: "rs(s-1)",
    6: "s(r-1)(r-s) / (s-1)^2",
    7: "rs(r-1)(s-1)(rs-2r+1) / (r-s)^2",
    8: "r(r-1)(r-s)(r-s^2+s-1) / (rs-2r+1)^2",
    9: "s(r-1)(rs-2r+1)(rs^2-3rs+r+s^2) / (r-s^2+s-1)^2",
    10: "rs(r-s^2+s-1)(r^2-rs^3+3rs^2-4rs+s) / (rs^2-3rs+r+s^2)^2",
}

# N: (g, d(C0), d(C1), t(C0), t(C1), k_max, path length)
SEARCH_STATS = {
    10: (0, 4, 0, 1, 1, 2, 10),
    11: (1, 2, 2, 5, 4, 2, 4),
    12: (0, 2, 0, 6, 1, 2, 13),
    13: (2, 3, 2, 11, 6, 2, 13),
    14: (1, 2, 2, 10, 4, 2, 11),
    15: (1, 3, 2, 15, 5, 3, 18),
    16: (2, 3, 2, 13, 6, 5, 23),
    17: (5, 5, 4, 28, 12, 5, 23),
    18: (2, 4, 2, 19, 6, 5, 24),
    19: (7, 6, 5, 39, 18, 4, 23),
    20: (3, 5, 3, 28, 6, 4, 23),
    21: (5, 6, 4, 55, 11, 4, 18),
    22: (6, 6, 4, 50, 17, 7, 40),
    23: (12, 9, 7, 87, 38, 7, 25),
}

X1_16 = "y^2 + (x^3 + x^2 - x + 1)y + x^2"
X1_16_VECTOR = (2, 0, 3, 4, 6, 6)
X1_16_FIRST_STEP = (5, 8)
RAW_TERM_CEILING = 1791
