"""Reference values replayed by ``selftest``.

CHECK_TABLE_GF16 lists the eight trace checks of the two-erasure scheme over
GF(16) = GF(2)[x]/(x^4 + x + 1) with erased points 0 and 1.  The p rows are
centred at 0, the q rows at 1, and both use u = 1, x, x^2, x^3.  Columns
follow the canonical order 0, 1, x, ..., x^14; "." is zero.

TRIPLE_CENSUS maps (|B|, t) to (correctable third points, n - 2) for the
fixed pair (0, 1).
"""

CHECK_TABLE_GF16 = {
    "p1": "1 . . . x^12 . . x^9 x^8 . x^6 . x^4 x^3 x^2 x^1",
    "p2": "x^1 . . x^13 . . x^10 x^9 . x^7 . x^5 x^4 x^3 x^2 .",
    "p3": "x^2 . x^14 . . x^11 x^10 . x^8 . x^6 x^5 x^4 x^3 . .",
    "p4": "x^3 1 . . x^12 x^11 . x^9 . x^7 x^6 x^5 x^4 . . .",
    "q1": ". 1 . . x^1 . . x^2 x^6 . x^8 . x^3 x^4 x^9 x^12",
    "q2": ". x^1 . x^7 . . x^5 x^2 . x^13 . x^10 x^3 x^4 x^9 .",
    "q3": ". x^2 x^11 . . x^14 x^5 . x^6 . x^8 x^10 x^3 x^4 . .",
    "q4": "1 x^3 x^11 x^7 . . x^5 . x^6 . . . . x^4 x^9 x^12",
}

TRIPLE_CENSUS = {
    (2, 4): (14, 14),
    (2, 6): (60, 62),
    (2, 8): (206, 254),
    (2, 10): (900, 1022),
    (4, 4): (158, 254),
    (4, 6): (2330, 4094),
    (4, 8): (37886, 65534),
    (8, 4): (1406, 4094),
    (8, 6): (86694, 262142),
    (3, 3): (19, 25),
    (3, 6): (529, 727),
    (3, 9): (14083, 19681),
    (9, 3): (223, 727),
    (9, 6): (158263, 531439),
}

# GF(4) with symbols a = a1 + a2 x and b = b1 + b2 x, message f(x) = a + (b - a) x.
# Linear forms are coefficient tuples over the bits (a1, a2, b1, b2).
GF4_SINGLE_DOWNLOADS = {  # position 1 (point 1) erased: helping trace from each survivor
    0: (0, 1, 0, 0),
    2: (0, 1, 1, 0),
    3: (0, 1, 1, 1),
}
GF4_SINGLE_BASIS = ("x^2", "1")  # Tr(x^2 b) = b1 and Tr(b) = b2
GF4_SINGLE_COMBINATIONS = {  # coefficient of each survivor's helping trace
    "x^2": {0: 1, 2: 1, 3: 0},
    "1": {0: 0, 2: 1, 3: 1},
}
GF4_DOUBLE_DOWNLOADS = {  # positions 1 and 2 (points 1 and x) erased
    1: {0: (0, 1, 0, 0), 3: (0, 1, 1, 1)},
    2: {0: (1, 0, 0, 0), 3: (1, 1, 1, 0)},
}
GF4_DOUBLE_EXCHANGES = {  # (sender, receiver): (value, {source: coefficient})
    (2, 1): ((0, 1, 1, 0), {0: 1, 3: 1}),
    (1, 2): ((0, 0, 1, 1), {0: 1, 3: 1}),
}
