"""
Checks and single-erasure repair
================================

A full-length Reed-Solomon code over GF(16) evaluates messages of k = 8
coefficients at all 16 field elements.  Each element u and center a give a
dual codeword p(x) = Tr(u (x - a)) / (x - a) of weight k + 1, and the repair
schemes read their equations off these checks.
"""

import numpy as np

from tracerepair import RSCode, check_vector, field_tower, naive_repair, repair_single_gw, verify_dual

F = field_tower(2, 1, 4)
code = RSCode.full_length(F)
x = F.generator
print(f"{F.name}: n = {code.n}, k = {code.k}, n - k = {code.redundancy}")

# the eight checks centered at 0 and 1, printed over all evaluation points
print("\ncheck values (row: element u and center; column: evaluation point)")
print("point   " + " ".join(f"{F.format(a):>5}" for a in code.points))
for name, u, center in [("p1", 1, 0), ("p2", x, 0), ("p3", F.pow(x, 2), 0), ("p4", F.pow(x, 3), 0),
                        ("q1", 1, 1), ("q2", x, 1), ("q3", F.pow(x, 2), 1), ("q4", F.pow(x, 3), 1)]:
    cv = check_vector(code, u, center)
    cells = " ".join(f"{F.format(v) if v else '0':>5}" for v in cv.values)
    print(f"{name:<7} {cells}   weight {cv.weight}")

rng = np.random.default_rng(7)
msg = [int(v) for v in rng.integers(0, F.order, size=code.k)]
cw = code.encode(msg)
print("\nevery check is orthogonal to the codeword:",
      all(verify_dual(code, check_vector(code, u, 0), cw) for u in range(1, 16)))

# erase position 5 and repair it two ways
received = list(cw)
received[5] = None

value, bw = naive_repair(code, received)
print(f"\nnaive repair: downloads k = {code.k} whole symbols = {bw} sub-symbols, got {F.format(value)}")

res = repair_single_gw(code, received)
print(f"trace repair: one sub-symbol from each of {code.n - 1} survivors = {res.bandwidth} sub-symbols,"
      f" got {F.format(res.recovered[5])}")
assert res.recovered[5] == cw[5] == value

print("\nrepair equations (one per basis element u):")
for rec in res.transcript:
    print(f"  {rec.check}: Tr({F.format(rec.element)} f(a5)) = {F.format(rec.trace)}")
