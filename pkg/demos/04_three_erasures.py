"""
Three erasures and the fallback
===============================

The three-erasure schemes share one basis of the common root space of the
three lost points, extend it in two directions, and finish with an
activated repair cycle.  They apply when the characteristic divides t and
the triple passes a correctability test.  Every triple in GF(16) passes.
In GF(64) some do not, and those are repaired by rebuilding one symbol
naively and the other two with the two-erasure scheme.
"""

import numpy as np

from tracerepair import (
    RSCode,
    field_tower,
    is_correctable_triple,
    repair_three_centralized,
    repair_three_distributed,
    repair_three_fallback,
)
from tracerepair.errors import NotCorrectable

F = field_tower(2, 1, 4)
code = RSCode.full_length(F)
rng = np.random.default_rng(11)
cw = code.encode([int(v) for v in rng.integers(0, F.order, size=code.k)])
pattern = (2, 9, 11)
received = [None if i in pattern else v for i, v in enumerate(cw)]

res = repair_three_centralized(code, received, pattern)
assert all(res.recovered[p] == cw[p] for p in pattern)
print(f"{F.name}, pattern {pattern}: central3 bandwidth {res.bandwidth} (3(n - 3) = {3 * (code.n - 3)})")
print(f"  common root space has dimension s = {res.info['s']}")
print("  repair equations by stage:")
stages: dict[str, int] = {}
for rec in res.transcript:
    stages[rec.stage] = stages.get(rec.stage, 0) + 1
for stage, count in stages.items():
    print(f"    {stage:<11} {count} traces")

res = repair_three_distributed(code, received, pattern)
assert all(res.recovered[p] == cw[p] for p in pattern)
print(f"  dist3 bandwidth {res.bandwidth} = {res.ledger.downloads} downloads + {res.ledger.exchanges} exchanges")

# GF(64): find a triple through 0 and 1 that fails the test
G = field_tower(2, 1, 6)
big = RSCode.full_length(G)
bad = next(g for g in range(2, G.order) if not is_correctable_triple(G, 0, 1, big.point(g)))
good = sum(is_correctable_triple(G, 0, 1, big.point(g)) for g in range(2, G.order))
print(f"\n{G.name}: {good} of {G.order - 2} third points are correctable with 0 and 1;"
      f" position {bad} ({G.format(big.point(bad))}) is not")

cw64 = big.encode([int(v) for v in rng.integers(0, G.order, size=big.k)])
pattern64 = (0, 1, bad)
received64 = [None if i in pattern64 else v for i, v in enumerate(cw64)]
try:
    repair_three_centralized(big, received64, pattern64)
except NotCorrectable as exc:
    print("  central3 refuses:", exc)
res = repair_three_fallback(big, received64, pattern64)
assert all(res.recovered[p] == cw64[p] for p in pattern64)
print(f"  fallback rebuilds position {res.info['naive_position']} naively, the rest with {res.info['inner_scheme']}:"
      f" bandwidth {res.bandwidth}")
