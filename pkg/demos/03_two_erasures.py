"""
Two erasures: one-by-one, centralized and distributed repair
============================================================

Three ways to rebuild two lost symbols of the GF(16) code, with every
transfer written to a bandwidth ledger:

  dist1     repair one symbol, then reuse it to repair the other
  central2  one center downloads helping traces and cancels the
            interfering trace with traces it already knows
  dist2     two replacement nodes each download, then swap one sub-symbol

Afterwards the distributed scheme is replayed on GF(4), where every
transfer is a single bit and can be followed by hand.
"""

import numpy as np

from tracerepair import RSCode, field_tower, repair_lower_bound
from tracerepair.repair import SCHEMES
from tracerepair.repair.core import key_label

F = field_tower(2, 1, 4)
code = RSCode.full_length(F)
rng = np.random.default_rng(3)
cw = code.encode([int(v) for v in rng.integers(0, F.order, size=code.k)])
pattern = (0, 1)
received = [None if i in pattern else v for i, v in enumerate(cw)]

print(f"{F.name}, k = {code.k}, erasing positions {pattern}")
for scheme in ("dist1", "central2", "dist2"):
    res = SCHEMES[scheme](code, received, pattern)
    assert all(res.recovered[p] == cw[p] for p in pattern)
    print(f"  {scheme:<9} bandwidth {res.bandwidth:>3}  downloads {res.ledger.downloads:>3}"
          f"  exchanges {res.ledger.exchanges}  received by {res.ledger.by_dest()}")
print(f"  naive     bandwidth {2 * code.k * F.t:>3}")
print(f"  lower bound for two distributed repairs: {2 * repair_lower_bound(code.n, code.k, F.sub_order, F.t):.0f}")

# the centralized scheme cancels one interfering trace per repair equation
res = SCHEMES["central2"](code, received, pattern)
print("\ncentral2 repair equations:")
for rec in res.transcript:
    cancels = ", ".join(f"{F.format(it.value)} at {it.position} via {it.via}" for it in rec.interference)
    print(f"  {rec.stage:<7} {rec.check}: Tr({F.format(rec.element)} f(a{rec.target})) = {F.format(rec.trace)}"
          + (f"   canceled {cancels}" if cancels else ""))

# GF(4): f(x) = a + (b - a) x, erasures at the points 1 and x
G = field_tower(2, 1, 2)
small = RSCode.full_length(G)
cw4 = small.encode([G.parse("x^1"), G.parse("x^2")])
received4 = [None if i in (1, 2) else v for i, v in enumerate(cw4)]
res4 = SCHEMES["dist2"](small, received4, (1, 2))
print(f"\n{G.name} codeword {[G.format(v) for v in cw4]}, erasing positions 1 and 2")
for tr in res4.ledger.transfers:
    print(f"  {tr.source} -> {tr.dest}: {tr.count} bit ({tr.kind}) {tr.note}")
for (snd, rcv), combo in sorted(res4.exchange_sources.items()):
    parts = " + ".join(key_label(G, small, key) for key, c in combo.items())
    print(f"  repl{snd} builds its message to repl{rcv} as {parts}")
print(f"  total {res4.bandwidth} bits, recovered {[G.format(res4.recovered[p]) for p in (1, 2)]}")
