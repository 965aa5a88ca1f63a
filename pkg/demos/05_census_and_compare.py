"""
Correctable triples, bandwidth comparison and seeded simulation
===============================================================

How often does a random third erasure admit the three-erasure scheme, and
how do the schemes compare with naive repair and with the cut-set style
lower bound?  The last part drives the same scenario runner the CLI uses,
with the SplitMix64 generator, so the numbers here are reproducible.
"""

from tracerepair import count_correctable, field_tower, scheme_table, threshold_report
from tracerepair.sim import Scenario, run_scenario

print("correctable third points with erasures fixed at 0 and 1")
for p, m, t in [(2, 1, 4), (2, 1, 6), (2, 1, 8), (2, 2, 4), (3, 1, 3), (3, 1, 6)]:
    F = field_tower(p, m, t)
    c = count_correctable(F)
    print(f"  {F.name:<16} {c.correctable:>5} / {c.total:<5} ({100 * c.correctable / c.total:.1f}%)")

F = field_tower(2, 1, 4)
print(f"\nbandwidth per scheme on {F.name}, default k")
for row in scheme_table(F):
    print(f"  {row.scheme:<10} {row.erasures} erasure(s) {row.bandwidth:>4}   {row.conditions}")

# when do the two-erasure schemes beat the naive baselines?
print("\nbeats naive (dist1 vs naive+gw, central2 vs 2 naive) at default k:")
for q in (2, 4):
    flags = []
    for t in range(2, 7):
        r = threshold_report(q, t)
        flags.append(f"t={t}: {'y' if r.dist1_beats else 'n'}/{'y' if r.central2_beats else 'n'}")
    print(f"  |B|={q}: " + "  ".join(flags))

rep = run_scenario(Scenario(2, 1, 4, ["2", "9", "11"], "dist3", trials=5, seed=2024))
print("\nseeded dist3 run")
print(rep.summary())
print(rep.to_csv())
