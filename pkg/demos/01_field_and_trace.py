"""
Field towers, traces and root spaces
====================================

Elements of GF(p^(mt)) are ints holding base-p coefficient digits, and
multiplication goes through log/antilog tables.  This script walks through
GF(16) over GF(2): the trace map, its kernel, and the root spaces that the
two- and three-erasure schemes are built on.
"""

from tracerepair import dual_basis, field_tower, root_space, trace_kernel, triple_root_space

F = field_tower(2, 1, 4)
x = F.generator
print(F.name, "defined by the Conway polynomial, generator", F.format(x))

# elements print as powers of the generator; coeffs() gives the digits, low degree first
print("x^4 has coefficients", F.coeffs(F.pow(x, 4)), "so x^4 = x + 1;  x^15 =", F.format(F.pow(x, 15)))

# the trace to GF(2) sums the Frobenius conjugates a, a^2, a^4, a^8
for e in range(5):
    a = F.pow(x, e)
    print(f"Tr(x^{e}) = {F.trace(a)}   (by definition: {F.trace_by_definition(a)})")

# the kernel of the trace has dimension t - 1 = 3
K = trace_kernel(F)
print("ker Tr basis:", [F.format(v) for v in K.basis], "dim", K.dim)

# root space of Q(z) = Tr(z) Tr(z (b - a)): for a = 0, b = 1 this is the kernel itself
R = root_space(F, 0, 1)
print("root space for (0, 1):", [F.format(v) for v in R.basis])

# for three points the common root space has dimension t - 2 or t - 1
for g in (F.pow(x, 2), F.pow(x, 5), F.pow(x, 11)):
    S = triple_root_space(F, 0, 1, g)
    print(f"triple (0, 1, {F.format(g)}): dim {S.dim}")

# a trace-dual basis turns t traces back into the element
basis = [1, x, F.pow(x, 2), F.pow(x, 3)]
tb = dual_basis(F, basis)
secret = F.pow(x, 9)
traces = [F.trace(F.mul(u, secret)) for u in basis]
rebuilt = F.sum(F.mul(v, d) for v, d in zip(traces, tb.dual))
print("traces of x^9 against 1, x, x^2, x^3:", traces, "-> rebuilt", F.format(rebuilt))
assert rebuilt == secret

# GF(4) over GF(2): the dual of {1, x} is {x^2, 1}
G = field_tower(2, 1, 2)
print("GF(4) dual of {1, x}:", [G.format(d) for d in dual_basis(G, [1, G.generator]).dual])
