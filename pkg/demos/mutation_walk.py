"""
Walking the exchange tree of the 3-cycle
========================================

Start from the oriented 3-cycle quiver, mutate along a few words and look at
what comes out: every variable is a Laurent polynomial in the initial
cluster, the exchange matrix keeps its rank, and the tau coordinates obey the
kernel relation of Z.
"""

from __future__ import annotations

from clusterwp.cluster import CYCLIC3, Seed, apply_word, kernel_basis, mutate_seed, tau_tuple
from clusterwp.laurent import denominator_exponent

seed = Seed.initial(CYCLIC3)
names = seed.names()
print("Z =", seed.matrix.tolist())

# one step at each index
for i in range(3):
    s = mutate_seed(seed, i)
    print(f"mutate at {i}: {s.variables[i].format(names):<16} Z -> {s.matrix.tolist()}")

# a longer walk; variables stay Laurent and the denominators are monomials
word = [0, 1, 2, 0, 1]
s = apply_word(seed, word)
print("\nafter", word)
for v in s.variables:
    dens = [denominator_exponent(v, x) for x in range(3)]
    print(f"  {v.format(names):<40} denominator vector {dens}")
print("rank of Z before/after:", seed.matrix.rank(), s.matrix.rank())

# (1, 1, 1) spans ker Z, so the product of the initial tau coordinates is 1
tau = tau_tuple(seed)
print("\ninitial tau:", [t.format(names) for t in tau])
print("tau_1 tau_2 tau_3 =", (tau[0] * tau[1] * tau[2]).format(names))

# after the walk the kernel has moved, and the relation moves with it
(c,) = kernel_basis(s.matrix)
tau = tau_tuple(s)
prod = tau[0] ** 0
for t, ck in zip(tau, c):
    prod = prod * t ** int(ck)
print("kernel vector", [int(x) for x in c], "-> product", prod.format(names))

# mutating twice at the same index undoes the step
print("involution:", mutate_seed(mutate_seed(s, 2), 2) == s)
