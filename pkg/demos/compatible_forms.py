"""
Compatible 2-forms and Poisson brackets
=======================================

A 2-form with constant coefficients against dlog f_i ^ dlog f_j in every
cluster is built as Lambda Z, with Lambda constant on the blocks of Z.  Here
the block basis is compared with the space solved directly from the chart
Jacobians, and the forms are checked by exact pullback along mutation words.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from clusterwp.cluster import CYCLIC3
from clusterwp.forms import (
    compatible_form_basis,
    pullback_verify,
    solve_compatible_forms,
    solve_poisson_star,
    span_contains,
    wp_poisson_tau,
)

two_blocks = [[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 2], [0, 0, -2, 0]]

for label, Z in [("3-cycle", CYCLIC3), ("two blocks", two_blocks), ("zero 2x2", [[0, 0], [0, 0]])]:
    cf = compatible_form_basis(Z)
    solved = solve_compatible_forms(Z)
    inside = all(span_contains(cf.basis, B) for B in solved)
    print(f"{label:<11} blocks r = {cf.block_count}, block basis {cf.dimension}, "
          f"solved space {len(solved)}, solved inside block span: {inside}")

# the zero 2x2 matrix: dlog f1 ^ dlog f2 only changes sign under either
# mutation, so it is compatible although the block span is empty
W = np.array([[Fraction(0), Fraction(1)], [Fraction(-1), Fraction(0)]], dtype=object)
print("dlog f1 ^ dlog f2 on the zero matrix survives [0, 1, 0]:",
      pullback_verify(W, [[0, 0], [0, 0]], [0, 1, 0], trials=5))

# Z itself pulls back exactly; a perturbed form does not
Omega = np.array([[Fraction(x) for x in r] for r in CYCLIC3], dtype=object)
print("\nOmega = Z along [0, 1, 2, 0]:", pullback_verify(Omega, CYCLIC3, [0, 1, 2, 0]))
bad = Omega.copy()
bad[0, 1] += 1
bad[1, 0] -= 1
print("perturbed Omega along [0]:   ", pullback_verify(bad, CYCLIC3, [0]))

# log-canonical brackets over the star of the initial seed
print("\nPoisson star dimension, 3-cycle:", len(solve_poisson_star(CYCLIC3)))
print("Poisson star dimension, [[0,1],[-1,0]]:", len(solve_poisson_star([[0, 1], [-1, 0]])))
P = wp_poisson_tau(CYCLIC3, 1, [0, 1])
print("tau bracket on rows (0, 1) of the 3-cycle:", [[str(x) for x in r] for r in P.tolist()])
