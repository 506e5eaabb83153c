"""Exact cluster algebra mutation, compatible 2-forms and Penner-coordinate
surface combinatorics."""

from .laurent import (
    LaurentPolynomial,
    LaurentnessError,
    RationalFunction,
    denominator_exponent,
    lp_ring_ops,
    rf_eval,
    rf_field_ops,
    rf_make,
    rf_partial,
)
from .cluster import (
    BlockPartition,
    ExchangeMatrix,
    Seed,
    apply_word,
    block_partition,
    mutate_matrix,
    mutate_seed,
    select_nondegenerate_rows,
    tau_tuple,
)
from .forms import (
    compatible_form_basis,
    mutate_form_matrix,
    pullback_verify,
    solve_compatible_forms,
    solve_poisson_star,
    wp_poisson_tau,
)
from .surface import (
    IdealTriangulation,
    build_triangulation,
    builder,
    classify,
    exchange_matrix_of,
    flip,
    genus2_one_puncture,
    quad_neighbors,
    sphere,
    torus,
)
from .verify import (
    FlipTrace,
    corank_check,
    find_representative,
    gauge_act,
    shear_tau_check,
    thm34_check,
    track_flips,
)

__version__ = "0.1.0"
