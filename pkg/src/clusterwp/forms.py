"""Compatible 2-forms and log-canonical Poisson brackets.

Coefficient matrices are numpy object arrays of :class:`fractions.Fraction`.
A 2-form with coefficient matrix ``W`` in a cluster ``g`` is
``sum_jk W[j, k] dlog g_j ^ dlog g_k``; a bracket with coefficient matrix
``P`` satisfies ``{g_j, g_k} = P[j, k] g_j g_k``.

If ``J = d log(new cluster) / d log(old cluster)`` is the logarithmic
Jacobian of a change of cluster, then a bracket transforms as ``J P J^T``
and a form as ``J^-T W J^-1``.  Compatibility means both stay constant.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .cluster import ExchangeMatrix, Seed, apply_word, block_partition, mutate_matrix, mutate_seed
from .laurent import RationalFunction
from .linalg import bareiss_rank, inverse, nullspace, rref, to_fraction_array

__all__ = [
    "CompatibleForms",
    "compatible_form_basis",
    "mutate_form_matrix",
    "pullback_verify",
    "solve_compatible_forms",
    "solve_poisson_star",
    "wp_poisson_tau",
    "tau_bracket_matrix",
    "log_jacobian",
    "skew_from_vector",
    "span_contains",
]

_MAX_RESAMPLE = 50


def _as_matrix(Z) -> ExchangeMatrix:
    return Z if isinstance(Z, ExchangeMatrix) else ExchangeMatrix(Z)


def _fraction_matrix(M) -> np.ndarray:
    if isinstance(M, ExchangeMatrix):
        M = M.rows
    return to_fraction_array(M)


def _check_skew(M: np.ndarray) -> None:
    if M.shape[0] != M.shape[1]:
        raise ValueError("coefficient matrix must be square")
    for i in range(M.shape[0]):
        for j in range(i, M.shape[0]):
            if M[i, j] != -M[j, i]:
                raise ValueError(f"coefficient matrix not skew-symmetric at ({i}, {j})")


@dataclass
class CompatibleForms:
    """Block-indicator basis of the forms ``Lambda Z``.

    ``block_count`` is r(Z), counting singleton zero rows as blocks;
    ``zero_blocks`` lists the blocks whose form ``Lambda_b Z`` vanishes.
    """

    basis: list[np.ndarray]
    block_count: int
    zero_blocks: list[tuple[int, ...]]

    @property
    def dimension(self) -> int:
        return len(self.basis)


def compatible_form_basis(Z) -> CompatibleForms:
    Z = _as_matrix(Z)
    part = block_partition(Z)
    basis, zero = [], []
    for cls in part.classes:
        M = np.full((Z.n, Z.n), Fraction(0), dtype=object)
        for i in cls:
            for j in range(Z.n):
                M[i, j] = Fraction(Z[i, j])
        if any(M[i, j] for i in cls for j in range(Z.n)):
            basis.append(M)
        else:
            zero.append(cls)
    return CompatibleForms(basis, part.r, zero)


def mutate_form_matrix(omega, Z, i: int) -> np.ndarray:
    """Coefficient matrix of the same form in the cluster mutated at ``i``.

    Row and column ``i`` change sign.  For ``j, k != i`` the entry is kept
    unless ``z_ij`` and ``z_ik`` have opposite signs, in which case, with
    ``z_ij > 0 > z_ik``, it becomes ``w_jk + w_ik z_ij`` and ``w_kj`` is set
    to the negative of that.
    """
    Z = _as_matrix(Z)
    W = _fraction_matrix(omega)
    n = Z.n
    if W.shape != (n, n):
        raise ValueError(f"form matrix shape {W.shape} does not match n={n}")
    _check_skew(W)
    if not 0 <= i < n:
        raise IndexError(f"mutation index {i} out of range for n={n}")
    out = W.copy()
    for j in range(n):
        if j != i:
            out[i, j] = -W[i, j]
            out[j, i] = -W[j, i]
    for j in range(n):
        for k in range(n):
            if i in (j, k) or j == k:
                continue
            if Z[i, j] > 0 > Z[i, k]:
                v = W[j, k] + W[i, k] * Z[i, j]
                out[j, k] = v
                out[k, j] = -v
    return out


def log_jacobian(seed: Seed) -> list[list[RationalFunction]]:
    """``J[a][m] = x_m * d f_a / d x_m / f_a`` for the seed's variables."""
    n = seed.n
    J = []
    for a, f in enumerate(seed.variables):
        row = []
        for m in range(n):
            d = f.partial(m)
            if d.is_zero():
                row.append(RationalFunction.constant(0, n))
            else:
                row.append(RationalFunction.variable(m, n) * d / f)
        J.append(row)
    return J


def _random_positive(rng: random.Random, n: int) -> list[Fraction]:
    return [Fraction(rng.randint(1, 9), rng.randint(1, 9)) for _ in range(n)]


def _random_vector(rng: random.Random, n: int) -> list[Fraction]:
    return [Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(n)]


def _form_value(W, dlog_u: Sequence[Fraction], dlog_v: Sequence[Fraction]) -> Fraction:
    n = len(dlog_u)
    total = Fraction(0)
    for j in range(n):
        for k in range(n):
            w = W[j, k]
            if w:
                total += w * (dlog_u[j] * dlog_v[k] - dlog_v[j] * dlog_u[k])
    return total


def _mutated_form(omega, Z, word) -> np.ndarray:
    W = _fraction_matrix(omega)
    Zc = _as_matrix(Z)
    for i in word:
        W = mutate_form_matrix(W, Zc, i)
        Zc = mutate_matrix(Zc, i)
    return W


def pullback_verify(omega, Z, word: Sequence[int], trials: int = 10, seed: int = 0) -> bool:
    """Check that a form keeps the same value after changing cluster along ``word``.

    The form is evaluated on random tangent vector pairs at random positive
    rational points, once in the initial cluster with coefficients ``omega``
    and once in the mutated cluster with the coefficients obtained by
    repeated :func:`mutate_form_matrix`.  Differentials of the mutated
    variables come from exact partial derivatives.
    """
    Z = _as_matrix(Z)
    W0 = _fraction_matrix(omega)
    _check_skew(W0)
    word = list(word)
    W1 = _mutated_form(W0, Z, word)
    final = apply_word(Seed.initial(Z), word)
    grads = [[f.partial(m) for m in range(Z.n)] for f in final.variables]
    rng = random.Random(seed)
    done = attempts = 0
    while done < trials:
        attempts += 1
        if attempts > trials + _MAX_RESAMPLE:
            raise RuntimeError("too many evaluation poles while sampling")
        x = _random_positive(rng, Z.n)
        u, v = _random_vector(rng, Z.n), _random_vector(rng, Z.n)
        try:
            fvals = [f.evaluate(x) for f in final.variables]
            gvals = [[g.evaluate(x) for g in row] for row in grads]
        except ZeroDivisionError:
            continue
        if any(not fv for fv in fvals):
            continue
        du0 = [ui / xi for ui, xi in zip(u, x)]
        dv0 = [vi / xi for vi, xi in zip(v, x)]
        du1 = [sum(g * ui for g, ui in zip(row, u)) / fv for row, fv in zip(gvals, fvals)]
        dv1 = [sum(g * vi for g, vi in zip(row, v)) / fv for row, fv in zip(gvals, fvals)]
        if _form_value(W0, du0, dv0) != _form_value(W1, du1, dv1):
            return False
        done += 1
    return True


# solving for compatible structures over the star of the initial seed -------


def skew_from_vector(vec: Sequence, n: int) -> np.ndarray:
    """Skew matrix with upper-triangle entries listed row by row."""
    M = np.full((n, n), Fraction(0), dtype=object)
    it = iter(vec)
    for j in range(n):
        for k in range(j + 1, n):
            v = Fraction(next(it))
            M[j, k] = v
            M[k, j] = -v
    return M


def _upper(M: np.ndarray) -> list[Fraction]:
    n = M.shape[0]
    return [M[j, k] for j in range(n) for k in range(j + 1, n)]


def _matmul(A, B):
    n, m, p = len(A), len(B), len(B[0])
    return [[sum((A[i][k] * B[k][j] for k in range(m)), Fraction(0)) for j in range(p)] for i in range(n)]


def _transpose(A):
    return [list(r) for r in zip(*A)]


def _transform_numeric(kind: str, Jx, M: np.ndarray) -> list[list[Fraction]]:
    Ml = M.tolist()
    if kind == "poisson":
        return _matmul(_matmul(Jx, Ml), _transpose(Jx))
    Ji = inverse(Jx)
    return _matmul(_matmul(_transpose(Ji), Ml), Ji)


def _symbolic_ok(kind: str, Jsym, M: np.ndarray, Jx0) -> bool:
    n = M.shape[0]
    if kind == "poisson":
        for a in range(n):
            for b in range(a + 1, n):
                acc = RationalFunction.constant(0, n)
                for j in range(n):
                    for k in range(n):
                        if M[j, k]:
                            acc = acc + Jsym[a][j] * Jsym[b][k] * M[j, k]
                if not acc.is_constant():
                    return False
        return True
    # form: the constant matrix read off at the base point must pull back to M
    Wbar = _transform_numeric("form", Jx0, M)
    for j in range(n):
        for k in range(j + 1, n):
            acc = RationalFunction.constant(0, n)
            for a in range(n):
                for b in range(n):
                    if Wbar[a][b]:
                        acc = acc + Jsym[a][j] * Jsym[b][k] * Wbar[a][b]
            if acc != M[j, k]:
                return False
    return True


def _unit_images(kind: str, Jx, n: int) -> list[list[Fraction]]:
    """Upper-triangle images of every unit skew matrix, one row per entry (a, b).

    The image of the unit matrix at (j, k) has entry
    ``K[a][j] K[b][k] - K[a][k] K[b][j]`` where ``K = J`` for brackets and
    ``K = J^-T`` for forms.
    """
    K = Jx if kind == "poisson" else _transpose(inverse(Jx))
    pairs = [(j, k) for j in range(n) for k in range(j + 1, n)]
    return [[K[a][j] * K[b][k] - K[a][k] * K[b][j] for j, k in pairs] for a, b in pairs]


def _solve_star(kind: str, Z, samples: int, seed: int) -> list[np.ndarray]:
    Z = _as_matrix(Z)
    n = Z.n
    npar = n * (n - 1) // 2
    if npar == 0:
        return []
    initial = Seed.initial(Z)
    stars = [log_jacobian(mutate_seed(initial, i)) for i in range(n)]
    rng = random.Random(seed)
    x0 = _random_positive(rng, n)
    base = [[[e.evaluate(x0) for e in row] for row in J] for J in stars]
    base_images = [_unit_images(kind, Jx0, n) for Jx0 in base]
    rows: list[list[Fraction]] = []
    while True:
        for _ in range(samples):
            x = _random_positive(rng, n)
            for J, img0 in zip(stars, base_images):
                img = _unit_images(kind, [[e.evaluate(x) for e in row] for row in J], n)
                rows.extend([u - v for u, v in zip(r, r0)] for r, r0 in zip(img, img0))
        R, piv = rref(rows)
        rows = R[:len(piv)]
        candidates = [skew_from_vector(v, n) for v in nullspace(rows, ncols=npar)]
        # sampling can only over-estimate the solution space; confirm symbolically
        if all(_symbolic_ok(kind, J, C, Jx0) for C in candidates for J, Jx0 in zip(stars, base)):
            return candidates


def solve_poisson_star(Z, samples: int = 10, seed: int = 0) -> list[np.ndarray]:
    """Basis of brackets log-canonical in the initial cluster and all its neighbours."""
    return _solve_star("poisson", Z, samples, seed)


def solve_compatible_forms(Z, samples: int = 10, seed: int = 0) -> list[np.ndarray]:
    """Basis of 2-forms log-canonical in the initial cluster and all its neighbours.

    Solved directly from the change-of-chart Jacobians, independently of
    :func:`compatible_form_basis`.
    """
    return _solve_star("form", Z, samples, seed)


def span_contains(basis: Sequence[np.ndarray], M: np.ndarray) -> bool:
    """Whether the skew matrix ``M`` lies in the span of ``basis``."""
    vecs = [_upper(B) for B in basis]
    target = _upper(_fraction_matrix(M))
    if not any(target):
        return True
    if not vecs:
        return False
    return bareiss_rank(vecs) == bareiss_rank(vecs + [target])


def wp_poisson_tau(Z, lam, I: Sequence[int]) -> np.ndarray:
    """Coefficients ``lam * z_ij`` of the tau-bracket on independent rows ``I``."""
    Z = _as_matrix(Z)
    I = list(I)
    if I and bareiss_rank([Z.row(i) for i in I]) != len(I):
        raise ValueError(f"rows {I} of Z are linearly dependent")
    lam = Fraction(lam)
    return to_fraction_array([[lam * Z[i, j] for j in I] for i in I]) if I else np.empty((0, 0), dtype=object)


def tau_bracket_matrix(Z, P) -> np.ndarray:
    """Coefficients of ``{tau_i, tau_j} / (tau_i tau_j)`` induced by a log-canonical bracket ``P``."""
    Z = _as_matrix(Z)
    Zl = [[Fraction(x) for x in r] for r in Z.rows]
    Pl = _fraction_matrix(P).tolist()
    return to_fraction_array(_matmul(_matmul(Zl, Pl), _transpose(Zl)))
