"""Exchange matrices, seeds and their mutations.

Indices are 0-based throughout.  A seed stores its cluster fully expanded in
the initial chart, so every variable is a :class:`RationalFunction` in the
initial variables ``f1, ..., fn``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .laurent import LaurentPolynomial, LaurentnessError, RationalFunction
from .linalg import bareiss_rank, independent_rows, nullspace

__all__ = [
    "ExchangeMatrix",
    "Seed",
    "BlockPartition",
    "mutate_matrix",
    "mutate_seed",
    "apply_word",
    "apply_word_bounded",
    "WorkBudgetExceeded",
    "block_partition",
    "tau_tuple",
    "select_nondegenerate_rows",
    "random_exchange_matrix",
]

CYCLIC3 = ((0, 1, -1), (-1, 0, 1), (1, -1, 0))


class ExchangeMatrix:
    """Skew-symmetric integer matrix, immutable."""

    __slots__ = ("_rows",)

    def __init__(self, rows: Sequence[Sequence[int]] | np.ndarray):
        if isinstance(rows, ExchangeMatrix):
            rows = rows._rows
        if isinstance(rows, np.ndarray):
            rows = rows.tolist()
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("exchange matrix must be square")
        for i in range(n):
            if rows[i][i]:
                raise ValueError(f"nonzero diagonal entry at {i}")
            for j in range(i + 1, n):
                if rows[i][j] != -rows[j][i]:
                    raise ValueError(f"not skew-symmetric at ({i}, {j})")
        self._rows = rows

    @classmethod
    def zero(cls, n: int) -> "ExchangeMatrix":
        return cls([[0] * n for _ in range(n)])

    @property
    def n(self) -> int:
        return len(self._rows)

    @property
    def rows(self) -> tuple[tuple[int, ...], ...]:
        return self._rows

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self._rows[i][j]

    def row(self, i: int) -> tuple[int, ...]:
        return self._rows[i]

    def to_array(self) -> np.ndarray:
        return np.array(self._rows, dtype=np.int64).reshape(self.n, self.n)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self._rows]

    def rank(self) -> int:
        return bareiss_rank(self._rows)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int] | None = None) -> list[list[int]]:
        cols = rows if cols is None else cols
        return [[self._rows[i][j] for j in cols] for i in rows]

    def __eq__(self, other):
        if isinstance(other, ExchangeMatrix):
            return self._rows == other._rows
        if isinstance(other, (list, tuple, np.ndarray)):
            return self._rows == ExchangeMatrix(other)._rows
        return NotImplemented

    def __hash__(self):
        return hash(self._rows)

    def __repr__(self):
        return f"ExchangeMatrix({self.tolist()})"

    def __str__(self):
        return str(self.to_array())


def _as_matrix(Z) -> ExchangeMatrix:
    return Z if isinstance(Z, ExchangeMatrix) else ExchangeMatrix(Z)


def mutate_matrix(Z, i: int) -> ExchangeMatrix:
    """Matrix mutation at index ``i``.

    Entries in row or column ``i`` change sign; every other entry becomes
    ``z_kl + (|z_ki| z_il + z_ki |z_il|) / 2``.
    """
    Z = _as_matrix(Z)
    n = Z.n
    if not 0 <= i < n:
        raise IndexError(f"mutation index {i} out of range for n={n}")
    z = Z.rows
    out = []
    for k in range(n):
        zk = z[k]
        zki = zk[i]
        new_row = []
        for l in range(n):
            if k == i or l == i:
                new_row.append(-zk[l])
            else:
                zil = z[i][l]
                new_row.append(zk[l] + (abs(zki) * zil + zki * abs(zil)) // 2)
        out.append(new_row)
    return ExchangeMatrix(out)


@dataclass(frozen=True)
class BlockPartition:
    """Connected components of the support graph of an exchange matrix."""

    classes: tuple[tuple[int, ...], ...]

    @property
    def r(self) -> int:
        return len(self.classes)

    def label(self) -> list[int]:
        """Class index of every row."""
        n = sum(len(c) for c in self.classes)
        lab = [0] * n
        for b, cls in enumerate(self.classes):
            for i in cls:
                lab[i] = b
        return lab


def block_partition(Z) -> BlockPartition:
    Z = _as_matrix(Z)
    n = Z.n
    seen = [False] * n
    classes = []
    for start in range(n):
        if seen[start]:
            continue
        comp = [start]
        seen[start] = True
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if Z[i, j] and not seen[j]:
                    seen[j] = True
                    comp.append(j)
                    stack.append(j)
        classes.append(tuple(sorted(comp)))
    return BlockPartition(tuple(classes))


class WorkBudgetExceeded(RuntimeError):
    """A guarded mutation would multiply polynomials beyond the allowed work."""


def _exchange_numerator(Z: ExchangeMatrix, i: int, values: Sequence, one, max_work: int | None = None):
    """Sum of the two exchange monomials of row ``i`` evaluated at ``values``.

    Empty products contribute ``one``.  With ``max_work`` every single
    multiplication is checked first: the product of the operand term counts
    must not exceed it.
    """
    pos = neg = one
    for k, zik in enumerate(Z.row(i)):
        if not zik:
            continue
        if max_work is None:
            factor = values[k] ** abs(zik)
        else:
            factor = one
            for _ in range(abs(zik)):
                factor = _guarded_mul(factor, values[k], max_work)
        if zik > 0:
            pos = pos * factor if max_work is None else _guarded_mul(pos, factor, max_work)
        else:
            neg = neg * factor if max_work is None else _guarded_mul(neg, factor, max_work)
    return pos + neg


def _guarded_mul(a, b, max_work: int):
    if len(a) * len(b) > max_work:
        raise WorkBudgetExceeded(f"product of {len(a)} by {len(b)} terms exceeds {max_work}")
    return a * b


@dataclass(frozen=True, eq=False)
class Seed:
    """A cluster in the initial chart together with its exchange matrix."""

    matrix: ExchangeMatrix
    variables: tuple[RationalFunction, ...]
    history: tuple[int, ...] = field(default=())

    def __post_init__(self):
        if len(self.variables) != self.matrix.n:
            raise ValueError("number of variables does not match the matrix size")

    @classmethod
    def initial(cls, Z) -> "Seed":
        Z = _as_matrix(Z)
        n = Z.n
        return cls(Z, tuple(RationalFunction.variable(i, n) for i in range(n)))

    @property
    def n(self) -> int:
        return self.matrix.n

    def mutate(self, i: int) -> "Seed":
        return mutate_seed(self, i)

    def __eq__(self, other):
        if not isinstance(other, Seed):
            return NotImplemented
        return self.matrix == other.matrix and self.variables == other.variables

    def __hash__(self):
        return hash((self.matrix, self.variables))

    def names(self) -> list[str]:
        return [f"f{i + 1}" for i in range(self.n)]

    def to_dict(self) -> dict:
        identity = self.variables == Seed.initial(self.matrix).variables
        if identity:
            variables = self.names()
        else:
            variables = [v.to_dict() for v in self.variables]
        return {
            "n": self.n,
            "Z": self.matrix.tolist(),
            "variables": variables,
            "history": list(self.history),
            "display": [v.format(self.names()) for v in self.variables],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Seed":
        Z = ExchangeMatrix(data["Z"])
        n = int(data.get("n", Z.n))
        if n != Z.n:
            raise ValueError(f"declared n={n} does not match matrix size {Z.n}")
        raw = data.get("variables")
        if raw is None:
            return cls.initial(Z)
        variables = []
        for k, v in enumerate(raw):
            if isinstance(v, str):
                idx = _parse_variable_name(v, n)
                variables.append(RationalFunction.variable(idx, n))
            else:
                variables.append(RationalFunction.from_dict(v))
        return cls(Z, tuple(variables), tuple(data.get("history", ())))

    def to_json(self, indent: int | None = None) -> str:
        return json.dumps(self.to_dict(), indent=indent)


def _parse_variable_name(name: str, n: int) -> int:
    if not (name.startswith("f") and name[1:].isdigit()):
        raise ValueError(f"unrecognised variable name {name!r}")
    idx = int(name[1:]) - 1
    if not 0 <= idx < n:
        raise ValueError(f"variable {name!r} out of range for n={n}")
    return idx


def mutate_seed(s: Seed, i: int, max_work: int | None = None) -> Seed:
    """Exchange variable ``i`` and mutate the matrix at ``i``.

    Raises :class:`LaurentnessError` if the new variable fails to reduce to a
    Laurent polynomial in the initial variables.  ``max_work`` bounds each
    polynomial multiplication (see :class:`WorkBudgetExceeded`); it applies
    to Laurent seeds only.
    """
    n = s.n
    if not 0 <= i < n:
        raise IndexError(f"mutation index {i} out of range for n={n}")
    fi = s.variables[i]
    if fi.is_zero():
        raise ZeroDivisionError(f"variable {i} is zero")
    if all(v.is_laurent() for v in s.variables):
        lp = [v.numerator for v in s.variables]
        num = _exchange_numerator(s.matrix, i, lp, LaurentPolynomial.one(n), max_work)
        if max_work is not None and len(num) * len(lp[i]) > max_work:
            raise WorkBudgetExceeded(f"division of {len(num)} by {len(lp[i])} terms exceeds {max_work}")
        q = num.exact_divide(lp[i])
        if q is None:
            raise LaurentnessError(f"mutation at {i} along {list(s.history)} is not Laurent")
        new = RationalFunction._raw(q, LaurentPolynomial.one(n))
    else:
        new = _exchange_numerator(s.matrix, i, s.variables, RationalFunction.constant(1, n)) / fi
    variables = s.variables[:i] + (new,) + s.variables[i + 1:]
    return Seed(mutate_matrix(s.matrix, i), variables, s.history + (i,))


def apply_word(s: Seed, word: Iterable[int]) -> Seed:
    for i in word:
        s = mutate_seed(s, i)
    return s


def apply_word_bounded(s: Seed, word: Iterable[int], max_work: int) -> tuple[Seed, int]:
    """Apply ``word`` while every multiplication stays within ``max_work``.

    Returns the last seed reached and the number of mutations performed; a
    short count means the remaining suffix was skipped as too expensive.
    Every performed step carries the usual Laurentness check.
    """
    done = 0
    for i in word:
        try:
            s = mutate_seed(s, i, max_work)
        except WorkBudgetExceeded:
            break
        done += 1
    return s, done


def tau_tuple(s: Seed) -> tuple[RationalFunction, ...]:
    """tau_j = prod_k f_k ** z_jk for the current cluster and matrix."""
    out = []
    for j in range(s.n):
        num = RationalFunction.constant(1, s.n)
        den = RationalFunction.constant(1, s.n)
        for k, z in enumerate(s.matrix.row(j)):
            if z > 0:
                num = num * s.variables[k] ** z
            elif z < 0:
                den = den * s.variables[k] ** (-z)
        out.append(num / den)
    return tuple(out)


def tau_values(Z, values: Sequence) -> list[Fraction]:
    """tau coordinates of a numeric point (Fractions)."""
    Z = _as_matrix(Z)
    out = []
    for j in range(Z.n):
        t = Fraction(1)
        for k, z in enumerate(Z.row(j)):
            if z:
                t *= Fraction(values[k]) ** z
        out.append(t)
    return out


def select_nondegenerate_rows(Z) -> tuple[int, ...]:
    """Rows of ``Z`` forming a full-rank m x n submatrix, m = rank(Z).

    Rows are picked greedily by increasing index.
    """
    return tuple(independent_rows(_as_matrix(Z).rows))


def kernel_basis(Z) -> list[list[Fraction]]:
    return nullspace(_as_matrix(Z).rows)


def random_exchange_matrix(n: int, bound: int, rng) -> ExchangeMatrix:
    """Uniform entries in [-bound, bound] above the diagonal."""
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            v = rng.randint(-bound, bound)
            rows[i][j], rows[j][i] = v, -v
    return ExchangeMatrix(rows)
