"""Computational checks on triangulated surfaces.

Covers the gauge action of puncture scalings, corank of Z(Delta) against the
incidence map, representative edge subsets, the shear/tau identification and
the two flip recurrences for intersection numbers and denominator exponents.
Every check returns a small report object with a ``to_dict`` method giving
``{"check", "surface", "word", "pass", "witness"}``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .cluster import ExchangeMatrix, mutate_matrix
from .laurent import RationalFunction, denominator_exponent
from .linalg import bareiss_det, bareiss_rank, independent_rows, nullspace, same_row_space
from .surface import (
    IdealTriangulation,
    TriangulationError,
    classify,
    exchange_matrix_of,
    flip,
    flip_allowed,
    quad_neighbors,
)

__all__ = [
    "Report",
    "gauge_act",
    "incidence_vectors",
    "corank_check",
    "RepresentativeSubset",
    "representative_subsets",
    "find_representative",
    "shear_tau_check",
    "weil_petersson_matrix",
    "FlipTrace",
    "track_flips",
    "thm34_check",
    "random_allowed_word",
]


def _fmt(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (list, tuple)):
        return [_fmt(y) for y in x]
    if isinstance(x, dict):
        return {k: _fmt(v) for k, v in x.items()}
    return x


@dataclass
class Report:
    check: str
    surface: str
    passed: bool
    word: list = field(default_factory=list)
    witness: dict = field(default_factory=dict)

    def __bool__(self):
        return self.passed

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "surface": self.surface,
            "word": list(self.word),
            "pass": self.passed,
            "witness": _fmt(self.witness),
        }


# gauge action ----------------------------------------------------------------


def gauge_act(tri: IdealTriangulation, gauge: Sequence, values: Sequence) -> list[Fraction]:
    """Scale the value of each edge by ``lambda_P * lambda_Q`` for its endpoints P, Q."""
    gauge = [Fraction(x) for x in gauge]
    values = [Fraction(x) for x in values]
    if len(gauge) != tri.punctures or len(values) != tri.n_edges:
        raise ValueError("need one gauge entry per puncture and one value per edge")
    if any(x <= 0 for x in gauge) or any(x <= 0 for x in values):
        raise ValueError("gauge entries and edge values must be positive")
    out = []
    for e, v in enumerate(values):
        p, q = tri.endpoints(e)
        out.append(v * gauge[p] * gauge[q])
    return out


def incidence_vectors(tri: IdealTriangulation) -> list[list[int]]:
    """Rows ``d*(y_P)``: coefficient of ``x_e`` is the number of ends of ``e`` at ``P``."""
    rows = [[0] * tri.n_edges for _ in range(tri.punctures)]
    for e in range(tri.n_edges):
        for v in tri.endpoints(e):
            rows[v][e] += 1
    return rows


def corank_check(tri: IdealTriangulation) -> Report:
    Z = exchange_matrix_of(tri)
    rk = Z.rank()
    corank = Z.n - rk
    kernel = nullspace(Z.rows)
    inc = incidence_vectors(tri)
    image = [inc[i] for i in independent_rows(inc)]
    agrees = corank == tri.punctures and same_row_space(kernel, image)
    return Report("corank", tri.name, agrees, witness={
        "rank": rk,
        "corank": corank,
        "punctures": tri.punctures,
        "kernel_basis": kernel,
        "incidence_image_basis": image,
        "Z": Z.tolist(),
    })


# representative subsets ------------------------------------------------------


@dataclass
class RepresentativeSubset:
    S: tuple[int, ...]
    R: tuple[int, ...]
    components: list[dict]
    weight_rank: int
    det_RR: int | None

    @property
    def unicyclic_odd(self) -> bool:
        return all(c["edges"] == c["vertices"] and c["cycle_length"] % 2 == 1 for c in self.components)

    @property
    def restriction_nondegenerate(self) -> bool:
        return self.det_RR is None or self.det_RR != 0

    def to_dict(self, tri: IdealTriangulation | None = None) -> dict:
        names = (lambda es: [tri.edge_names[e] for e in es]) if tri else list
        return {
            "S": names(self.S),
            "R": names(self.R),
            "components": [dict(c, edge_list=names(c["edge_list"])) for c in self.components],
            "weight_rank": self.weight_rank,
            "det_RR": self.det_RR,
        }


def _components(tri: IdealTriangulation, S: Sequence[int]) -> list[dict]:
    """Connected components of the graph on punctures with edge set ``S``."""
    ends = {e: tri.endpoints(e) for e in S}
    verts = sorted({v for e in S for v in ends[e]})
    adj = {v: [] for v in verts}
    for e in S:
        p, q = ends[e]
        adj[p].append(e)
        if q != p:
            adj[q].append(e)
    comps, seen = [], set()
    for v0 in verts:
        if v0 in seen:
            continue
        cv, ce, stack = {v0}, set(), [v0]
        seen.add(v0)
        while stack:
            v = stack.pop()
            for e in adj[v]:
                ce.add(e)
                for w in ends[e]:
                    if w not in cv:
                        cv.add(w)
                        seen.add(w)
                        stack.append(w)
        comps.append({
            "vertex_list": sorted(cv),
            "edge_list": sorted(ce),
            "vertices": len(cv),
            "edges": len(ce),
            "cycle_length": _cycle_length(ends, sorted(ce)),
        })
    return comps


def _cycle_length(ends: dict, edges: list[int]) -> int:
    """Length of the cycle left after repeatedly pruning leaves; 0 for a forest.

    For a component with more than one cycle this returns the size of the
    2-core, which the caller rejects anyway because edges exceed vertices.
    """
    live = set(edges)
    while True:
        deg: dict[int, int] = {}
        for e in live:
            p, q = ends[e]
            deg[p] = deg.get(p, 0) + 1
            deg[q] = deg.get(q, 0) + 1
        leaves = [e for e in live if ends[e][0] != ends[e][1] and (deg[ends[e][0]] == 1 or deg[ends[e][1]] == 1)]
        if not leaves:
            return len(live)
        live.difference_update(leaves)


def _make_subset(tri: IdealTriangulation, Z: ExchangeMatrix, S: tuple[int, ...], rank: int) -> RepresentativeSubset:
    R = tuple(e for e in range(tri.n_edges) if e not in S)
    det = bareiss_det(Z.submatrix(R)) if R else None
    return RepresentativeSubset(S, R, _components(tri, S), rank, det)


def representative_subsets(tri: IdealTriangulation, limit: int | None = None):
    """All edge subsets of size s on which the puncture scalings act faithfully.

    Faithfulness is rank s of the s x |S| matrix of end counts; no subset
    smaller than s can have that rank, so these are the minimal ones.
    """
    s = tri.punctures
    inc = incidence_vectors(tri)
    Z = exchange_matrix_of(tri)
    found = 0
    for S in itertools.combinations(range(tri.n_edges), s):
        W = [[inc[v][e] for e in S] for v in range(s)]
        rk = bareiss_rank(W)
        if rk == s:
            yield _make_subset(tri, Z, S, rk)
            found += 1
            if limit is not None and found >= limit:
                return


def find_representative(tri: IdealTriangulation) -> RepresentativeSubset:
    for sub in representative_subsets(tri, limit=1):
        return sub
    raise RuntimeError(f"no representative subset found on {tri.name}")


# shear coordinates -------------------------------------------------------------


def _tau_values(Z: ExchangeMatrix, labels):
    out = []
    for e in range(Z.n):
        t = labels[0] ** 0
        for k, z in enumerate(Z.row(e)):
            if z:
                t = t * labels[k] ** z
        out.append(t)
    return out


def shear_tau_check(tri: IdealTriangulation, values: Sequence | None = None) -> Report:
    """Compare ``f(e1) f(e3) / (f(e2) f(e4))`` with ``tau_e`` on every edge.

    Uses the symbolic labels, or exact numeric ``values`` when given.  One
    global orientation choice is allowed: either every shear equals tau or
    every shear equals 1/tau.
    """
    cls = classify(tri)
    if not cls.perfect:
        raise TriangulationError("shear/tau comparison requires a perfect triangulation")
    labels = list(tri.labels) if values is None else [Fraction(v) for v in values]
    Z = exchange_matrix_of(tri)
    tau = _tau_values(Z, labels)
    shear = []
    for e in range(tri.n_edges):
        q = quad_neighbors(tri, e)
        shear.append(labels[q.e1] * labels[q.e3] / (labels[q.e2] * labels[q.e4]))
    direct = [sh == t for sh, t in zip(shear, tau)]
    inverse = [sh * t == 1 for sh, t in zip(shear, tau)]
    if all(direct):
        convention = "shear = tau"
    elif all(inverse):
        convention = "shear = 1/tau"
    else:
        convention = None
    names = list(tri.edge_names)
    fmt = (lambda x: x.format(names)) if values is None else str
    return Report("shear-tau", tri.name, convention is not None, witness={
        "convention": convention,
        "mismatched_edges": [names[e] for e in range(tri.n_edges) if not (direct[e] or inverse[e])],
        "shear": [fmt(x) for x in shear],
        "tau": [fmt(x) for x in tau],
    })


def weil_petersson_matrix(tri: IdealTriangulation) -> list[list[Fraction]]:
    """Skew matrix W with the log-Penner expression of the Weil-Petersson form
    equal to ``sum_{j<k} W[j][k] dx_j ^ dx_k``, read off from the quadrilaterals."""
    n = tri.n_edges
    W = [[Fraction(0)] * n for _ in range(n)]
    half = Fraction(1, 2)
    for e in range(n):
        q = quad_neighbors(tri, e)
        for nb, sign in ((q.e1, 1), (q.e2, -1), (q.e3, 1), (q.e4, -1)):
            W[nb][e] += sign * half
            W[e][nb] -= sign * half
    return W


# flip recurrences ----------------------------------------------------------------


@dataclass(frozen=True)
class FlipTrace:
    """State after a sequence of flips, with the state after every prefix.

    ``inter[p][x]`` and ``delta[p][x]`` are indexed by current edge ``p`` and
    initial edge ``x``.
    """

    initial: IdealTriangulation
    word: tuple[int, ...]
    triangulations: tuple[IdealTriangulation, ...]
    inter_steps: tuple[tuple[tuple[int, ...], ...], ...]
    delta_steps: tuple[tuple[tuple[int, ...], ...], ...]

    @property
    def current(self) -> IdealTriangulation:
        return self.triangulations[-1]

    @property
    def inter(self):
        return self.inter_steps[-1]

    @property
    def delta(self):
        return self.delta_steps[-1]

    @property
    def seed_vars(self) -> tuple[RationalFunction, ...]:
        return self.current.labels


def _initial_matrix(n: int):
    return tuple(tuple(-1 if i == j else 0 for j in range(n)) for i in range(n))


def _update_intersections(M, tri: IdealTriangulation, p: int):
    """Row of the new diagonal: max over the two opposite-side pairs, minus the old row."""
    q = quad_neighbors(tri, p)
    a, b, c, d = q.e1, q.e2, q.e3, q.e4
    # (e1, e3) and (e2, e4) are the opposite pairs of the quadrilateral
    row = tuple(max(M[a][x] + M[c][x], M[b][x] + M[d][x]) - M[p][x] for x in range(len(M)))
    return M[:p] + (row,) + M[p + 1:]


def _update_denominators(D, Z: ExchangeMatrix, p: int):
    """Same update read from the exchange binomial of row ``p`` of Z."""
    pos = [0] * len(D)
    neg = [0] * len(D)
    for k, z in enumerate(Z.row(p)):
        for x in range(len(D)):
            if z > 0:
                pos[x] += z * D[k][x]
            elif z < 0:
                neg[x] -= z * D[k][x]
    row = tuple(max(pos[x], neg[x]) - D[p][x] for x in range(len(D)))
    return D[:p] + (row,) + D[p + 1:]


def track_flips(tri: IdealTriangulation, word: Sequence[int | str]) -> FlipTrace:
    """Flip along ``word`` while propagating both recurrences from ``-I``.

    Intersection numbers are updated from the quadrilateral of the
    triangulation; denominator exponents from the mutating exchange matrix.
    """
    n = tri.n_edges
    word = tuple(tri.edge_index(e) for e in word)
    inter = delta = _initial_matrix(n)
    Z = exchange_matrix_of(tri)
    tris, inters, deltas = [tri], [inter], [delta]
    cur = tri
    for p in word:
        if not flip_allowed(cur, p):
            raise TriangulationError(f"flip of {cur.edge_names[p]} not allowed after {list(tris[-1:])}")
        inter = _update_intersections(inter, cur, p)
        delta = _update_denominators(delta, Z, p)
        cur = flip(cur, p)
        Z = mutate_matrix(Z, p)
        tris.append(cur)
        inters.append(inter)
        deltas.append(delta)
    return FlipTrace(tri, word, tuple(tris), tuple(inters), tuple(deltas))


def thm34_check(tri: IdealTriangulation, word: Sequence[int | str]) -> Report:
    """Symbolic denominator exponents against both recurrences after every flip."""
    trace = track_flips(tri, word)
    names = list(tri.edge_names)
    for step, (cur, inter, delta) in enumerate(zip(trace.triangulations, trace.inter_steps, trace.delta_steps)):
        for p, label in enumerate(cur.labels):
            for x in range(tri.n_edges):
                sym = denominator_exponent(label, x)
                if not sym == inter[p][x] == delta[p][x]:
                    return Report("thm34", tri.name, False, [names[e] for e in trace.word], {
                        "step": step,
                        "edge": names[p],
                        "initial_edge": names[x],
                        "symbolic": sym,
                        "intersection_recurrence": inter[p][x],
                        "denominator_recurrence": delta[p][x],
                        "label": label.format(names),
                        "Z": exchange_matrix_of(cur).tolist(),
                    })
    return Report("thm34", tri.name, True, [names[e] for e in trace.word], {
        "steps": len(trace.word),
        "final_delta": [list(r) for r in trace.delta],
    })


def random_allowed_word(tri: IdealTriangulation, length: int, rng: random.Random) -> list[int]:
    """Up to ``length`` flips, each chosen uniformly among the allowed ones.

    Stops early if no flip is allowed (e.g. the thrice-punctured sphere).
    """
    word, cur = [], tri
    for _ in range(length):
        options = [e for e in range(cur.n_edges) if flip_allowed(cur, e)]
        if not options:
            break
        e = rng.choice(options)
        cur = flip(cur, e)
        word.append(e)
    return word
