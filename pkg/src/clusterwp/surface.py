"""Ideal triangulations of punctured surfaces as glued oriented triangles.

A triangulation is a list of triangles, each a counterclockwise triple of
*side* ids, together with an involution pairing the sides.  A pair of sides
is an edge.  Side ``k`` of a triangle runs from its corner ``k`` to corner
``k + 1``; gluing two sides reverses direction, which is what keeps the
surface oriented.  Vertices (punctures) are orbits of corners under the
gluing.  Loops and repeated edges need no special treatment.

Every edge carries a label, a :class:`RationalFunction` in the initial edge
variables (the Penner coordinate expressed in the initial chart).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .cluster import ExchangeMatrix
from .laurent import RationalFunction

__all__ = [
    "TriangulationError",
    "IdealTriangulation",
    "QuadNeighbors",
    "Classification",
    "build_triangulation",
    "from_edge_words",
    "sphere",
    "torus",
    "genus2_one_puncture",
    "builder",
    "BUILDERS",
    "classify",
    "exchange_matrix_of",
    "quad_neighbors",
    "flip",
    "flip_allowed",
]


class TriangulationError(ValueError):
    """Malformed gluing, or an operation the triangulation does not support."""


@dataclass(frozen=True)
class QuadNeighbors:
    """Edges around ``e``: ``e1, e2`` in one triangle, ``e3, e4`` in the other."""

    e1: int
    e2: int
    e3: int
    e4: int

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.e1, self.e2, self.e3, self.e4)


@dataclass(frozen=True)
class Classification:
    nice: bool
    perfect: bool
    degrees: dict[int, int]


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


@dataclass(frozen=True, eq=False)
class IdealTriangulation:
    """Validated triangulation; build it with :func:`build_triangulation`."""

    triangles: tuple[tuple[int, int, int], ...]
    pairing: tuple[tuple[int, int], ...]
    edge_names: tuple[str, ...]
    labels: tuple[RationalFunction, ...]
    name: str = ""
    # derived data, filled in by build_triangulation
    side_edge: dict = field(default_factory=dict, repr=False)
    side_pos: dict = field(default_factory=dict, repr=False)
    mate: dict = field(default_factory=dict, repr=False)
    corner_vertex: tuple = field(default=(), repr=False)
    vertex_count: int = 0

    # -- basic counts ------------------------------------------------------

    @property
    def n_edges(self) -> int:
        return len(self.pairing)

    @property
    def n_triangles(self) -> int:
        return len(self.triangles)

    @property
    def punctures(self) -> int:
        return self.vertex_count

    @property
    def euler_characteristic(self) -> int:
        """V - E + F of the closed surface."""
        return self.vertex_count - self.n_edges + self.n_triangles

    @property
    def genus(self) -> int:
        return (2 - self.euler_characteristic) // 2

    def edge_index(self, e: int | str) -> int:
        if isinstance(e, str):
            try:
                return self.edge_names.index(e)
            except ValueError:
                raise TriangulationError(f"unknown edge {e!r}") from None
        if not 0 <= e < self.n_edges:
            raise TriangulationError(f"edge index {e} out of range")
        return e

    def triangle_edges(self, t: int) -> tuple[int, int, int]:
        return tuple(self.side_edge[s] for s in self.triangles[t])

    def endpoints(self, e: int | str) -> tuple[int, int]:
        """Vertices at the start and end of the first side of edge ``e``."""
        s = self.pairing[self.edge_index(e)][0]
        t, k = self.side_pos[s]
        return self.corner_vertex[t][k], self.corner_vertex[t][(k + 1) % 3]

    def degrees(self) -> dict[int, int]:
        """Half-edges at each vertex, i.e. corners; loops count twice."""
        deg = {v: 0 for v in range(self.vertex_count)}
        for corners in self.corner_vertex:
            for v in corners:
                deg[v] += 1
        return deg

    def vertex_edges(self, v: int) -> list[int]:
        """Edges at ``v`` with multiplicity (a loop at ``v`` appears twice)."""
        out = []
        for e, (s, _) in enumerate(self.pairing):
            p, q = self.endpoints(e)
            out.extend([e] * ((p == v) + (q == v)))
        return out

    def with_labels(self, labels: Sequence[RationalFunction]) -> "IdealTriangulation":
        return build_triangulation(self.triangles, self.pairing, self.edge_names, labels, self.name)

    # -- serialization -------------------------------------------------------

    def to_dict(self, include_labels: bool = True) -> dict:
        data = {
            "name": self.name,
            "triangles": [list(t) for t in self.triangles],
            "pairing": [list(p) for p in self.pairing],
            "edge_names": list(self.edge_names),
            "genus": self.genus,
            "punctures": self.punctures,
        }
        if include_labels:
            names = list(self.edge_names)
            data["labels"] = [lab.format(names) for lab in self.labels]
            data["label_data"] = [lab.to_dict() for lab in self.labels]
        return data

    @classmethod
    def from_dict(cls, data: dict) -> "IdealTriangulation":
        labels = None
        if data.get("label_data") is not None:
            labels = [RationalFunction.from_dict(d) for d in data["label_data"]]
        return build_triangulation(
            data["triangles"], data["pairing"], data.get("edge_names"), labels, data.get("name", "")
        )

    def to_json(self, indent: int | None = None) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    def __repr__(self):
        return (f"IdealTriangulation(name={self.name!r}, g={self.genus}, s={self.punctures}, "
                f"edges={list(self.edge_names)})")


def build_triangulation(
    triangles: Iterable[Sequence[int]],
    pairing: Iterable[Sequence],
    edge_names: Sequence[str] | None = None,
    labels: Sequence[RationalFunction] | None = None,
    name: str = "",
) -> IdealTriangulation:
    """Validate a gluing and derive vertices, genus and punctures.

    ``pairing`` lists side pairs ``[s, s2]``; an optional third entry
    ``True`` marks a pair glued *without* reversing direction, which makes
    the surface non-orientable and is rejected.
    """
    tris = []
    for t in triangles:
        t = tuple(int(x) for x in t)
        if len(t) in (1, 2):
            raise TriangulationError(f"face {list(t)} is a {'monogon' if len(t) == 1 else 'bigon'}")
        if len(t) != 3:
            raise TriangulationError(f"face {list(t)} does not have three sides")
        tris.append(t)
    if not tris:
        raise TriangulationError("no triangles")
    side_pos = {}
    for ti, t in enumerate(tris):
        for k, s in enumerate(t):
            if s in side_pos:
                raise TriangulationError(f"side {s} appears in more than one position")
            side_pos[s] = (ti, k)
    pairs, mate = [], {}
    for p in pairing:
        p = list(p)
        if len(p) == 3:
            if p[2]:
                raise TriangulationError(f"sides {p[0]} and {p[1]} glued without reversal: non-orientable")
            p = p[:2]
        if len(p) != 2:
            raise TriangulationError(f"malformed side pair {p}")
        a, b = int(p[0]), int(p[1])
        if a == b:
            raise TriangulationError(f"side {a} paired with itself")
        for s in (a, b):
            if s not in side_pos:
                raise TriangulationError(f"side {s} in the pairing belongs to no triangle")
            if s in mate:
                raise TriangulationError(f"side {s} is paired twice")
        mate[a], mate[b] = b, a
        pairs.append((a, b))
    dangling = sorted(set(side_pos) - set(mate))
    if dangling:
        raise TriangulationError(f"dangling sides {dangling}")
    side_edge = {}
    for e, (a, b) in enumerate(pairs):
        side_edge[a] = side_edge[b] = e
    for ti, t in enumerate(tris):
        for k in range(3):
            if mate[t[k]] == t[(k + 1) % 3]:
                raise TriangulationError(
                    f"triangle {ti} is self-folded (sides {t[k]} and {t[(k + 1) % 3]} glued); "
                    "it encloses a punctured monogon")
    # connectivity of the dual graph
    seen, stack = {0}, [0]
    while stack:
        ti = stack.pop()
        for s in tris[ti]:
            other = side_pos[mate[s]][0]
            if other not in seen:
                seen.add(other)
                stack.append(other)
    if len(seen) != len(tris):
        raise TriangulationError("gluing is disconnected")
    # vertices: corner (t, k) is the start of side k
    uf = _UnionFind([(ti, k) for ti in range(len(tris)) for k in range(3)])
    for a, b in pairs:
        (t, k), (u, l) = side_pos[a], side_pos[b]
        uf.union((t, k), (u, (l + 1) % 3))
        uf.union((t, (k + 1) % 3), (u, l))
    vid: dict = {}
    corner_vertex = []
    for ti in range(len(tris)):
        row = []
        for k in range(3):
            root = uf.find((ti, k))
            row.append(vid.setdefault(root, len(vid)))
        corner_vertex.append(tuple(row))
    n = len(pairs)
    if edge_names is None:
        edge_names = [f"e{i}" for i in range(n)]
    edge_names = tuple(str(x) for x in edge_names)
    if len(edge_names) != n or len(set(edge_names)) != n:
        raise TriangulationError("edge_names must be distinct, one per side pair")
    if labels is None:
        labels = tuple(RationalFunction.variable(i, n) for i in range(n))
    labels = tuple(labels)
    if len(labels) != n:
        raise TriangulationError("one label per edge required")
    tri = IdealTriangulation(
        tuple(tris), tuple(pairs), edge_names, labels, name,
        side_edge, side_pos, mate, tuple(corner_vertex), len(vid),
    )
    chi = tri.euler_characteristic
    if chi % 2 or chi > 2:
        raise TriangulationError(f"Euler characteristic {chi} is not that of an orientable closed surface")
    if n != 6 * tri.genus - 6 + 3 * tri.punctures:
        raise TriangulationError("edge count does not match 6g - 6 + 3s")
    return tri


def from_edge_words(words: Sequence[Sequence[str]], name: str = "", order: Sequence[str] | None = None) -> IdealTriangulation:
    """Build from triangles written as three signed edge labels, e.g. ``("a", "b", "-c")``.

    A leading ``-`` means the side runs against the edge's own direction.
    Every label must occur once with each sign.
    """
    occurrences: dict[str, dict[int, int]] = {}
    triangles = []
    sid = 0
    for word in words:
        tri = []
        for lab in word:
            sign = -1 if lab.startswith("-") else 1
            base = lab.lstrip("+-")
            slot = occurrences.setdefault(base, {})
            if sign in slot:
                raise TriangulationError(
                    f"edge {base!r} used twice with the same direction: non-orientable gluing")
            slot[sign] = sid
            tri.append(sid)
            sid += 1
        triangles.append(tri)
    names = list(order) if order is not None else sorted(occurrences, key=_natural_key)
    if set(names) != set(occurrences):
        raise TriangulationError("edge order does not match the labels used")
    pairing = []
    for base in names:
        slot = occurrences[base]
        if len(slot) != 2:
            raise TriangulationError(f"edge {base!r} has a dangling side")
        pairing.append((slot[1], slot[-1]))
    return build_triangulation(triangles, pairing, names, None, name)


def _natural_key(s: str):
    head = s.rstrip("0123456789")
    tail = s[len(head):]
    return (head, int(tail) if tail else -1)


def _from_vertex_faces(faces: Sequence[Sequence[int]], name: str) -> IdealTriangulation:
    words, order = [], []
    for face in faces:
        word = []
        for k in range(3):
            u, v = face[k], face[(k + 1) % 3]
            lo, hi = min(u, v), max(u, v)
            label = f"p{lo}_{hi}"
            if label not in order:
                order.append(label)
            word.append(label if u < v else "-" + label)
        words.append(word)
    return from_edge_words(words, name, order)


# builders -----------------------------------------------------------------


def sphere(s: int) -> IdealTriangulation:
    """Sphere with ``s >= 3`` punctures.

    Two triangles for s = 3, the tetrahedron for s = 4 and a bipyramid over an
    ``(s - 2)``-gon beyond that; all perfect.
    """
    if s < 3:
        raise TriangulationError("sphere needs at least 3 punctures")
    if s == 3:
        return from_edge_words([("a", "b", "c"), ("-c", "-b", "-a")], "sphere3", ["a", "b", "c"])
    if s == 4:
        faces = [(0, 1, 2), (0, 3, 1), (1, 3, 2), (0, 2, 3)]
    else:
        m = s - 2
        north, south = m, m + 1
        faces = []
        for i in range(m):
            j = (i + 1) % m
            faces.append((i, j, north))
            faces.append((j, i, south))
    return _from_vertex_faces(faces, f"sphere{s}")


def torus(s: int) -> IdealTriangulation:
    """Torus with ``s >= 1`` punctures: a 1 x s strip of squares, each cut by a diagonal.

    Square ``i`` has bottom and top ``h_i``, left side ``v_i``, right side
    ``v_(i+1)`` and diagonal ``d_i``.  For s = 1 the edges are renamed
    ``a, b, c`` (= h, v, d).
    """
    if s < 1:
        raise TriangulationError("torus needs at least 1 puncture")
    words = []
    for i in range(s):
        j = (i + 1) % s
        words.append((f"h{i}", f"v{j}", f"-d{i}"))
        words.append((f"d{i}", f"-h{i}", f"-v{i}"))
    order = [f"{x}{i}" for i in range(s) for x in "hvd"]
    if s == 1:
        rename = {"h0": "a", "v0": "b", "d0": "c"}
        words = [tuple(("-" if w.startswith("-") else "") + rename[w.lstrip("-")] for w in word) for word in words]
        order = ["a", "b", "c"]
    return from_edge_words(words, f"torus{s}", order)


def genus2_one_puncture() -> IdealTriangulation:
    """Genus 2, one puncture: the octagon a b a^-1 b^-1 c d c^-1 d^-1 fanned from a corner."""
    sides = ["a", "b", "-a", "-b", "c", "d", "-c", "-d"]
    words = []
    for k in range(1, 7):
        first = sides[0] if k == 1 else f"x{k}"
        last = sides[7] if k == 6 else f"-x{k + 1}"
        words.append((first, sides[k], last))
    order = ["a", "b", "c", "d"] + [f"x{k}" for k in range(2, 7)]
    return from_edge_words(words, "genus2", order)


BUILDERS = {
    "sphere3": lambda: sphere(3),
    "sphere4": lambda: sphere(4),
    "sphere5": lambda: sphere(5),
    "sphere6": lambda: sphere(6),
    "torus1": lambda: torus(1),
    "torus2": lambda: torus(2),
    "torus3": lambda: torus(3),
    "genus2": genus2_one_puncture,
}


def builder(name: str) -> IdealTriangulation:
    """Builder surface by name: ``sphereN``, ``torusN`` or ``genus2``."""
    if name in BUILDERS:
        return BUILDERS[name]()
    for prefix, fn in (("sphere", sphere), ("torus", torus)):
        if name.startswith(prefix) and name[len(prefix):].isdigit():
            return fn(int(name[len(prefix):]))
    if name in ("genus2_one_puncture", "genus2_1"):
        return genus2_one_puncture()
    raise TriangulationError(f"unknown surface {name!r}")


# combinatorics --------------------------------------------------------------


def _is_nice(tri: IdealTriangulation) -> bool:
    return all(len(set(tri.triangle_edges(t))) == 3 for t in range(tri.n_triangles))


def classify(tri: IdealTriangulation) -> Classification:
    deg = tri.degrees()
    nice = _is_nice(tri)
    return Classification(nice, nice and all(d >= 3 for d in deg.values()), deg)


def exchange_matrix_of(tri: IdealTriangulation) -> ExchangeMatrix:
    """Z(Delta) from consecutive edge pairs at every corner.

    At corner ``k`` of a triangle with edges ``(e0, e1, e2)`` edge ``e_k``
    is followed counterclockwise by ``e_(k-1)``; each corner adds one to
    ``Z[e_k][e_(k-1)]`` and subtracts one from the transpose entry.
    """
    if not _is_nice(tri):
        raise TriangulationError("exchange matrix is defined only for nice triangulations")
    n = tri.n_edges
    Z = [[0] * n for _ in range(n)]
    for t in range(tri.n_triangles):
        es = tri.triangle_edges(t)
        for k in range(3):
            a, b = es[k], es[k - 1]
            Z[a][b] += 1
            Z[b][a] -= 1
    return ExchangeMatrix(Z)


def _quad(tri: IdealTriangulation, e: int):
    s, s2 = tri.pairing[e]
    (t1, k1), (t2, k2) = tri.side_pos[s], tri.side_pos[s2]
    if t1 == t2:
        raise TriangulationError(f"edge {tri.edge_names[e]} borders the same triangle twice")
    T1, T2 = tri.triangles[t1], tri.triangles[t2]
    return (t1, k1, T1[(k1 + 1) % 3], T1[(k1 + 2) % 3]), (t2, k2, T2[(k2 + 1) % 3], T2[(k2 + 2) % 3])


def quad_neighbors(tri: IdealTriangulation, e: int | str) -> QuadNeighbors:
    """The four edges of the quadrilateral around ``e``, counterclockwise."""
    e = tri.edge_index(e)
    (_, _, s1, s2), (_, _, r1, r2) = _quad(tri, e)
    se = tri.side_edge
    return QuadNeighbors(se[s1], se[s2], se[r1], se[r2])


def flip_allowed(tri: IdealTriangulation, e: int | str) -> bool:
    """Nice input, two distinct triangles at ``e`` and both endpoints of degree at least 3."""
    e = tri.edge_index(e)
    if not _is_nice(tri):
        return False
    s, s2 = tri.pairing[e]
    if tri.side_pos[s][0] == tri.side_pos[s2][0]:
        return False
    deg = tri.degrees()
    p, q = tri.endpoints(e)
    return deg[p] >= 3 and deg[q] >= 3


def flip(tri: IdealTriangulation, e: int | str, check: bool = True) -> IdealTriangulation:
    """Whitehead move at ``e``; the new diagonal keeps the edge index and name.

    Its label is ``(f(a) f(c) + f(b) f(d)) / f(e)`` for the two pairs of
    opposite sides ``(a, c)``, ``(b, d)`` of the quadrilateral.
    """
    e = tri.edge_index(e)
    if check:
        if not _is_nice(tri):
            raise TriangulationError("flip requires a nice triangulation")
        if not flip_allowed(tri, e):
            raise TriangulationError(
                f"flip of {tri.edge_names[e]} is not allowed (an endpoint has degree below 3)")
    (t1, k1, s1, s2), (t2, k2, r1, r2) = _quad(tri, e)
    s, s_ = tri.pairing[e]
    tris = list(tri.triangles)
    tris[t1] = (s2, r1, s)
    tris[t2] = (r2, s1, s_)
    L, se = tri.labels, tri.side_edge
    new_label = (L[se[s1]] * L[se[r1]] + L[se[s2]] * L[se[r2]]) / L[e]
    labels = L[:e] + (new_label,) + L[e + 1:]
    out = build_triangulation(tris, tri.pairing, tri.edge_names, labels, tri.name)
    if check and not _is_nice(out):
        raise TriangulationError(f"flip of {tri.edge_names[e]} produces a triangulation that is not nice")
    return out
