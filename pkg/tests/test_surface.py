from __future__ import annotations

import json
import random

import pytest

from clusterwp.cluster import Seed, apply_word, mutate_matrix
from clusterwp.laurent import RationalFunction as RF
from clusterwp.surface import (
    BUILDERS,
    IdealTriangulation,
    TriangulationError,
    build_triangulation,
    builder,
    classify,
    exchange_matrix_of,
    flip,
    flip_allowed,
    from_edge_words,
    genus2_one_puncture,
    quad_neighbors,
    sphere,
    torus,
)
from clusterwp.verify import random_allowed_word


def expected_edges(tri):
    return 6 * tri.genus - 6 + 3 * tri.punctures


def random_flipped(name, rng, length):
    tri = builder(name)
    word = random_allowed_word(tri, length, rng)
    for e in word:
        tri = flip(tri, e)
    return tri, word


class TestBuild:
    def test_sphere3_gluing(self):
        tri = build_triangulation([[0, 1, 2], [3, 4, 5]], [[0, 5], [1, 4], [2, 3]])
        assert (tri.genus, tri.punctures, tri.n_edges) == (0, 3, 3)

    def test_torus_gluing(self):
        tri = build_triangulation([[0, 1, 2], [3, 4, 5]], [[0, 4], [1, 5], [3, 2]])
        assert (tri.genus, tri.punctures, tri.n_edges) == (1, 1, 3)
        assert tri.vertex_count == 1

    def test_from_edge_words(self):
        tri = from_edge_words([("a", "b", "c"), ("-a", "-b", "-c")])
        assert tri.edge_names == ("a", "b", "c") and tri.genus == 1

    def test_initial_labels_are_variables(self):
        tri = torus(1)
        assert tri.labels == tuple(RF.variable(i, 3) for i in range(3))

    @pytest.mark.parametrize("faces", [[[0, 1]], [[0]]])
    def test_monogon_bigon(self, faces):
        with pytest.raises(TriangulationError, match="gon"):
            build_triangulation(faces, [[0, 1]])

    def test_dangling_side(self):
        with pytest.raises(TriangulationError):
            build_triangulation([[0, 1, 2], [3, 4, 5]], [[0, 5], [1, 4]])

    def test_non_orientable(self):
        with pytest.raises(TriangulationError, match="orientable"):
            build_triangulation([[0, 1, 2], [3, 4, 5]], [[0, 5, True], [1, 4], [2, 3]])
        with pytest.raises(TriangulationError, match="orientable"):
            from_edge_words([("a", "b", "c"), ("a", "-b", "-c")])

    def test_self_folded(self):
        with pytest.raises(TriangulationError):
            build_triangulation([[0, 1, 2], [3, 4, 5]], [[0, 1], [2, 3], [4, 5]])

    def test_self_pair_and_duplicates(self):
        with pytest.raises(TriangulationError):
            build_triangulation([[0, 1, 2], [3, 4, 5]], [[0, 0], [1, 4], [2, 3]])
        with pytest.raises(TriangulationError):
            build_triangulation([[0, 1, 2], [2, 4, 5]], [[0, 5], [1, 4], [2, 3]])

    def test_disconnected(self):
        with pytest.raises(TriangulationError):
            build_triangulation(
                [[0, 1, 2], [3, 4, 5], [6, 7, 8], [9, 10, 11]],
                [[0, 5], [1, 4], [2, 3], [6, 11], [7, 10], [8, 9]])

    def test_json_roundtrip(self):
        tri = flip(torus(2), "d0")
        again = IdealTriangulation.from_dict(json.loads(tri.to_json()))
        assert again.triangles == tri.triangles and again.labels == tri.labels
        assert again.edge_names == tri.edge_names


class TestBuilders:
    @pytest.mark.parametrize("name", sorted(BUILDERS))
    def test_edge_count_and_perfect(self, name):
        tri = builder(name)
        assert tri.n_edges == expected_edges(tri)
        # vertices are the punctures, so V - E + F is that of the closed surface
        assert tri.euler_characteristic == 2 - 2 * tri.genus
        c = classify(tri)
        assert c.nice
        assert c.perfect == (name != "sphere3")

    def test_named_counts(self):
        assert sphere(4).n_edges == 6
        assert torus(1).n_edges == 3
        assert genus2_one_puncture().n_edges == 9
        assert (genus2_one_puncture().genus, genus2_one_puncture().punctures) == (2, 1)

    @pytest.mark.parametrize("bad", [lambda: sphere(2), lambda: torus(0), lambda: builder("klein")])
    def test_unsupported(self, bad):
        with pytest.raises(ValueError):
            bad()


class TestClassify:
    def test_torus_degree_six(self):
        c = classify(torus(1))
        assert c.nice and c.perfect and c.degrees == {0: 6}

    def test_sphere3_nice_not_perfect(self):
        c = classify(sphere(3))
        assert c.nice and not c.perfect

    def test_degree_two_vertex_blocks_flips(self):
        # a nice triangulation with a degree-2 puncture inside a loop
        rng = random.Random(0)
        for _ in range(200):
            tri, _ = random_flipped("torus2", rng, 6)
            c = classify(tri)
            if not c.perfect:
                break
        assert c.nice and not c.perfect
        low = [v for v, d in c.degrees.items() if d < 3]
        for e in tri.vertex_edges(low[0]):
            assert not flip_allowed(tri, e)
            with pytest.raises(TriangulationError):
                flip(tri, e)


class TestExchangeMatrix:
    def test_sphere3_and_torus1_entries(self):
        assert exchange_matrix_of(sphere(3))[0, 1] == 0
        Z = exchange_matrix_of(torus(1))
        assert Z[0, 1] == -2
        assert all(abs(Z[i, j]) == 2 for i in range(3) for j in range(3) if i != j)

    def test_sphere3_zero(self):
        assert exchange_matrix_of(sphere(3)).tolist() == [[0] * 3] * 3

    def test_corank_equals_punctures(self):
        for name in BUILDERS:
            tri = builder(name)
            Z = exchange_matrix_of(tri)
            assert Z.n - Z.rank() == tri.punctures


class TestQuad:
    def test_torus(self):
        q = quad_neighbors(torus(1), "a")
        assert q.as_tuple() == (1, 2, 1, 2)

    def test_sphere4_distinct(self):
        tri = sphere(4)
        for e in range(tri.n_edges):
            assert len(set(quad_neighbors(tri, e).as_tuple())) == 4

    def test_quad_preserved_by_flip(self):
        tri = sphere(5)
        for e in range(tri.n_edges):
            if flip_allowed(tri, e):
                q = quad_neighbors(tri, e).as_tuple()
                q2 = quad_neighbors(flip(tri, e), e).as_tuple()
                assert set(q) == set(q2)
                # opposite pairs stay opposite
                assert {frozenset((q[0], q[2])), frozenset((q[1], q[3]))} == \
                    {frozenset((q2[0], q2[2])), frozenset((q2[1], q2[3]))}


class TestFlip:
    def test_torus2_two_flips(self):
        tri = torus(2)
        v0, v1, h0, d0 = (tri.labels[tri.edge_index(k)] for k in ("v0", "v1", "h0", "d0"))
        a, c, b, d = v0, v1, h0, d0
        t1 = flip(tri, "d0")
        assert t1.labels[tri.edge_index("d0")] == (a * c + b * b) / d
        t2 = flip(t1, "h0")
        assert t2.labels[tri.edge_index("h0")] == (a * c * d * d + (a * c + b * b) ** 2) / (b * d * d)

    @pytest.mark.parametrize("name", ["sphere4", "torus1", "genus2"])
    def test_flip_twice_restores(self, name):
        tri = builder(name)
        for e in range(tri.n_edges):
            if flip_allowed(tri, e):
                back = flip(flip(tri, e), e)
                assert back.labels == tri.labels
                assert exchange_matrix_of(back) == exchange_matrix_of(tri)

    def test_sphere3_has_no_flips(self):
        tri = sphere(3)
        assert not any(flip_allowed(tri, e) for e in range(3))

    @pytest.mark.parametrize("name", sorted(BUILDERS))
    def test_commutes_with_mutation_on_every_edge(self, name):
        tri = builder(name)
        Z = exchange_matrix_of(tri)
        for e in range(tri.n_edges):
            if flip_allowed(tri, e):
                assert exchange_matrix_of(flip(tri, e)) == mutate_matrix(Z, e)

    @pytest.mark.parametrize("name", ["sphere4", "sphere5", "torus1", "torus2", "genus2"])
    def test_labels_match_seed(self, name):
        rng = random.Random(hash(name) % 1000)
        tri0 = builder(name)
        for _ in range(4):
            tri, word = random_flipped(name, rng, 6)
            assert tri.n_edges == expected_edges(tri0)
            assert tri.euler_characteristic == tri0.euler_characteristic
            assert classify(tri).nice
            s = apply_word(Seed.initial(exchange_matrix_of(tri0)), word)
            assert tri.labels == s.variables
            assert exchange_matrix_of(tri) == s.matrix

    def test_flip_by_name(self):
        assert flip(torus(1), "a").labels == flip(torus(1), 0).labels
