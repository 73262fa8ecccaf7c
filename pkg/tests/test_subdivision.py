from fractions import Fraction
from itertools import combinations

import pytest

from poset_tower import (
    RationalPoint,
    SimplicialMap,
    dist_sq,
    face_poset,
    lift_point,
    mesh_sq_bound,
    sd_coordinates,
    sd_map,
    stage_vertex_label,
    subdivide,
)
from poset_tower.errors import ResourceLimit
from poset_tower.fixtures import circle, edge, point, triangle
from poset_tower.verify import sample_points

from conftest import COMPLEXES, FIXTURE_DEPTHS


def brute_force_chain_count(X, k):
    """Number of k-element chains, by checking every k-subset for total order."""
    count = 0
    for combo in combinations(X.elements, k):
        if all(X.leq(a, b) or X.leq(b, a) for a, b in combinations(combo, 2)):
            count += 1
    return count


class TestSubdivide:
    def test_point_is_fixed(self):
        st = subdivide(point(), 5)
        assert st.complex.vertices == ("v",)
        assert st.complex.counts() == (1,)

    def test_edge_stage_one(self):
        st = subdivide(edge(), 1)
        assert st.complex.counts() == (3, 2)
        assert st.complex.vertices == ("a", "b", "b{a,b}")

    def test_triangle_stage_one(self):
        st = subdivide(triangle(), 1)
        assert st.complex.counts() == (7, 12, 6)

    @pytest.mark.parametrize("name", sorted(COMPLEXES))
    def test_simplex_counts_match_chain_counts(self, name):
        K = COMPLEXES[name]()
        st = subdivide(K, 1)
        X = face_poset(K)
        for k in range(K.dim + 1):
            assert len(st.complex.k_simplices(k)) == brute_force_chain_count(X, k + 1)

    def test_provenance_is_total(self):
        st = subdivide(circle(), 2)
        assert set(st.provenance) == set(st.complex.vertices)
        for lab, s in st.provenance.items():
            assert s in st.previous.complex.simplices
            assert stage_vertex_label(s) == lab

    def test_resource_cap(self, monkeypatch):
        monkeypatch.setenv("POSET_TOWER_MAX_SIMPLICES", "10")
        with pytest.raises(ResourceLimit):
            subdivide(triangle(), 2)


class TestCoordinates:
    def test_interior_point(self):
        st = subdivide(edge(), 1)
        p = RationalPoint(st.base, {"a": Fraction(2, 3), "b": Fraction(1, 3)})
        out = sd_coordinates(st, p)
        assert out.coords == {"a": Fraction(1, 3), "b{a,b}": Fraction(2, 3)}

    def test_tie_collapses_to_barycenter(self):
        st = subdivide(edge(), 1)
        p = RationalPoint(st.base, {"a": Fraction(1, 2), "b": Fraction(1, 2)})
        assert sd_coordinates(st, p).coords == {"b{a,b}": Fraction(1)}

    def test_vertices_persist(self):
        st = subdivide(edge(), 1)
        p = RationalPoint.vertex(st.base, "a")
        assert sd_coordinates(st, p).coords == {"a": Fraction(1)}

    def test_embed_barycenter_vertex(self):
        st = subdivide(edge(), 1)
        p = RationalPoint.vertex(st.complex, "b{a,b}")
        assert st.embed_point(p).coords == {"a": Fraction(1, 2), "b": Fraction(1, 2)}

    def test_embed_mixed_point(self):
        st = subdivide(edge(), 1)
        p = RationalPoint(st.complex, {"a": Fraction(1, 3), "b{a,b}": Fraction(2, 3)})
        assert st.embed_point(p).coords == {"a": Fraction(2, 3), "b": Fraction(1, 3)}

    def test_embed_two_level_vertex(self):
        st = subdivide(edge(), 2)
        p = RationalPoint.vertex(st.complex, "b{a,b{a,b}}")
        assert st.embed_point(p).coords == {"a": Fraction(3, 4), "b": Fraction(1, 4)}

    @pytest.mark.parametrize("name", ["edge", "circle", "triangle"])
    def test_round_trip_through_every_stage(self, name):
        K = COMPLEXES[name]()
        depth = FIXTURE_DEPTHS[name]
        deepest = subdivide(K, depth)
        chain = deepest.stage_chain()
        for p in sample_points(K, 25, seed=3):
            coords = p
            for stage in chain[1:]:
                coords = sd_coordinates(stage, coords)
                assert stage.embed_point(coords) == p

    def test_lift_point_reaches_top_stage(self):
        st = subdivide(edge(), 2)
        p = RationalPoint(st.base, {"a": Fraction(2, 3), "b": Fraction(1, 3)})
        lifted = lift_point(st, p)
        assert lifted.complex == st.complex
        assert st.embed_point(lifted) == p


class TestMesh:
    def test_zero_dimensional(self):
        assert mesh_sq_bound(point(), 4) == 0

    def test_edge_values(self):
        E = edge()
        assert mesh_sq_bound(E, 0) == 2
        assert mesh_sq_bound(E, 1) == Fraction(1, 2)

    def test_triangle_contracts_by_four_ninths(self):
        T = triangle()
        assert mesh_sq_bound(T, 1) / mesh_sq_bound(T, 0) == Fraction(4, 9)

    @pytest.mark.parametrize("name", sorted(COMPLEXES))
    def test_mesh_soundness(self, name):
        K = COMPLEXES[name]()
        stage = subdivide(K, 0)
        for n in range(FIXTURE_DEPTHS[name] + 1):
            if n:
                stage = subdivide(K, n)
            bound = mesh_sq_bound(K, n)
            embeds = {v: stage.embed_vertex(v) for v in stage.complex.vertices}
            for s in stage.complex.simplices:
                for u, v in combinations(s.verts, 2):
                    assert dist_sq(embeds[u], embeds[v]) <= bound


class TestSdMap:
    def test_constant_map(self):
        E, PT = edge(), point()
        g = SimplicialMap.constant(E, PT, "v")
        g1 = sd_map(g)
        assert set(g1.vertex_map.values()) == {"v"}

    def test_identity(self):
        E = edge()
        g1 = sd_map(SimplicialMap.identity(E))
        assert g1.vertex_map == {v: v for v in g1.source.vertices}

    def test_swap_fixes_midpoint(self):
        E = edge()
        g1 = sd_map(SimplicialMap(E, E, {"a": "b", "b": "a"}))
        assert g1.vertex_map == {"a": "b", "b": "a", "b{a,b}": "b{a,b}"}

    def test_functoriality(self):
        E = edge()
        swap = SimplicialMap(E, E, {"a": "b", "b": "a"})
        ident = SimplicialMap.identity(E)
        assert sd_map(swap.compose(swap)) == sd_map(ident)
        assert sd_map(swap).compose(sd_map(swap)) == sd_map(ident)
        S1 = circle()
        rot = SimplicialMap(S1, S1, {"0": "1", "1": "2", "2": "0"})
        assert sd_map(rot.compose(rot)) == sd_map(rot).compose(sd_map(rot))
