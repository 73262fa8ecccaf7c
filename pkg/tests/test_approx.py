from fractions import Fraction

import pytest

from poset_tower import (
    PLMap,
    RationalPoint,
    SimplicialComplex,
    SimplicialMap,
    SystemMorphism,
    Tower,
    approximate,
    carrier_homotopy_check,
    check_naturality,
    homotopy_sample_points,
    induce_level_map,
    limit_map,
    subdivide,
    validate_simplicial,
)
from poset_tower.errors import (
    IncoherentThread,
    InvalidPLMap,
    NotSimplicial,
    SearchExhausted,
)
from poset_tower.verify import sample_points

from conftest import cached_tower


def vertex_pl(K, target, images):
    """PL map at stage 0 given as vertex -> point."""
    return PLMap(subdivide(K, 0), target, images)


def pl_from_vertex_map(K, target, vm):
    return vertex_pl(K, target,
                     {v: RationalPoint.vertex(target, vm[v]) for v in K.vertices})


class TestSimplicialMaps:
    def test_swap_is_simplicial(self, E):
        assert validate_simplicial(SimplicialMap(E, E, {"a": "b", "b": "a"}))

    def test_collapse_is_simplicial(self, E):
        assert validate_simplicial(SimplicialMap(E, E, {"a": "a", "b": "a"}))

    def test_map_into_deficient_target(self, S1):
        # same vertex assignment, once with the needed edge and once without
        target_ok = SimplicialComplex.from_maximal([["0", "1"], ["0"], ["1"], ["2"]])
        vm = {"0": "0", "1": "1", "2": "0"}
        assert validate_simplicial(SimplicialMap(S1, target_ok, vm))
        target_bad = SimplicialComplex.from_maximal([["0", "2"], ["1", "2"], ["0"], ["1"], ["2"]])
        assert not validate_simplicial(SimplicialMap(S1, target_bad, vm))

    def test_apply_point(self, E):
        swap = SimplicialMap(E, E, {"a": "b", "b": "a"})
        p = RationalPoint(E, {"a": Fraction(2, 3), "b": Fraction(1, 3)})
        assert swap.apply_point(p).coords == {
            "a": Fraction(1, 3), "b": Fraction(2, 3)}

    def test_collapse_merges_coordinates(self, E):
        collapse = SimplicialMap(E, E, {"a": "a", "b": "a"})
        p = RationalPoint(E, {"a": Fraction(2, 3), "b": Fraction(1, 3)})
        assert collapse.apply_point(p).coords == {"a": Fraction(1)}


class TestPLMaps:
    def test_images_must_share_carriers(self, S1):
        mid = lambda u, v: RationalPoint(
            S1, {u: Fraction(1, 2), v: Fraction(1, 2)})
        with pytest.raises(InvalidPLMap):
            vertex_pl(S1, S1, {"0": mid("0", "1"), "1": mid("1", "2"),
                               "2": mid("0", "2")})

    def test_evaluate_is_affine(self, E):
        h = pl_from_vertex_map(E, E, {"a": "b", "b": "a"})
        p = RationalPoint(E, {"a": Fraction(3, 4), "b": Fraction(1, 4)})
        assert h.evaluate_base(p).coords == {
            "a": Fraction(1, 4), "b": Fraction(3, 4)}

    def test_json_round_trip(self, E, PT):
        h = pl_from_vertex_map(E, PT, {"a": "v", "b": "v"})
        again = PLMap.from_json_obj(h.to_json_obj())
        assert again.stage == 0
        assert again.images == h.images


class TestApproximate:
    def test_constant_succeeds_at_own_stage(self, E, PT):
        h = pl_from_vertex_map(E, PT, {"a": "v", "b": "v"})
        n, f = approximate(h)
        assert n == 0
        assert set(f.vertex_map.values()) == {"v"}

    def test_contraction_succeeds_at_stage_zero(self, E):
        h = vertex_pl(E, E, {
            "a": RationalPoint.vertex(E, "a"),
            "b": RationalPoint(E, {"a": Fraction(1, 2), "b": Fraction(1, 2)}),
        })
        n, f = approximate(h)
        assert n == 0
        assert f.vertex_map == {"a": "a", "b": "a"}

    def test_identity_on_edge_needs_two_subdivisions(self, E):
        h = pl_from_vertex_map(E, E, {"a": "a", "b": "b"})
        n, f = approximate(h)
        assert n == 2
        assert f.vertex_map == {
            "a": "a", "b": "b",
            "b{a,b}": "a", "b{a,b{a,b}}": "a", "b{b,b{a,b}}": "b",
        }
        with pytest.raises(SearchExhausted):
            approximate(h, cap=1)

    def test_interior_images_at_stage_one(self, E):
        # vertex images off the vertices force one extra subdivision
        st1 = subdivide(E, 1)
        h = PLMap(st1, E, {
            "a": RationalPoint.vertex(E, "a"),
            "b{a,b}": RationalPoint(E, {"a": Fraction(1, 4), "b": Fraction(3, 4)}),
            "b": RationalPoint.vertex(E, "b"),
        })
        n, f = approximate(h)
        assert n == 2
        assert validate_simplicial(f)
        stage = subdivide(E, n)
        assert carrier_homotopy_check(h, f, homotopy_sample_points(stage.complex), stage)

    def test_rotation_pl_on_circle(self, S1):
        h = pl_from_vertex_map(S1, S1, {"0": "1", "1": "2", "2": "0"})
        n, f = approximate(h)
        assert n == 2
        assert validate_simplicial(f)
        with pytest.raises(SearchExhausted):
            approximate(h, cap=1)

    def test_output_satisfies_star_condition(self, S1):
        # directly re-check the defining condition of the returned assignment
        h = pl_from_vertex_map(S1, S1, {"0": "1", "1": "2", "2": "0"})
        n, f = approximate(h)
        stage = subdivide(S1, n)
        from poset_tower.approx import _star_vertices, _vertex_values
        values = _vertex_values(h, stage)
        stars = _star_vertices(stage.complex)
        for v, w in f.vertex_map.items():
            assert all(values[u].coord(w) > 0 for u in stars[v])


class TestCarrierHomotopy:
    def test_rotation_against_itself(self, S1):
        rot = SimplicialMap(S1, S1, {"0": "1", "1": "2", "2": "0"})
        h = pl_from_vertex_map(S1, S1, rot.vertex_map)
        st0 = subdivide(S1, 0)
        assert carrier_homotopy_check(h, rot, homotopy_sample_points(S1), st0)

    def test_identity_against_constant_fails_at_midpoint(self, S1):
        h = pl_from_vertex_map(S1, S1, {v: v for v in S1.vertices})
        const = SimplicialMap.constant(S1, S1, "1")
        st0 = subdivide(S1, 0)
        mid02 = RationalPoint(S1, {"0": Fraction(1, 2), "2": Fraction(1, 2)})
        assert not carrier_homotopy_check(h, const, [mid02], st0)
        verts = [RationalPoint.vertex(S1, v) for v in S1.vertices]
        assert carrier_homotopy_check(h, const, verts[1:2], st0)


class TestLevelMaps:
    def test_swap_level_one(self, E):
        tower = cached_tower("edge", 3)
        swap = SimplicialMap(E, E, {"a": "b", "b": "a"})
        g1 = induce_level_map(swap, 1, tower, tower)
        assert g1.assignment == {"a": "b", "b": "a", "b{a,b}": "b{a,b}"}

    def test_constant_level_map(self, E, PT):
        tower_e = cached_tower("edge", 3)
        tower_pt = cached_tower("point", 3)
        g = SimplicialMap.constant(E, PT, "v")
        g2 = induce_level_map(g, 2, tower_e, tower_pt)
        assert set(g2.assignment.values()) == {"v"}

    def test_collapse_of_subdivided_edge(self, E):
        E1 = subdivide(E, 1).complex
        g = SimplicialMap(E1, E, {"a": "a", "b{a,b}": "a", "b": "b"})
        src = Tower.build(E1, 1)
        dst = cached_tower("edge", 3)
        g1 = induce_level_map(g, 1, src, dst)
        assert g1.assignment == {
            "a": "a", "b{a,b}": "a", "b": "b",
            "b{a,b{a,b}}": "a", "b{b,b{a,b}}": "b{a,b}",
        }

    def test_level_maps_are_order_preserving(self, E, S1):
        tower_e = cached_tower("edge", 3)
        tower_s = cached_tower("circle", 3)
        cases = [
            (SimplicialMap.identity(E), tower_e, tower_e),
            (SimplicialMap(E, E, {"a": "b", "b": "a"}), tower_e, tower_e),
            (SimplicialMap(S1, S1, {"0": "1", "1": "2", "2": "0"}), tower_s, tower_s),
            (SimplicialMap.constant(S1, S1, "0"), tower_s, tower_s),
        ]
        for g, src, dst in cases:
            for n in (1, 2, 3):
                assert induce_level_map(g, n, src, dst).is_order_preserving()

    def test_not_simplicial_rejected(self, S1):
        target = SimplicialComplex.from_maximal([["0", "2"], ["1", "2"], ["0", "1"]])
        bad_target = SimplicialComplex.from_maximal(
            [["0", "2"], ["1", "2"], ["0"], ["1"]])
        g = SimplicialMap(S1, bad_target, {"0": "0", "1": "1", "2": "2"})
        with pytest.raises(NotSimplicial):
            induce_level_map(g, 1, cached_tower("circle", 3), Tower.build(bad_target, 1))


class TestNaturality:
    def test_constant_map(self, S1, PT):
        tower_s = cached_tower("circle", 3)
        tower_pt = cached_tower("point", 3)
        g = SimplicialMap.constant(S1, PT, "v")
        samples = sample_points(S1, 30, seed=2)
        for n in (1, 2, 3):
            assert check_naturality(g, n, samples, tower_s, tower_pt)

    def test_swap_on_edge(self, E):
        tower = cached_tower("edge", 3)
        swap = SimplicialMap(E, E, {"a": "b", "b": "a"})
        p = RationalPoint(E, {"a": Fraction(2, 3), "b": Fraction(1, 3)})
        assert tower.project_point(swap.apply_point(p), 1) == "b{a,b}"
        for n in (1, 2, 3):
            assert check_naturality(swap, n, sample_points(E, 30, seed=4), tower, tower)

    def test_bond_square_exhaustive(self, E):
        tower = cached_tower("edge", 3)
        swap = SimplicialMap(E, E, {"a": "b", "b": "a"})
        g2 = induce_level_map(swap, 2, tower, tower)
        g1 = induce_level_map(swap, 1, tower, tower)
        for x in tower.level(2).elements:
            assert tower.bond(g2(x), 2, 1) == g1(tower.bond(x, 2, 1))


class TestSystemMorphisms:
    def test_build_and_validate(self, E):
        tower = cached_tower("edge", 3)
        swap = SimplicialMap(E, E, {"a": "b", "b": "a"})
        m = SystemMorphism.build(swap, tower, tower)
        assert m.depth == 3
        assert m.validate()

    def test_limit_of_swap(self, E):
        tower = cached_tower("edge", 3)
        swap = SimplicialMap(E, E, {"a": "b", "b": "a"})
        m = SystemMorphism.build(swap, tower, tower)
        t = tower.thread(["b{a,b}", "{a,b{a,b}}"])
        out = limit_map(m, t)
        assert out.entries == ("b{a,b}", "b{b,b{a,b}}")
        assert tower.validate_thread(out)

    def test_limit_of_identity(self, E):
        tower = cached_tower("edge", 3)
        m = SystemMorphism.build(SimplicialMap.identity(E), tower, tower)
        t = tower.encode_thread(
            RationalPoint(E, {"a": Fraction(2, 3), "b": Fraction(1, 3)}), 3)
        assert limit_map(m, t).entries == t.entries

    def test_incoherent_input_rejected(self, E):
        tower = cached_tower("edge", 3)
        m = SystemMorphism.build(SimplicialMap.identity(E), tower, tower)
        with pytest.raises(IncoherentThread):
            limit_map(m, tower.thread(["a", "b"]))

    def test_coherence_preserved_on_all_threads(self, S1):
        tower = cached_tower("circle", 3)
        rot = SimplicialMap(S1, S1, {"0": "1", "1": "2", "2": "0"})
        m = SystemMorphism.build(rot, tower, tower)
        for x in tower.level(3).elements:
            t = tower.thread(tuple(tower.bond(x, 3, n) for n in (1, 2, 3)))
            assert tower.validate_thread(limit_map(m, t))
