import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import bounded_slopes, random_hyperbolic
from fareybundle import (
    EdgePath,
    Graph,
    Matrix2,
    Slope,
    Turn,
    TurnDirection,
    adjacent,
    bfs_geodesic_oracle,
    det2_neighbors,
    det_pair,
    geodesic_in_What,
    is_minimal,
    parity_class,
    tree_distance,
    turn_at,
    turn_counts,
)
from fareybundle.graphs import det2_neighbors_bounded, farey_neighbors_bounded, root_path

PHI = Matrix2(5, 2, 2, 1)


class TestAdjacency:
    def test_det2_edge(self):
        assert adjacent(Slope(1, 0), Slope(1, 2), Graph.DET2)

    def test_farey_edge(self):
        assert adjacent(Slope(0, 1), Slope(1, 0), Graph.FAREY)

    def test_non_edge(self):
        assert not adjacent(Slope(1, 1), Slope(7, 3), Graph.DET2)


class TestNeighbors:
    def test_infinity_window(self):
        assert det2_neighbors(Slope(1, 0), range(0, 3)) == [
            Slope(1, 2), Slope(3, 2), Slope(5, 2)]

    def test_one_sixth_contains_quarter_not_half(self):
        near = det2_neighbors_bounded(Slope(1, 6), 10)
        assert Slope(1, 4) in near
        assert Slope(1, 2) not in near
        assert det_pair(Slope(1, 2), Slope(1, 6)) == 4

    @given(st.integers(-40, 40), st.integers(-40, 40), st.integers(-5, 5))
    def test_all_outputs_pair_at_two_and_share_class(self, p, q, k):
        if p == 0 and q == 0:
            return
        s = Slope(p, q)
        for w in det2_neighbors(s, [k]):
            assert abs(det_pair(s, w)) == 2
            assert parity_class(w) == parity_class(s)

    def test_farey_neighbors_pair_at_one(self):
        for s in (Slope(1, 0), Slope(0, 1), Slope(3, 5), Slope(-2, 7)):
            near = farey_neighbors_bounded(s, 12)
            assert near
            for w in near:
                assert abs(det_pair(s, w)) == 1


class TestGeodesics:
    def test_staircase(self):
        geo = geodesic_in_What(Slope(1, 0), Slope(1, 6))
        assert geo.vertices == (Slope(1, 0), Slope(1, 2), Slope(1, 4), Slope(1, 6))

    def test_trivial(self):
        geo = geodesic_in_What(Slope(1, 1), Slope(1, 1))
        assert geo.vertices == (Slope(1, 1),)

    def test_length_two_between_halves(self):
        geo = geodesic_in_What(Slope(1, 2), Slope(3, 2))
        assert len(geo) == 2
        assert abs(det_pair(Slope(1, 2), Slope(3, 2))) == 4

    def test_parity_mismatch_rejected(self):
        with pytest.raises(ValueError):
            geodesic_in_What(Slope(1, 0), Slope(1, 1))

    def test_reversal_is_exact(self):
        u, v = Slope(3, 8), Slope(1, 0)
        forward = geodesic_in_What(u, v).vertices
        backward = geodesic_in_What(v, u).vertices
        assert forward == tuple(reversed(backward))

    def test_monotone_denominators_from_root(self):
        # Descent away from 1/0 into the nonnegative region only grows.
        for target in (Slope(5, 8), Slope(7, 12), Slope(11, 30)):
            vertices = geodesic_in_What(Slope(1, 0), target).vertices
            dens = [v.q for v in vertices]
            assert dens == sorted(dens)
            nums = [v.p for v in vertices[1:]]
            assert nums == sorted(nums)

    def test_matches_bfs_oracle_randomized(self):
        rng = random.Random(23)
        verts = bounded_slopes(14)
        by_class = {}
        for v in verts:
            by_class.setdefault(parity_class(v), []).append(v)
        for vs in by_class.values():
            for _ in range(120):
                u, v = rng.choice(vs), rng.choice(vs)
                bound = 10 * max(abs(u.p), abs(u.q), abs(v.p), abs(v.q))
                assert tree_distance(u, v) == len(bfs_geodesic_oracle(u, v, bound))

    def test_triangle_equality_on_geodesic(self):
        u, w = Slope(1, 0), Slope(3, 8)
        geo = geodesic_in_What(u, w)
        for mid in geo.vertices:
            assert tree_distance(u, mid) + tree_distance(mid, w) == len(geo)


class TestBFSOracle:
    def test_direct_edge(self):
        assert len(bfs_geodesic_oracle(Slope(1, 0), Slope(1, 2), 4)) == 1

    def test_staircase_length(self):
        assert len(bfs_geodesic_oracle(Slope(1, 0), Slope(1, 6), 10)) == 3

    def test_three_eighths(self):
        path = bfs_geodesic_oracle(Slope(1, 0), Slope(3, 8), 16)
        assert len(path) == 2
        assert det_pair(Slope(1, 2), Slope(3, 8)) == 2

    def test_unreachable_within_bound(self):
        with pytest.raises(ValueError):
            bfs_geodesic_oracle(Slope(1, 2), Slope(1, 2 + 2 * 25), 3)


class TestMinimality:
    def test_backtrack(self):
        path = EdgePath((Slope(1, 0), Slope(1, 2), Slope(1, 0)), Graph.DET2)
        assert not is_minimal(path)

    def test_straight(self):
        path = EdgePath((Slope(1, 0), Slope(1, 2), Slope(1, 4)), Graph.DET2)
        assert is_minimal(path)

    def test_triangle_shortcut(self):
        path = EdgePath((Slope(0, 1), Slope(1, 1), Slope(1, 0)), Graph.FAREY)
        assert not is_minimal(path)


class TestTurns:
    def test_sign_dichotomy(self):
        left = turn_at(Slope(1, 0), Slope(0, 1), Slope(1, 1))
        right = turn_at(Slope(1, 0), Slope(0, 1), Slope(-1, 1))
        assert {left.direction, right.direction} == {TurnDirection.LEFT,
                                                     TurnDirection.RIGHT}
        assert left.width == right.width == 1

    def test_width_counts_fan_triangles(self):
        assert turn_at(Slope(0, 1), Slope(1, 1), Slope(2, 1)) == Turn(
            TurnDirection.LEFT, 2)
        assert turn_at(Slope(1, 1), Slope(2, 1), Slope(7, 3)) == Turn(
            TurnDirection.LEFT, 4)

    def test_equivariance(self):
        rng = random.Random(31)
        triples = [
            (Slope(1, 0), Slope(0, 1), Slope(1, 1)),
            (Slope(0, 1), Slope(1, 1), Slope(2, 1)),
            (Slope(1, 0), Slope(2, 1), Slope(5, 2)),
            (Slope(1, 1), Slope(2, 1), Slope(7, 3)),
        ]
        for _ in range(30):
            g = random_hyperbolic(rng)
            for u, v, w in triples:
                assert turn_at(g(u), g(v), g(w)) == turn_at(u, v, w)

    def test_rejects_backtrack(self):
        with pytest.raises(ValueError):
            turn_at(Slope(1, 0), Slope(0, 1), Slope(1, 0))

    def test_counts_are_rotation_invariant(self):
        window = (Slope(0, 1), Slope(1, 1), Slope(2, 1))
        rotated = (Slope(1, 1), Slope(2, 1), Slope(7, 3))
        assert turn_counts(window, PHI) == turn_counts(rotated, PHI)

    def test_reversal_swaps_totals(self):
        window = (Slope(0, 1), Slope(1, 1), Slope(2, 1))
        left, right = turn_counts(window, PHI)
        rwindow = tuple(reversed(window))
        rleft, rright = turn_counts(rwindow, PHI.inverse())
        assert (left, right) == (rright, rleft)

    def test_even_balance_for_flagship(self):
        from fareybundle import enumerate_minimal_invariant_farey

        for path in enumerate_minimal_invariant_farey(PHI):
            left, right = turn_counts(path.window, PHI)
            assert (left - right) % 2 == 0
            assert left + right == path.period


class TestForestStructure:
    def test_bounded_subgraph_is_parity_forest(self):
        verts = bounded_slopes(20)
        by_class = {}
        for v in verts:
            by_class.setdefault(parity_class(v), []).append(v)
        assert len(by_class) == 3
        for cls, vs in by_class.items():
            index = {v: i for i, v in enumerate(vs)}
            parent = list(range(len(vs)))

            def find(x):
                while parent[x] != x:
                    parent[x] = parent[parent[x]]
                    x = parent[x]
                return x

            edges = 0
            for v in vs:
                for w in det2_neighbors_bounded(v, 20):
                    assert parity_class(w) == cls
                    if w in index and index[w] > index[v]:
                        edges += 1
                        ra, rb = find(index[v]), find(index[w])
                        assert ra != rb, f"cycle through {v} -- {w}"
                        parent[ra] = rb

    def test_root_paths_stay_bounded(self):
        for v in bounded_slopes(20):
            path = root_path(v)
            peak = max(max(abs(w.p), abs(w.q)) for w in path)
            assert peak <= max(abs(v.p), abs(v.q), 1)
