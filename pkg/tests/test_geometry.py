"""Exact geometry, planarization, and the separator pipeline."""

import math
from fractions import Fraction

import pytest

from quarterdense.errors import GeneralPositionError
from quarterdense.geometry import (
    CurveArrangement,
    Polyline,
    compute_crossings,
    extremal_four_part_graph,
    grid_arrangement,
    intersection_graph,
    measure_biclique_growth,
    planar_separator,
    planarize,
    random_curves,
    segment_relation,
    separator_biclique,
    sparse_random_curves,
)
from quarterdense.graphs import DenseGraph, verify_empty_pair
from quarterdense.subdivisions import contains_induced_weak_subdivision

F = Fraction


def seg(a, b, c, d):
    return Polyline.make([(a, b), (c, d)])


class TestPredicates:
    def test_proper_cross(self):
        assert segment_relation((F(0), F(0)), (F(1), F(1)), (F(0), F(1)), (F(1), F(0))) == "proper"

    def test_disjoint(self):
        assert segment_relation((F(0), F(0)), (F(1), F(0)), (F(0), F(1)), (F(1), F(1))) == "disjoint"

    def test_shared_endpoint_degenerate(self):
        assert segment_relation((F(0), F(0)), (F(1), F(1)), (F(1), F(1)), (F(2), F(0))) == "degenerate"

    def test_t_touch_degenerate(self):
        assert segment_relation((F(0), F(0)), (F(2), F(0)), (F(1), F(0)), (F(1), F(1))) == "degenerate"

    def test_collinear_overlap_degenerate(self):
        assert segment_relation((F(0), F(0)), (F(2), F(0)), (F(1), F(0)), (F(3), F(0))) == "degenerate"


class TestCrossings:
    def test_x_crossing(self):
        arr = CurveArrangement.build([seg(0, 0, 1, 1), seg(0, 1, 1, 0)])
        assert len(arr.crossings) == 1
        assert arr.crossings[0].point == (F(1, 2), F(1, 2))

    def test_disjoint_segments(self):
        arr = CurveArrangement.build([seg(0, 0, 1, 0), seg(0, 1, 1, 1)])
        assert arr.crossings == []

    def test_shared_endpoint_rejected(self):
        with pytest.raises(GeneralPositionError):
            CurveArrangement.build([seg(0, 0, 1, 1), seg(1, 1, 2, 0)])

    def test_concurrency_rejected(self):
        with pytest.raises(GeneralPositionError):
            CurveArrangement.build(
                [seg(0, 0, 2, 2), seg(0, 2, 2, 0), seg(0, 1, 2, 1)]
            )

    def test_self_intersection_rejected(self):
        with pytest.raises(GeneralPositionError):
            CurveArrangement.build([Polyline.make([(0, 0), (2, 0), (1, 1), (1, -1)])])

    def test_prefilter_agrees_with_brute_force(self):
        arr = random_curves(12, 4, bbox=60, seed=9)
        fast = compute_crossings(arr.curves, prefilter=True)
        slow = compute_crossings(arr.curves, prefilter=False)
        assert fast == slow


class TestIntersectionGraph:
    def test_pairwise_crossing_fan(self):
        k = 5
        jit = [F(0), F(1, 7), F(-1, 11), F(1, 13), F(-1, 17)]
        curves = [Polyline.make([(i, 0), (F(k - 1 - i) + jit[i], 1)]) for i in range(k)]
        arr = CurveArrangement.build(curves)
        assert intersection_graph(arr).adj == DenseGraph.complete(k).adj

    def test_parallel_segments_empty_graph(self):
        arr = CurveArrangement.build([seg(0, 2 * i, 1, 2 * i) for i in range(6)])
        assert intersection_graph(arr).edge_count() == 0

    def test_five_cycle_from_chords(self):
        # ten convex-position points; chords (0,3),(2,5),(4,7),(6,9),(8,1)
        # interleave exactly along the cycle
        ts = [F(-9, 10), F(-11, 20), F(-3, 10), F(-1, 10), F(1, 20),
              F(1, 4), F(9, 20), F(7, 10), F(11, 10), F(2)]
        pts = []
        for t in ts:
            den = 1 + t * t
            pts.append(((1 - t * t) / den, 2 * t / den))
        chords = [(0, 3), (2, 5), (4, 7), (6, 9), (8, 1)]
        arr = CurveArrangement.build([Polyline((pts[a], pts[b])) for a, b in chords])
        g = intersection_graph(arr)
        assert sorted(g.degree(v) for v in range(5)) == [2] * 5
        assert g.edge_count() == 5  # a 5-cycle on the curve indices


class TestPlanarize:
    def test_single_curve(self):
        p = planarize(CurveArrangement.build([Polyline.make([(0, 0), (1, 0), (2, 1)])]))
        assert p.vertex_count == 2 and p.edge_count() == 1

    def test_two_crossing_segments(self):
        p = planarize(CurveArrangement.build([seg(0, 0, 1, 1), seg(0, 1, 1, 0)]))
        assert p.vertex_count == 5 and p.edge_count() == 4

    def test_pairwise_crossing_bundle_counts(self):
        k = 5
        jit = [F(0), F(1, 7), F(-1, 11), F(1, 13), F(-1, 17)]
        curves = [Polyline.make([(i, 0), (F(k - 1 - i) + jit[i], 1)]) for i in range(k)]
        p = planarize(CurveArrangement.build(curves))
        assert p.vertex_count == 2 * k + k * (k - 1) // 2
        assert p.edge_count() == sum(k - 1 + 1 for _ in range(k))

    def test_arc_identity_on_random_input(self):
        arr = random_curves(15, 3, bbox=40, seed=2)
        p = planarize(arr)
        per_curve = [0] * arr.n
        for x in arr.crossings:
            per_curve[x.curve_a] += 1
            per_curve[x.curve_b] += 1
        assert p.edge_count() == sum(c + 1 for c in per_curve)


class TestSeparator:
    def test_path_graph_single_vertex(self):
        arr = CurveArrangement.build([Polyline.make([(0, 0), (100, 1)])])
        # build a long path planarization via many crossings with short verticals
        crossers = [Polyline.make([(10 * i + 5, -1), (10 * i + F(11, 2), 2)]) for i in range(9)]
        p = planarize(CurveArrangement.build([arr.curves[0]] + crossers))
        s = planar_separator(p)
        assert len(s) <= 3
        assert _balanced_after_removal(p, s)

    def test_grid_scaling(self):
        for lines in (10, 20, 30):
            p = planarize(grid_arrangement(lines))
            s = planar_separator(p)
            assert len(s) <= 3 * math.sqrt(p.vertex_count)
            assert _balanced_after_removal(p, s)

    def test_disconnected_needs_nothing(self):
        arr = CurveArrangement.build([seg(0, 3 * i, 1, 3 * i) for i in range(6)])
        assert planar_separator(planarize(arr)) == []


def _balanced_after_removal(p, s):
    from collections import deque

    dead = set(s)
    seen = set(dead)
    worst = 0
    for start in range(p.vertex_count):
        if start in seen:
            continue
        size = 0
        seen.add(start)
        dq = deque([start])
        while dq:
            v = dq.popleft()
            size += 1
            for u in p.adj[v]:
                if u not in seen:
                    seen.add(u)
                    dq.append(u)
        worst = max(worst, size)
    return worst <= 2 * p.vertex_count / 3


class TestSeparatorBiclique:
    def test_disjoint_curves(self):
        arr = CurveArrangement.build([seg(0, 3 * i, 1, 3 * i) for i in range(8)])
        res = separator_biclique(arr)
        assert res.separator_curves == () and res.pair.size == 4

    def test_pairwise_crossing_bundle_degenerates(self):
        k = 6
        jit = [F(0), F(1, 7), F(-1, 11), F(1, 13), F(-1, 17), F(1, 19)]
        curves = [Polyline.make([(i, 0), (F(k - 1 - i) + jit[i], 1)]) for i in range(k)]
        res = separator_biclique(CurveArrangement.build(curves))
        assert res.pair.size <= 1  # complement of K6 has no large empty pair

    def test_random_pipeline_invariants(self):
        for seed in (1, 5):
            arr = random_curves(60, 3, bbox=300, seed=seed)
            res = separator_biclique(arr)
            g = intersection_graph(arr)
            assert verify_empty_pair(g, res.pair)
            n = arr.n
            assert all(len(grp) <= 2 * n / 3 for grp in res.groups)


class TestExtremalConstruction:
    def test_edge_budget_and_parts(self):
        g, parts = extremal_four_part_graph(100, F(1, 20), seed=5)
        assert [len(p) for p in parts] == [25, 25, 25, 25]
        assert g.edge_count() <= (F(1, 4) + F(1, 20)) * F(100 * 100, 2)
        # the four parts really are cliques
        for part in parts:
            for a in part:
                for b in part:
                    if a != b:
                        assert g.has_edge(a, b)

    def test_budget_too_small_rejected(self):
        with pytest.raises(ValueError):
            extremal_four_part_graph(100, F(-1, 5), seed=1)

    def test_deterministic(self):
        g1, _ = extremal_four_part_graph(64, F(1, 10), seed=9)
        g2, _ = extremal_four_part_graph(64, F(1, 10), seed=9)
        assert g1.adj == g2.adj

    def test_growth_rows(self):
        rows = measure_biclique_growth([8, 16], F(1, 4), [0, 1])
        assert len(rows) == 4
        assert all(r["mode"] == "exact" for r in rows)
        assert {r["n"] for r in rows} == {8, 16}


class TestStringGraphConsistency:
    def test_no_induced_weak_k5_in_small_arrangements(self):
        # string graphs cannot contain an induced weak-subdivision of K5;
        # at 12 curves the searches stay conclusive
        for seed in range(25):
            arr = random_curves(12, 3, bbox=30, seed=seed)
            g = intersection_graph(arr)
            res = contains_induced_weak_subdivision(g, 5)
            assert res.conclusive and not res.found

    def test_small_string_graphs_can_contain_weak_k3(self):
        # sanity that the machinery is not vacuous at t = 3: a 6-cycle of
        # curves realizes an induced weak-subdivision of K3
        ts = [F(-9, 10), F(-11, 20), F(-3, 10), F(-1, 10), F(1, 20),
              F(1, 4), F(9, 20), F(7, 10), F(11, 10), F(2)]
        pts = []
        for t in ts:
            den = 1 + t * t
            pts.append(((1 - t * t) / den, 2 * t / den))
        chords = [(0, 3), (2, 5), (4, 7), (6, 9), (8, 1)]
        arr = CurveArrangement.build([Polyline((pts[a], pts[b])) for a, b in chords])
        g = intersection_graph(arr)
        assert g.edge_count() == 5  # C5 contains no weak-K3 (needs 6 vertices)
        assert not contains_induced_weak_subdivision(g, 3).found


class TestSparsePreset:
    def test_target_crossings(self):
        arr = sparse_random_curves(40, seed=4, target_crossings=80)
        assert len(arr.crossings) <= 80
