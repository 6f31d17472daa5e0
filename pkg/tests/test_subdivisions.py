"""Patterns, realization, and weak-subdivision recognition."""

import random

import pytest

from quarterdense.enumeration import canonical_form
from quarterdense.graphs import DenseGraph
from quarterdense.subdivisions import (
    SubdivisionPattern,
    brute_force_contains,
    contains_induced_weak_subdivision,
    is_weak_subdivision,
    partial_subdivisions,
    two_subdivision,
    validate_weak_subdivision,
    weak_contains_weak,
    weak_extra_candidates,
    weak_two_subdivision,
)


def random_graph(n, p, seed):
    rng = random.Random(seed)
    return DenseGraph.from_edges(
        n, [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    )


class TestRealize:
    def test_k5_unsubdivided(self):
        assert SubdivisionPattern(5, (0,) * 10).realize().adj == DenseGraph.complete(5).adj

    def test_triangle_once_subdivided_is_six_cycle(self):
        g = SubdivisionPattern(3, (1, 1, 1)).realize()
        assert g.n == 6 and g.edge_count() == 6
        assert all(g.degree(v) == 2 for v in range(6))

    def test_two_subdivided_k5(self):
        g = SubdivisionPattern(5, (2,) * 10).realize()
        assert g.n == 25 and g.edge_count() == 30

    def test_json_round_trip(self):
        p = SubdivisionPattern(5, (0, 1, 2, 0, 0, 1, 0, 0, 0, 3))
        assert SubdivisionPattern.from_json(p.to_json()) == p


class TestEnumeration:
    def test_only_k5_at_five(self):
        pats = partial_subdivisions(5, 5)
        assert len(pats) == 1 and pats[0].k == (0,) * 10

    def test_two_classes_at_six(self):
        assert len(partial_subdivisions(5, 6)) == 2

    def test_twelve_classes_at_eight(self):
        # hand count: sizes 5,6 give 1+1; size 7 gives one double edge plus
        # two 1+1 shapes; size 8 gives 3-subdivision, two 2+1 shapes, and
        # the four 3-edge subgraphs of K5 that fit on 5 vertices
        assert len(partial_subdivisions(5, 8)) == 12

    def test_realize_injective_on_classes(self):
        pats = partial_subdivisions(5, 8)
        keys = {canonical_form(p.realize())[0] for p in pats}
        assert len(keys) == len(pats)

    def test_triangle_family(self):
        pats = partial_subdivisions(3, 6)
        # multiplicity multisets of size 3 with sum <= 3
        assert [p.k for p in pats] == [
            (0, 0, 0), (0, 0, 1), (0, 0, 2), (0, 1, 1), (0, 0, 3), (0, 1, 2), (1, 1, 1)
        ]


class TestRecognition:
    def test_six_cycle(self):
        w = is_weak_subdivision(DenseGraph.cycle(6), 3)
        assert w is not None and w.extra_edges == ()
        assert w.pattern.k == (1, 1, 1)

    def test_six_cycle_with_chord(self):
        g = DenseGraph.from_edges(6, DenseGraph.cycle(6).edges() + [(1, 3)])
        w = is_weak_subdivision(g, 3)
        assert w is not None and len(w.extra_edges) == 1

    def test_k4_is_not_weak_k3(self):
        assert is_weak_subdivision(DenseGraph.complete(4), 3) is None

    def test_generated_weak_subdivisions_recognized(self):
        rng = random.Random(5)
        for p in partial_subdivisions(4, 8):
            if any(k == 0 for k in p.k):
                continue
            base = p.realize()
            for _ in range(5):
                host = weak_two_subdivision(base, rng, 0.4)
                # host is a weak-2-subdivision of base, not of K_t; but the
                # 1-subdivision pattern realized directly is a subdivision of K_t
            w = is_weak_subdivision(base, 4)
            assert w is not None
            assert validate_weak_subdivision(base, w, subset=range(base.n))

    def test_forbidden_extra_edge_rejected(self):
        # extra edge between side vertices of disjoint K4 edges breaks it
        p = SubdivisionPattern(4, (1,) * 6)
        g = p.realize()
        e01 = p.side_labels(0)[0]  # on edge (0,1)
        e23 = p.side_labels(5)[0]  # on edge (2,3)
        bad = DenseGraph.from_edges(g.n, g.edges() + [(e01, e23)])
        assert is_weak_subdivision(bad, 4) is None

    def test_allowed_extra_edges_accepted(self):
        rng = random.Random(11)
        p = SubdivisionPattern(3, (2, 1, 1))
        g = p.realize()
        two = two_subdivision(DenseGraph.complete(3))
        # build weak-subdivisions of K3 directly: realize + allowed extras
        allowed = []
        for i1, e1 in enumerate(p.edges):
            for i2, e2 in enumerate(p.edges):
                if i1 < i2 and set(e1) & set(e2):
                    for a in p.side_labels(i1):
                        for b in p.side_labels(i2):
                            allowed.append((a, b))
        for _ in range(10):
            extras = [e for e in allowed if rng.random() < 0.5]
            host = DenseGraph.from_edges(g.n, g.edges() + extras)
            w = is_weak_subdivision(host, 3)
            assert w is not None
            assert sorted(w.extra_edges) == sorted(tuple(sorted(e)) for e in set(extras))


class TestContainment:
    def test_whole_graph_found(self):
        g = SubdivisionPattern(5, (2,) * 10).realize()
        r = contains_induced_weak_subdivision(g, 5)
        assert r.found and len(r.subset) >= 15

    def test_small_graphs_conclusive_absent(self):
        for seed in range(5):
            g = random_graph(14, 0.5, seed)
            r = contains_induced_weak_subdivision(g, 5)
            assert r.status == "absent"

    def test_six_cycle_t3(self):
        assert contains_induced_weak_subdivision(DenseGraph.cycle(6), 3).found

    def test_budget_inconclusive(self):
        g = SubdivisionPattern(5, (2,) * 10).realize()
        r = contains_induced_weak_subdivision(g, 5, budget=3)
        assert r.status == "inconclusive" and not r.conclusive

    @pytest.mark.parametrize("t", [3, 4])
    def test_matches_brute_force(self, t):
        for seed in range(12):
            rng = random.Random(700 + seed)
            n = rng.randrange(6, 11)
            g = random_graph(n, rng.choice([0.25, 0.4, 0.55]), 900 + seed)
            mine = contains_induced_weak_subdivision(g, t)
            assert mine.conclusive
            brute = brute_force_contains(g, t)
            assert mine.found == (brute is not None)
            if mine.found:
                sub = g.subgraph(mine.subset)
                assert is_weak_subdivision(sub, t) is not None

    @pytest.mark.parametrize("t", [3, 4])
    def test_matches_brute_force_at_sixteen(self, t):
        for seed in (5, 6):
            g = random_graph(16, 0.35, seed)
            mine = contains_induced_weak_subdivision(g, t)
            assert mine.conclusive
            assert mine.found == (brute_force_contains(g, t) is not None)


class TestWeakContainsWeak:
    def test_k5_pattern_whole_set(self):
        p = SubdivisionPattern(5, (0,) * 10)
        rng = random.Random(3)
        host = weak_two_subdivision(p.realize(), rng, 0.5)
        subset, wit = weak_contains_weak(p, host)
        assert set(subset) == set(range(host.graph.n))
        assert validate_weak_subdivision(host.graph, wit, subset=subset)

    def test_family_two_hundred_hosts_per_pattern(self):
        rng = random.Random(17)
        for p in partial_subdivisions(5, 8):
            for _ in range(200):
                host = weak_two_subdivision(p.realize(), rng, rng.choice([0.3, 0.6, 0.9]))
                subset, wit = weak_contains_weak(p, host)
                assert wit.pattern.t == 5
                assert all(k >= 1 for k in wit.pattern.k)
                assert validate_weak_subdivision(host.graph, wit, subset=subset)

    def test_triangle_pattern_host(self):
        rng = random.Random(23)
        p = SubdivisionPattern(3, (1, 1, 1))
        for _ in range(20):
            host = weak_two_subdivision(p.realize(), rng, 0.5)
            subset, wit = weak_contains_weak(p, host)
            assert wit.pattern.t == 3
            assert validate_weak_subdivision(host.graph, wit, subset=subset)

    def test_extra_candidates_respect_rule(self):
        base = DenseGraph.complete(3)
        two = two_subdivision(base)
        for a, b in weak_extra_candidates(two):
            ea = two.base_edge_of(a)
            eb = two.base_edge_of(b)
            assert ea != eb and set(ea) & set(eb)
