"""Admissibility predicates and the family search."""

import random
from fractions import Fraction

import pytest

from quarterdense.admissible import (
    find_admissible_subgraph,
    is_eps_admissible,
    is_H_admissible,
    is_zero_admissible,
    validate_graph_witness,
    validate_weight_witness,
)
from quarterdense.enumeration import enumerate_graphs
from quarterdense.graphs import DenseGraph
from quarterdense.subdivisions import SubdivisionPattern, partial_subdivisions

F = Fraction
K5 = DenseGraph.complete(5)


def encode_half(g):
    """{non-edge -> 0, edge -> 1/2} weight matrix of a graph."""
    return [
        [F(1, 2) if g.has_edge(a, b) else F(0) for b in range(g.n)] for a in range(g.n)
    ]


def random_graph(n, p, seed):
    rng = random.Random(seed)
    return DenseGraph.from_edges(
        n, [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    )


class TestGraphPredicate:
    def test_empty_five_is_k5_admissible(self):
        assert is_H_admissible(DenseGraph.empty(5), K5) is not None

    def test_star_with_center_first(self):
        star = DenseGraph.from_edges(5, [(0, 1), (0, 2), (0, 3), (0, 4)])
        w = is_H_admissible(star, K5)
        assert w is not None
        # the center must come first in the order's image chain
        first = w.order[0]
        assert w.image[first] == 0

    def test_five_cycle_not_admissible(self):
        assert is_H_admissible(DenseGraph.cycle(5), K5) is None

    def test_complete_vacuous(self):
        assert is_H_admissible(K5, K5) is not None

    def test_size_mismatch(self):
        with pytest.raises(ValueError):
            is_H_admissible(DenseGraph.empty(4), K5)

    def test_isomorphism_invariance(self):
        for seed in range(20):
            rng = random.Random(seed)
            g = random_graph(5, 0.5, 50 + seed)
            perm = list(range(5))
            rng.shuffle(perm)
            a = is_H_admissible(g, K5) is not None
            b = is_H_admissible(g.relabel(perm), K5) is not None
            assert a == b

    def test_witness_revalidates(self):
        for seed in range(10):
            g = random_graph(5, 0.6, 80 + seed)
            w = is_H_admissible(g, K5)
            if w is not None:
                assert validate_graph_witness(g, K5, w)


class TestWeightedPredicates:
    def test_all_half_no_thin_no_fat(self):
        m = encode_half(DenseGraph.complete(5))
        assert is_eps_admissible(m, K5, F(1, 4)) is not None

    def test_fat_pair_blocks(self):
        m = encode_half(DenseGraph.complete(5))
        m[0][1] = m[1][0] = F(1)
        assert is_eps_admissible(m, K5, F(1, 10)) is None
        assert is_zero_admissible(m, K5) is None

    def test_all_zero_weights_admissible(self):
        m = [[F(0)] * 5 for _ in range(5)]
        assert is_eps_admissible(m, K5, F(1, 10)) is not None

    def test_zero_matches_graph_predicate_up_to_six(self):
        fam6 = [p for p in partial_subdivisions(5, 6) if p.total_vertices == 6]
        cases = [(5, K5)] + [(6, fam6[0])] if fam6 else [(5, K5)]
        for n, h in cases:
            for g in enumerate_graphs(n):
                zero = is_zero_admissible(encode_half(g), h) is not None
                graph = is_H_admissible(g, h) is not None
                assert zero == graph

    def test_eps_zero_equals_zero_admissible(self):
        rng = random.Random(9)
        for _ in range(30):
            m = [[F(0)] * 5 for _ in range(5)]
            for a in range(5):
                for b in range(a + 1, 5):
                    m[a][b] = m[b][a] = rng.choice([F(0), F(1, 3), F(1, 2), F(2, 3), F(1)])
            za = is_zero_admissible(m, K5) is not None
            ea = is_eps_admissible(m, K5, F(0)) is not None
            assert za == ea

    def test_weight_witness_validator_rejects_fat(self):
        m = encode_half(K5)
        w = is_eps_admissible(m, K5, F(1, 4))
        m[0][1] = m[1][0] = F(1)
        assert not validate_weight_witness(m, K5, w, F(1, 4))


class TestFamilySearch:
    def test_empty_seven_hits_k5(self):
        fam = partial_subdivisions(5, 8)
        hit = find_admissible_subgraph(DenseGraph.empty(7), fam)
        assert hit is not None
        assert len(hit.subset) == 5 and hit.family_index == 0

    def test_small_graph_is_free(self):
        fam = partial_subdivisions(5, 8)
        assert find_admissible_subgraph(DenseGraph.empty(4), fam) is None

    def test_complement_degree_five_hits(self):
        # a 7-vertex graph whose complement has a degree-5 vertex
        comp_edges = [(0, i) for i in range(1, 6)]
        g = DenseGraph.from_edges(7, comp_edges).complement()
        fam = partial_subdivisions(5, 8)
        assert find_admissible_subgraph(g, fam) is not None

    def test_weighted_route(self):
        fam = partial_subdivisions(5, 8)
        m = [[F(1, 3)] * 6 for _ in range(6)]
        for i in range(6):
            m[i][i] = F(0)
        hit = find_admissible_subgraph(m, fam, eps=F(0))
        assert hit is not None

    def test_empty_family_rejected(self):
        with pytest.raises(ValueError):
            find_admissible_subgraph(DenseGraph.empty(5), [])
