"""Graph core: densities, graph6, and balanced empty-pair search."""

import itertools
import random
from fractions import Fraction

import pytest

from quarterdense.errors import CapacityError, InputFormatError
from quarterdense.graphs import (
    BicliquePair,
    DenseGraph,
    density,
    from_graph6,
    is_alpha_beta_dense,
    is_delta_full,
    max_balanced_empty_pair,
    pair_density,
    to_graph6,
    verify_empty_pair,
)

F = Fraction


def random_graph(n, p, seed):
    rng = random.Random(seed)
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return DenseGraph.from_edges(n, edges)


class TestDensity:
    def test_k5(self):
        assert density(DenseGraph.complete(5)) == F(2, 5)

    def test_empty_seven(self):
        assert density(DenseGraph.empty(7)) == 0

    def test_four_cycle(self):
        assert density(DenseGraph.cycle(4)) == F(1, 4)

    def test_zero_vertices_rejected(self):
        with pytest.raises(ValueError):
            density(DenseGraph.empty(0))

    def test_complement_identity(self):
        # |E(G)| + |E(comp G)| = n(n-1)/2, so with d = |E|/n^2 the densities
        # sum to (n-1)/(2n) exactly
        for seed in range(10):
            n = random.Random(seed).randrange(2, 12)
            g = random_graph(n, 0.4, seed)
            assert density(g) + density(g.complement()) == F(n - 1, 2 * n)


class TestPairDensity:
    def test_complete_bipartite(self):
        g = DenseGraph.from_edges(4, [(0, 2), (0, 3), (1, 2), (1, 3)])
        assert pair_density(g, [0, 1], [2, 3]) == 1

    def test_no_cross_edges(self):
        assert pair_density(DenseGraph.empty(4), [0, 1], [2, 3]) == 0

    def test_single_edge(self):
        g = DenseGraph.from_edges(2, [(0, 1)])
        assert pair_density(g, [0], [1]) == 1

    def test_overlap_rejected(self):
        with pytest.raises(ValueError):
            pair_density(DenseGraph.empty(4), [0, 1], [1, 2])

    def test_empty_side_rejected(self):
        with pytest.raises(ValueError):
            pair_density(DenseGraph.empty(4), [], [1, 2])


def brute_force_empty_pair(g):
    best = 0
    n = g.n
    for k in range(n // 2, 0, -1):
        for a in itertools.combinations(range(n), k):
            rest = [v for v in range(n) if v not in a]
            amask = sum(1 << v for v in a)
            free = [v for v in rest if not g.adj[v] & amask]
            if len(free) >= k:
                return k
    return best


class TestEmptyPair:
    def test_empty_graph(self):
        assert max_balanced_empty_pair(DenseGraph.empty(6)).size == 3

    def test_complete_graph(self):
        assert max_balanced_empty_pair(DenseGraph.complete(6)).size == 0

    def test_perfect_matching_six(self):
        g = DenseGraph.from_edges(6, [(0, 1), (2, 3), (4, 5)])
        pair = max_balanced_empty_pair(g)
        assert pair.size == 2
        assert verify_empty_pair(g, pair)

    def test_exact_matches_brute_force(self):
        for seed in range(25):
            rng = random.Random(1000 + seed)
            n = rng.randrange(4, 12)
            g = random_graph(n, rng.choice([0.2, 0.4, 0.6]), seed)
            pair = max_balanced_empty_pair(g)
            assert verify_empty_pair(g, pair)
            assert pair.size == brute_force_empty_pair(g)

    def test_greedy_never_beats_exact(self):
        for seed in range(25):
            g = random_graph(10, 0.35, 2000 + seed)
            greedy = max_balanced_empty_pair(g, mode="greedy")
            assert verify_empty_pair(g, greedy)
            assert greedy.size <= max_balanced_empty_pair(g).size

    def test_capacity(self):
        with pytest.raises(CapacityError):
            max_balanced_empty_pair(DenseGraph.empty(29))

    def test_pair_invariants(self):
        with pytest.raises(ValueError):
            BicliquePair((0, 1), (1, 2))
        with pytest.raises(ValueError):
            BicliquePair((0,), (1, 2))


class TestDeltaFull:
    def test_complete(self):
        assert is_delta_full(DenseGraph.complete(8), F(1, 4)).holds

    def test_empty(self):
        verdict = is_delta_full(DenseGraph.empty(10), F(3, 10))
        assert not verdict.holds
        assert verdict.witness.size == 3

    def test_matching_six_at_half_minus(self):
        # needs an empty pair of size 3; the matching tops out at 2
        g = DenseGraph.from_edges(6, [(0, 1), (2, 3), (4, 5)])
        assert is_delta_full(g, F(49, 100)).holds

    def test_matches_pair_search(self):
        for seed in range(15):
            g = random_graph(9, 0.3, 3000 + seed)
            best = max_balanced_empty_pair(g).size
            for num in (1, 2, 3, 4):
                delta = F(num, 10)
                need = -(-delta * 9 // 1)
                assert is_delta_full(g, delta).holds == (best < need)

    def test_range_check(self):
        with pytest.raises(ValueError):
            is_delta_full(DenseGraph.empty(4), F(1, 2))


class TestAlphaBetaDense:
    def test_complete(self):
        # K_m has density (m-1)/(2m); the smallest qualifying subset here
        # has 4 vertices, so the sharp threshold is 3/8
        v = is_alpha_beta_dense(DenseGraph.complete(8), F(1, 2), F(3, 8))
        assert v.holds and not v.sampled
        v2 = is_alpha_beta_dense(DenseGraph.complete(8), F(1, 2), F(1, 2))
        assert not v2.holds and len(v2.witness) == 4

    def test_empty(self):
        v = is_alpha_beta_dense(DenseGraph.empty(10), F(1, 2), F(1, 100))
        assert not v.holds
        assert len(v.witness) >= 5

    def test_one_edge_on_four(self):
        g = DenseGraph.from_edges(4, [(0, 1)])
        v = is_alpha_beta_dense(g, F(1, 2), F(3, 10))
        assert not v.holds
        sub = g.subgraph(v.witness)
        assert density(sub) < F(3, 10)

    def test_sampled_flag(self):
        v = is_alpha_beta_dense(
            DenseGraph.complete(20), F(1, 2), F(1, 4), mode="sampled", trials_per_size=50
        )
        assert v.holds and v.sampled

    def test_capacity(self):
        with pytest.raises(CapacityError):
            is_alpha_beta_dense(DenseGraph.empty(17), F(1, 2), F(1, 10))


class TestGraph6:
    def test_known_strings(self):
        assert to_graph6(DenseGraph.complete(5)) == "D~{"
        assert to_graph6(DenseGraph.empty(4)) == "C?"
        assert to_graph6(DenseGraph.complete(4)) == "C~"

    def test_round_trip(self):
        for seed in range(20):
            n = random.Random(seed).randrange(1, 40)
            g = random_graph(n, 0.3, 4000 + seed)
            assert from_graph6(to_graph6(g)).adj == g.adj

    def test_header(self):
        g = DenseGraph.cycle(6)
        assert from_graph6(">>graph6<<" + to_graph6(g)).adj == g.adj

    def test_medium_size_prefix(self):
        g = DenseGraph.empty(100)
        line = to_graph6(g)
        assert from_graph6(line).n == 100

    def test_against_networkx(self):
        nx = pytest.importorskip("networkx")
        for seed in range(10):
            g = random_graph(9, 0.45, 5000 + seed)
            ours = to_graph6(g)
            theirs = nx.to_graph6_bytes(
                nx.Graph(g.edges()) if g.edges() else nx.empty_graph(9), header=False
            ).decode().strip()
            # networkx drops isolated vertices unless the node set is given
            h = nx.empty_graph(9)
            h.add_edges_from(g.edges())
            theirs = nx.to_graph6_bytes(h, header=False).decode().strip()
            assert ours == theirs
            back = nx.from_graph6_bytes(ours.encode())
            assert set(back.edges()) == {tuple(e) for e in g.edges()}

    def test_bad_input(self):
        with pytest.raises(InputFormatError):
            from_graph6("D~")  # truncated payload
