"""Partial subdivisions of complete graphs and weak-subdivision recognition.

A pattern records, for every edge of K_t, the number of interior path
vertices it is replaced with (0 means the edge is kept).  Realized graphs
use a fixed vertex layout: branch vertices 0..t-1 first, then the side
vertices of each K_t edge in lexicographic edge order.

A weak-subdivision adds optional extra edges to a subdivision, but only
between side vertices that belong to distinct K_t edges sharing an
endpoint.  Recognition searches for branch images and a path
decomposition; containment additionally chooses the vertex subset and is
budgeted, with "inconclusive" as a first-class verdict distinct from a
conclusive "absent".
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional

from .graphs import DenseGraph, iter_bits, mask_of


def kt_edges(t: int) -> list[tuple[int, int]]:
    return list(itertools.combinations(range(t), 2))


@dataclass(frozen=True)
class SubdivisionPattern:
    """K_t with edge ``e`` replaced by a path through ``k[e]`` side vertices."""

    t: int
    k: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.t < 3:
            raise ValueError("need t >= 3")
        if len(self.k) != self.t * (self.t - 1) // 2:
            raise ValueError("one multiplicity per K_t edge required")
        if any(x < 0 for x in self.k):
            raise ValueError("multiplicities must be nonnegative")

    @property
    def edges(self) -> list[tuple[int, int]]:
        return kt_edges(self.t)

    @property
    def total_vertices(self) -> int:
        return self.t + sum(self.k)

    def side_offset(self, edge_index: int) -> int:
        return self.t + sum(self.k[:edge_index])

    def side_labels(self, edge_index: int) -> list[int]:
        off = self.side_offset(edge_index)
        return list(range(off, off + self.k[edge_index]))

    def realize(self) -> DenseGraph:
        """Path-replacement graph on ``total_vertices`` vertices."""
        edges = []
        for idx, (i, j) in enumerate(self.edges):
            chain = [i] + self.side_labels(idx) + [j]
            edges.extend(zip(chain, chain[1:]))
        return DenseGraph.from_edges(self.total_vertices, edges)

    def to_json(self) -> dict:
        key = lambda i, j: f"{i}{j}" if j <= 9 else f"{i},{j}"
        return {"t": self.t, "k": {key(i, j): self.k[idx] for idx, (i, j) in enumerate(self.edges)}}

    @classmethod
    def from_json(cls, obj: dict) -> "SubdivisionPattern":
        t = obj["t"]
        ks = []
        for i, j in kt_edges(t):
            key = f"{i}{j}" if j <= 9 else f"{i},{j}"
            ks.append(int(obj["k"][key]))
        return cls(t, tuple(ks))

    def canonical_k(self) -> tuple[int, ...]:
        """Lexicographically least k-tuple over relabelings of the branches."""
        edges = self.edges
        index = {e: i for i, e in enumerate(edges)}
        best = None
        for perm in itertools.permutations(range(self.t)):
            image = tuple(
                self.k[index[tuple(sorted((perm[i], perm[j])))]] for (i, j) in edges
            )
            if best is None or image < best:
                best = image
        return best


def partial_subdivisions(t: int, max_vertices: int) -> list[SubdivisionPattern]:
    """One pattern per isomorphism class with at most ``max_vertices`` vertices.

    Classes are orbits of the multiplicity assignment under relabelings of
    the K_t branches, which is exact and independent of graph canonization.
    """
    if t < 3:
        raise ValueError("need t >= 3")
    if max_vertices < t:
        raise ValueError("max_vertices must be at least t")
    budget = max_vertices - t
    m = t * (t - 1) // 2
    seen: set[tuple[int, ...]] = set()
    out: list[SubdivisionPattern] = []

    def assignments(total_max: int) -> Iterable[tuple[int, ...]]:
        def rec(pos: int, left: int, acc: list[int]):
            if pos == m:
                yield tuple(acc)
                return
            for v in range(left + 1):
                acc.append(v)
                yield from rec(pos + 1, left - v, acc)
                acc.pop()

        yield from rec(0, total_max, [])

    for ks in assignments(budget):
        p = SubdivisionPattern(t, ks)
        canon = p.canonical_k()
        if canon not in seen:
            seen.add(canon)
            out.append(SubdivisionPattern(t, canon))
    out.sort(key=lambda p: (p.total_vertices, p.k))
    return out


@dataclass(frozen=True)
class WeakSubdivisionWitness:
    """Certificate that a host graph (or subset) is a weak-subdivision.

    ``vertex_map[label]`` is the host vertex for each pattern label in the
    :meth:`SubdivisionPattern.realize` layout; all pattern multiplicities
    are at least 1.
    """

    pattern: SubdivisionPattern
    vertex_map: tuple[int, ...]
    extra_edges: tuple[tuple[int, int], ...]

    def to_json(self) -> dict:
        return {
            "pattern": self.pattern.to_json(),
            "map": {str(i): v for i, v in enumerate(self.vertex_map)},
            "extra_edges": [list(e) for e in self.extra_edges],
        }


def validate_weak_subdivision(
    host: DenseGraph,
    witness: WeakSubdivisionWitness,
    subset: Optional[Iterable[int]] = None,
) -> bool:
    """Re-check a witness against the raw definition.

    The mapped subdivision edges must be host edges, every other mapped
    pair must be a host non-edge except the listed extras, and each extra
    must join side vertices of distinct K_t edges sharing an endpoint.
    """
    p = witness.pattern
    if any(x < 1 for x in p.k):
        return False
    vm = witness.vertex_map
    if len(vm) != p.total_vertices or len(set(vm)) != len(vm):
        return False
    if subset is not None and set(vm) != set(subset):
        return False
    realized = p.realize()
    owner = {}
    for idx in range(len(p.edges)):
        for lab in p.side_labels(idx):
            owner[lab] = idx
    extras = {tuple(sorted(e)) for e in witness.extra_edges}
    for a in range(p.total_vertices):
        for b in range(a + 1, p.total_vertices):
            host_edge = host.has_edge(vm[a], vm[b])
            patt_edge = realized.has_edge(a, b)
            if patt_edge and not host_edge:
                return False
            if not patt_edge and host_edge:
                if tuple(sorted((vm[a], vm[b]))) not in extras:
                    return False
                if a < p.t or b < p.t:
                    return False
                ea, eb = owner[a], owner[b]
                if ea == eb:
                    return False
                if not set(p.edges[ea]) & set(p.edges[eb]):
                    return False
            if not patt_edge and not host_edge:
                if tuple(sorted((vm[a], vm[b]))) in extras:
                    return False
    return True


def _decompose_paths(
    g: DenseGraph,
    t: int,
    branches: tuple[int, ...],
    exact_cover: bool,
    budget: Optional[int],
    counter: list[int],
) -> Optional[list[list[int]]]:
    """Find internally disjoint side paths joining all branch pairs.

    With ``exact_cover`` every non-branch vertex must be used.  Returns
    one side-vertex list per K_t edge (lexicographic order) or None.
    Raises ``_BudgetExceeded`` when the node budget runs out.
    """
    pairs = kt_edges(t)
    branch_mask = mask_of(branches)
    n = g.n
    full = (1 << n) - 1
    paths: list[list[int]] = []
    used = branch_mask

    # Side vertices of pairs disjoint from the current one must stay
    # non-adjacent; precompute which earlier pairs are disjoint.
    disjoint_prior = [
        [q for q in range(pi) if not set(pairs[q]) & set(pairs[pi])]
        for pi in range(len(pairs))
    ]

    def forbidden_mask(pi: int) -> int:
        m = 0
        for q in disjoint_prior[pi]:
            m |= mask_of(paths[q])
        return m

    def rec(pi: int) -> bool:
        nonlocal used
        if pi == len(pairs):
            return not exact_cover or used == full
        i, j = pairs[pi]
        bi, bj = branches[i], branches[j]
        other_branches = branch_mask ^ (1 << bi) ^ (1 << bj)
        dmask = forbidden_mask(pi)

        def extend(path: list[int]) -> bool:
            nonlocal used
            if budget is not None:
                counter[0] += 1
                if counter[0] > budget:
                    raise _BudgetExceeded
            prev = path[-1] if path else bi
            cands = g.adj[prev] & ~used
            for u in iter_bits(cands):
                row = g.adj[u]
                if row & other_branches:
                    continue
                if path and row & (1 << bi):
                    continue
                if row & dmask:
                    continue
                # same-path chords: only the immediate predecessor may touch u
                if len(path) >= 2 and row & mask_of(path[:-1]):
                    continue
                closes = bool(row & (1 << bj))
                path.append(u)
                used |= 1 << u
                if closes:
                    paths.append(list(path))
                    if rec(pi + 1):
                        return True
                    paths.pop()
                else:
                    if extend(path):
                        return True
                used ^= 1 << u
                path.pop()
            return False

        return extend([])

    if rec(0):
        return paths
    return None


class _BudgetExceeded(Exception):
    pass


def _witness_from_decomposition(
    t: int, branches: tuple[int, ...], paths: list[list[int]], host: DenseGraph
) -> WeakSubdivisionWitness:
    ks = tuple(len(p) for p in paths)
    pattern = SubdivisionPattern(t, ks)
    vm: list[int] = list(branches)
    for p in paths:
        vm.extend(p)
    vset = set(vm)
    realized = pattern.realize()
    pos = {v: lab for lab, v in enumerate(vm)}
    extras = []
    for u, v in host.edges():
        if u in vset and v in vset and not realized.has_edge(pos[u], pos[v]):
            extras.append((u, v))
    return WeakSubdivisionWitness(pattern, tuple(vm), tuple(sorted(extras)))


def is_weak_subdivision(g: DenseGraph, t: int) -> Optional[WeakSubdivisionWitness]:
    """Witness iff ``g`` itself is exactly a weak-subdivision of K_t.

    Branch vertices of a weak-subdivision keep degree t-1 (extra edges
    never touch them), so branch candidates are cheap to filter.
    """
    need = t + t * (t - 1) // 2
    if g.n < need:
        return None
    cands = [v for v in range(g.n) if g.degree(v) == t - 1]
    for branches in itertools.combinations(cands, t):
        bm = mask_of(branches)
        if any(g.adj[v] & bm for v in branches):
            continue
        counter = [0]
        paths = _decompose_paths(g, t, branches, exact_cover=True, budget=None, counter=counter)
        if paths is None:
            continue
        witness = _witness_from_decomposition(t, branches, paths, g)
        if validate_weak_subdivision(g, witness, subset=range(g.n)):
            return witness
    return None


@dataclass(frozen=True)
class ContainmentResult:
    status: str  # "found" | "absent" | "inconclusive"
    subset: Optional[tuple[int, ...]] = None
    witness: Optional[WeakSubdivisionWitness] = None
    nodes: int = 0

    @property
    def found(self) -> bool:
        return self.status == "found"

    @property
    def conclusive(self) -> bool:
        return self.status in ("found", "absent")


def contains_induced_weak_subdivision(
    g: DenseGraph, t: int, budget: int = 2_000_000
) -> ContainmentResult:
    """Search for a vertex subset inducing a weak-subdivision of K_t.

    Exhaustive within the node budget; running out yields an
    "inconclusive" verdict rather than a boolean.
    """
    need = t + t * (t - 1) // 2
    if g.n < need:
        return ContainmentResult("absent")
    counter = [0]
    cands = [v for v in range(g.n) if g.degree(v) >= t - 1]
    try:
        for branches in itertools.combinations(cands, t):
            bm = mask_of(branches)
            if any(g.adj[v] & bm for v in branches):
                continue
            paths = _decompose_paths(
                g, t, branches, exact_cover=False, budget=budget, counter=counter
            )
            if paths is None:
                continue
            witness = _witness_from_decomposition(t, branches, paths, g)
            subset = tuple(sorted(witness.vertex_map))
            if validate_weak_subdivision(g, witness, subset=subset):
                return ContainmentResult("found", subset, witness, counter[0])
    except _BudgetExceeded:
        return ContainmentResult("inconclusive", nodes=counter[0])
    return ContainmentResult("absent", nodes=counter[0])


def brute_force_contains(g: DenseGraph, t: int) -> Optional[tuple[int, ...]]:
    """Subset enumeration oracle for the containment search (small n only)."""
    need = t + t * (t - 1) // 2
    for size in range(need, g.n + 1):
        for vs in itertools.combinations(range(g.n), size):
            if is_weak_subdivision(g.subgraph(vs), t) is not None:
                return vs
    return None


# -- weak-2-subdivisions ------------------------------------------------


@dataclass
class TwoSubdivision:
    """2-subdivision of a base graph with labeled side vertices.

    ``side[(u, v)]`` is the subdivision vertex adjacent to ``u`` on the
    base edge ``uv``; the graph may carry extra side-side edges when built
    through :func:`weak_two_subdivision`.
    """

    base: DenseGraph
    graph: DenseGraph
    side: dict[tuple[int, int], int]

    def base_edge_of(self, side_vertex: int) -> tuple[int, int]:
        for (u, v), s in self.side.items():
            if s == side_vertex:
                return tuple(sorted((u, v)))
        raise KeyError(side_vertex)


def two_subdivision(base: DenseGraph) -> TwoSubdivision:
    edges = base.edges()
    n = base.n + 2 * len(edges)
    side: dict[tuple[int, int], int] = {}
    new_edges = []
    nxt = base.n
    for u, v in edges:
        su, sv = nxt, nxt + 1
        nxt += 2
        side[(u, v)] = su
        side[(v, u)] = sv
        new_edges.extend([(u, su), (su, sv), (sv, v)])
    return TwoSubdivision(base, DenseGraph.from_edges(n, new_edges), side)


def weak_extra_candidates(two: TwoSubdivision) -> list[tuple[int, int]]:
    """Side-vertex pairs eligible for extra edges (distinct base edges sharing an endpoint)."""
    base_edges = two.base.edges()
    out = []
    for (e1, e2) in itertools.combinations(base_edges, 2):
        if not set(e1) & set(e2):
            continue
        for s1 in (two.side[e1], two.side[(e1[1], e1[0])]):
            for s2 in (two.side[e2], two.side[(e2[1], e2[0])]):
                out.append(tuple(sorted((s1, s2))))
    return sorted(set(out))


def weak_two_subdivision(base: DenseGraph, rng, edge_prob: float = 0.5) -> TwoSubdivision:
    """Seeded random weak-2-subdivision of ``base``."""
    two = two_subdivision(base)
    extras = [e for e in weak_extra_candidates(two) if rng.random() < edge_prob]
    g = DenseGraph.from_edges(two.graph.n, two.graph.edges() + extras)
    return TwoSubdivision(base, g, dict(two.side))


def weak_contains_weak(
    p: SubdivisionPattern, host: TwoSubdivision, budget: int = 5_000_000
) -> tuple[tuple[int, ...], WeakSubdivisionWitness]:
    """Induced weak-subdivision of K_t inside a weak-2-subdivision of realize(p).

    Constructive route: between every pair of original branch vertices,
    take a shortest host path inside the vertex pool belonging to that
    K_t edge.  Shortest paths are chordless, pools of disjoint K_t edges
    never carry extra edges, so the union induces a weak-subdivision of
    K_t; the generic search is kept as a fallback.
    """
    t = p.t
    base = p.realize()
    if host.base.n != base.n or host.base.adj != base.adj:
        raise ValueError("host is not built on realize(p)")
    pools: list[set[int]] = []
    for idx, (i, j) in enumerate(p.edges):
        chain = [i] + p.side_labels(idx) + [j]
        pool = set(chain[1:-1])
        for u, v in zip(chain, chain[1:]):
            pool.add(host.side[(u, v)])
            pool.add(host.side[(v, u)])
        pools.append(pool)

    g = host.graph
    branches = tuple(range(t))
    paths: list[list[int]] = []
    ok = True
    for idx, (i, j) in enumerate(p.edges):
        allowed = pools[idx] | {i, j}
        path = _shortest_path_within(g, i, j, allowed)
        if path is None or len(path) < 3:
            ok = False
            break
        paths.append(path[1:-1])
    if ok:
        witness = _witness_from_decomposition(t, branches, paths, g)
        subset = tuple(sorted(witness.vertex_map))
        if validate_weak_subdivision(g, witness, subset=subset):
            return subset, witness
    result = contains_induced_weak_subdivision(g, t, budget=budget)
    if not result.found:
        raise RuntimeError("no induced weak-subdivision found in weak-2-subdivision host")
    return result.subset, result.witness


def _shortest_path_within(
    g: DenseGraph, src: int, dst: int, allowed: set[int]
) -> Optional[list[int]]:
    from collections import deque

    amask = mask_of(allowed)
    prev = {src: None}
    dq = deque([src])
    while dq:
        v = dq.popleft()
        if v == dst:
            path = []
            while v is not None:
                path.append(v)
                v = prev[v]
            return path[::-1]
        for u in iter_bits(g.adj[v] & amask):
            if u not in prev:
                prev[u] = v
                dq.append(u)
    return None
