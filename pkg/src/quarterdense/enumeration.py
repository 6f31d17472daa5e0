"""Canonical forms and isomorph-free enumeration of small graphs.

The canonical form of a graph is the lexicographically smallest
upper-triangle bit string over all vertex orderings, found by a
depth-first search that fixes one position at a time and prunes against
the best string seen so far.  Minimal strings start with a vertex of
minimum degree, which cuts the root branching.

Enumeration proceeds level by level: every graph on n vertices arises
from a graph on n-1 vertices by attaching one new vertex, so extending
all representatives by all neighborhood masks and deduplicating by
canonical form yields exactly one representative per isomorphism class.
"""

from __future__ import annotations

import itertools
import json
from importlib import resources
from typing import Iterable, Optional

from .graphs import DenseGraph, from_upper_bits

_CANON_CACHE: dict[tuple[int, tuple[int, ...]], tuple[int, tuple[int, ...]]] = {}
_CANON_CACHE_LIMIT = 400_000


def canonical_form(g: DenseGraph) -> tuple[int, tuple[int, ...]]:
    """Return (canonical upper-triangle bits, relabeling perm).

    ``perm[v]`` is the canonical position of original vertex ``v``;
    ``g.relabel(perm)`` has ``upper_bits() == bits``.
    """
    key = (g.n, g.adj)
    hit = _CANON_CACHE.get(key)
    if hit is not None:
        return hit
    result = _canonical_search(g)
    if len(_CANON_CACHE) < _CANON_CACHE_LIMIT:
        _CANON_CACHE[key] = result
    return result


def canonical_key(g: DenseGraph) -> tuple[int, int]:
    bits, _ = canonical_form(g)
    return (g.n, bits)


def canonical_graph(g: DenseGraph) -> DenseGraph:
    bits, _ = canonical_form(g)
    return from_upper_bits(g.n, bits)


def _canonical_search(g: DenseGraph) -> tuple[int, tuple[int, ...]]:
    n, adj = g.n, g.adj
    if n <= 1:
        return 0, tuple(range(n))
    degs = [adj[v].bit_count() for v in range(n)]
    mind = min(degs)
    starts = [v for v in range(n) if degs[v] == mind]
    total_bits = n * (n - 1) // 2

    best_bits: Optional[int] = None
    best_seq: list[int] = []
    seq: list[int] = []

    def rec(level: int, placed: int, cur: int, curlen: int) -> None:
        nonlocal best_bits, best_seq
        if level == n:
            if best_bits is None or cur < best_bits:
                best_bits = cur
                best_seq = list(seq)
            return
        if level == 0:
            cands = starts
        else:
            cands = [v for v in range(n) if not (placed >> v) & 1]
        scored = []
        for v in cands:
            row = adj[v]
            newbits = 0
            for u in seq:
                newbits = (newbits << 1) | ((row >> u) & 1)
            scored.append((newbits, v))
        scored.sort()
        nextlen = curlen + level
        for newbits, v in scored:
            nxt = (cur << level) | newbits
            if best_bits is not None and nxt > (best_bits >> (total_bits - nextlen)):
                break  # sorted ascending: every later sibling is worse
            seq.append(v)
            rec(level + 1, placed | (1 << v), nxt, nextlen)
            seq.pop()

    rec(0, 0, 0, 0)
    assert best_bits is not None
    perm = [0] * n
    for pos, v in enumerate(best_seq):
        perm[v] = pos
    return best_bits, tuple(perm)


def are_isomorphic(g: DenseGraph, h: DenseGraph) -> bool:
    if g.n != h.n:
        return False
    return canonical_form(g)[0] == canonical_form(h)[0]


def enumerate_graphs(n: int, order: str = "forward") -> list[DenseGraph]:
    """All graphs on ``n`` vertices, one canonical representative per class.

    ``order`` selects an extension schedule; any value yields the same set,
    which the tests exploit as a self-check of the canonicalization.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    level: list[DenseGraph] = [DenseGraph.empty(0)]
    for k in range(1, n + 1):
        seen: set[int] = set()
        out: list[DenseGraph] = []
        masks: Iterable[int] = range(1 << (k - 1))
        if order == "reversed":
            masks = range((1 << (k - 1)) - 1, -1, -1)
        elif order != "forward":
            raise ValueError(f"unknown order {order!r}")
        for g in level:
            base = g
            if order == "reversed" and k > 1:
                base = g.relabel(list(range(g.n - 1, -1, -1)))
            for mask in masks:
                rows = [base.adj[v] | (((mask >> v) & 1) << (k - 1)) for v in range(k - 1)]
                rows.append(mask)
                cand = DenseGraph(k, tuple(rows))
                bits, _ = canonical_form(cand)
                if bits not in seen:
                    seen.add(bits)
                    out.append(from_upper_bits(k, bits))
        out.sort(key=lambda h: h.upper_bits())
        level = out
    return level


def known_graph_count(n: int) -> Optional[int]:
    """Golden count of isomorphism classes, if recorded."""
    data = json.loads(
        resources.files("quarterdense").joinpath("data/graph_counts.json").read_text()
    )
    return data.get(str(n))


def vertex_orbits(g: DenseGraph, perm_limit: int = 6) -> list[int]:
    """One representative per automorphism orbit of the vertices.

    Brute-forces the automorphism group, so it is only used for graphs
    with at most ``perm_limit`` vertices; beyond that every vertex is
    returned (sound, just less pruning for callers).
    """
    n = g.n
    if n > perm_limit:
        return list(range(n))
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x: int, y: int) -> None:
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[max(rx, ry)] = min(rx, ry)

    degs = [g.degree(v) for v in range(n)]
    for p in itertools.permutations(range(n)):
        if any(degs[v] != degs[p[v]] for v in range(n)):
            continue
        ok = True
        for v in range(n):
            img = 0
            for u in range(n):
                if (g.adj[v] >> u) & 1:
                    img |= 1 << p[u]
            if img != g.adj[p[v]]:
                ok = False
                break
        if ok:
            for v in range(n):
                union(v, p[v])
    reps = sorted({find(v) for v in range(n)})
    return reps
