"""Curve arrangements with exact rational geometry and the separator pipeline.

Curves are polylines with Fraction coordinates.  All predicates are
exact sign computations; nothing here ever rounds.  Arrangements must be
in general position: every intersection between two curves is a proper
transversal crossing of segment interiors, no three curves meet in a
point, no endpoint lies on another curve, and curves do not touch
themselves.  The validator rejects violations instead of perturbing.

The pipeline mirrors the crossing-count separator route: planarize the
arrangement (vertices at crossings and endpoints), find a small balanced
vertex separator of the planarization, lift it to curves, and pack the
remaining curve components into two groups with no crossing pair between
them.  The separator constant is measured and reported, never assumed.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import GeneralPositionError, GenerationError
from .graphs import BicliquePair, DenseGraph, mask_of, verify_empty_pair

Point = tuple[Fraction, Fraction]


def orientation(a: Point, b: Point, c: Point) -> int:
    """Sign of the cross product (b - a) x (c - a)."""
    d = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    return (d > 0) - (d < 0)


def _on_segment(a: Point, b: Point, c: Point) -> bool:
    """Whether collinear point c lies on the closed segment ab."""
    return (
        min(a[0], b[0]) <= c[0] <= max(a[0], b[0])
        and min(a[1], b[1]) <= c[1] <= max(a[1], b[1])
    )


def segment_relation(p1: Point, q1: Point, p2: Point, q2: Point) -> str:
    """Classify two segments: 'disjoint', 'proper', or 'degenerate'.

    Proper means a single transversal interior crossing; any touching,
    collinear overlap, or endpoint incidence is degenerate.
    """
    o1 = orientation(p1, q1, p2)
    o2 = orientation(p1, q1, q2)
    o3 = orientation(p2, q2, p1)
    o4 = orientation(p2, q2, q1)
    if o1 != o2 and o3 != o4 and 0 not in (o1, o2, o3, o4):
        return "proper"
    if o1 == 0 and _on_segment(p1, q1, p2):
        return "degenerate"
    if o2 == 0 and _on_segment(p1, q1, q2):
        return "degenerate"
    if o3 == 0 and _on_segment(p2, q2, p1):
        return "degenerate"
    if o4 == 0 and _on_segment(p2, q2, q1):
        return "degenerate"
    return "disjoint"


def proper_crossing_point(p1: Point, q1: Point, p2: Point, q2: Point) -> tuple[Point, Fraction]:
    """Exact crossing point and the parameter along the first segment."""
    d1 = (q1[0] - p1[0], q1[1] - p1[1])
    d2 = (q2[0] - p2[0], q2[1] - p2[1])
    denom = d1[0] * d2[1] - d1[1] * d2[0]
    t = ((p2[0] - p1[0]) * d2[1] - (p2[1] - p1[1]) * d2[0]) / denom
    return (p1[0] + t * d1[0], p1[1] + t * d1[1]), t


@dataclass(frozen=True)
class Polyline:
    points: tuple[Point, ...]

    def __post_init__(self) -> None:
        if len(self.points) < 2:
            raise ValueError("polyline needs at least two points")
        for a, b in zip(self.points, self.points[1:]):
            if a == b:
                raise ValueError("consecutive polyline points must differ")

    @classmethod
    def make(cls, coords: Iterable) -> "Polyline":
        pts = tuple((Fraction(x), Fraction(y)) for x, y in coords)
        return cls(pts)

    def segments(self) -> list[tuple[Point, Point]]:
        return list(zip(self.points, self.points[1:]))

    def to_json(self) -> list:
        return [
            [[p[0].numerator, p[0].denominator], [p[1].numerator, p[1].denominator]]
            for p in self.points
        ]

    @classmethod
    def from_json(cls, obj: list) -> "Polyline":
        return cls(
            tuple(
                (Fraction(x[0], x[1]), Fraction(y[0], y[1]))
                for x, y in obj
            )
        )


@dataclass(frozen=True)
class Crossing:
    curve_a: int
    curve_b: int
    point: Point
    seg_a: int
    t_a: Fraction
    seg_b: int
    t_b: Fraction


def _curve_self_check(c: Polyline, index: int) -> None:
    segs = c.segments()
    for si, (p, q) in enumerate(segs):
        for sj in range(si + 1, len(segs)):
            r, s = segs[sj]
            if sj == si + 1:
                # Shared vertex q == r; reject only a backtracking overlap.
                if orientation(p, q, s) == 0:
                    forward = (q[0] - p[0]) * (s[0] - q[0]) + (q[1] - p[1]) * (s[1] - q[1])
                    if forward < 0:
                        raise GeneralPositionError(
                            f"curve {index} folds back onto itself at segment {si}"
                        )
                continue
            if segment_relation(p, q, r, s) != "disjoint":
                raise GeneralPositionError(
                    f"curve {index} intersects itself (segments {si}, {sj})"
                )
    if c.points[0] == c.points[-1]:
        raise GeneralPositionError(f"curve {index} is closed")


def _segment_bbox(p: Point, q: Point) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    return (min(p[0], q[0]), max(p[0], q[0]), min(p[1], q[1]), max(p[1], q[1]))


def compute_crossings(curves: Sequence[Polyline], prefilter: bool = True) -> list[Crossing]:
    """All pairwise curve crossings, validating general position.

    ``prefilter`` enables the bounding-box rejection; results are
    identical with it off (the tests compare both paths).
    """
    segs: list[tuple[int, int, Point, Point]] = []
    for ci, c in enumerate(curves):
        _curve_self_check(c, ci)
        for si, (p, q) in enumerate(c.segments()):
            segs.append((ci, si, p, q))
    boxes = [_segment_bbox(p, q) for _, _, p, q in segs]
    out: list[Crossing] = []
    for ia in range(len(segs)):
        ca, sa, p1, q1 = segs[ia]
        ba = boxes[ia]
        for ib in range(ia + 1, len(segs)):
            cb, sb, p2, q2 = segs[ib]
            if ca == cb:
                continue  # self checks already done
            if prefilter:
                bb = boxes[ib]
                if ba[1] < bb[0] or bb[1] < ba[0] or ba[3] < bb[2] or bb[3] < ba[2]:
                    continue
            rel = segment_relation(p1, q1, p2, q2)
            if rel == "disjoint":
                continue
            if rel == "degenerate":
                raise GeneralPositionError(
                    f"curves {ca} and {cb} touch non-transversally "
                    f"(segments {sa}, {sb})"
                )
            pt, t1 = proper_crossing_point(p1, q1, p2, q2)
            _, t2 = proper_crossing_point(p2, q2, p1, q1)
            out.append(Crossing(ca, cb, pt, sa, t1, sb, t2))
    seen: dict[Point, tuple[int, int]] = {}
    for x in out:
        if x.point in seen and seen[x.point] != (x.curve_a, x.curve_b):
            raise GeneralPositionError(
                f"three curves concurrent at {x.point}: "
                f"{seen[x.point]} and ({x.curve_a}, {x.curve_b})"
            )
        seen[x.point] = (x.curve_a, x.curve_b)
    return out


@dataclass
class CurveArrangement:
    curves: tuple[Polyline, ...]
    crossings: list[Crossing] = field(default_factory=list)

    @classmethod
    def build(cls, curves: Sequence[Polyline]) -> "CurveArrangement":
        curves = tuple(curves)
        return cls(curves, compute_crossings(curves))

    @property
    def n(self) -> int:
        return len(self.curves)

    def to_json(self) -> list:
        return [c.to_json() for c in self.curves]

    @classmethod
    def from_json(cls, obj: list) -> "CurveArrangement":
        return cls.build([Polyline.from_json(c) for c in obj])


def intersection_graph(arr: CurveArrangement) -> DenseGraph:
    """String graph of the arrangement: curves joined iff they cross."""
    return DenseGraph.from_edges(
        arr.n, {(x.curve_a, x.curve_b) for x in arr.crossings}
    )


@dataclass
class Planarization:
    """Plane multigraph of the arrangement: crossings and endpoints as vertices."""

    vertex_count: int
    adj: list[list[int]]
    arc_owner: list[int]
    curve_vertices: list[list[int]]  # per curve, its path of vertex ids
    vertex_curves: list[tuple[int, ...]]  # owning curves per vertex

    def edge_count(self) -> int:
        return len(self.arc_owner)


def planarize(arr: CurveArrangement, subset: Optional[Sequence[int]] = None) -> Planarization:
    """Split every curve at its crossings; verify the arc-count identity."""
    curves = list(range(arr.n)) if subset is None else sorted(subset)
    cset = set(curves)
    per_curve: dict[int, list[tuple[int, Fraction, int]]] = {c: [] for c in curves}
    xid = 0
    vertex_curves: list[tuple[int, ...]] = []
    cross_vertex: list[int] = []
    for x in arr.crossings:
        if x.curve_a not in cset or x.curve_b not in cset:
            continue
        v = len(vertex_curves)
        vertex_curves.append((x.curve_a, x.curve_b))
        per_curve[x.curve_a].append((x.seg_a, x.t_a, v))
        per_curve[x.curve_b].append((x.seg_b, x.t_b, v))
        cross_vertex.append(v)
        xid += 1
    adj: list[list[int]] = [[] for _ in vertex_curves]
    arc_owner: list[int] = []
    curve_vertices: list[list[int]] = []

    def new_vertex(c: int) -> int:
        adj.append([])
        vertex_curves.append((c,))
        return len(vertex_curves) - 1

    for c in curves:
        start = new_vertex(c)
        end = new_vertex(c)
        path = [start] + [v for _, _, v in sorted(per_curve[c], key=lambda e: (e[0], e[1]))] + [end]
        curve_vertices.append(path)
        for a, b in zip(path, path[1:]):
            adj[a].append(b)
            adj[b].append(a)
            arc_owner.append(c)
    p = Planarization(len(vertex_curves), adj, arc_owner, curve_vertices, vertex_curves)
    expected = sum(len(per_curve[c]) + 1 for c in curves)
    if p.edge_count() != expected:
        raise AssertionError("planarization arc count mismatch")
    return p


# -- separators -----------------------------------------------------------


def _components(adj: Sequence[Sequence[int]], alive: Sequence[bool]) -> list[list[int]]:
    n = len(adj)
    seen = [False] * n
    comps = []
    for s in range(n):
        if seen[s] or not alive[s]:
            continue
        comp = [s]
        seen[s] = True
        dq = deque([s])
        while dq:
            v = dq.popleft()
            for u in adj[v]:
                if alive[u] and not seen[u]:
                    seen[u] = True
                    comp.append(u)
                    dq.append(u)
        comps.append(comp)
    return comps


def _component_separator(adj: Sequence[Sequence[int]], comp: list[int], cycle_budget: int = 64) -> list[int]:
    """Balanced separator of one connected component.

    Tries every BFS level (balance is immediate from prefix sums) and a
    bounded number of fundamental cycles of the BFS tree; returns the
    smallest candidate whose removal leaves pieces of at most 2/3 the
    component size.  The median BFS level always qualifies, so the result
    is never empty for components that need separating.
    """
    nc = len(comp)
    limit = 2 * nc / 3
    root = comp[0]
    depth = {root: 0}
    parent = {root: None}
    levels: list[list[int]] = [[root]]
    dq = deque([root])
    comp_set = set(comp)
    while dq:
        v = dq.popleft()
        for u in adj[v]:
            if u in comp_set and u not in depth:
                depth[u] = depth[v] + 1
                parent[u] = v
                if depth[u] == len(levels):
                    levels.append([])
                levels[depth[u]].append(u)
                dq.append(u)

    best: Optional[list[int]] = None
    above = 0
    sizes = [len(L) for L in levels]
    total = sum(sizes)
    for i, L in enumerate(levels):
        below = total - above - len(L)
        if max(above, below) <= limit:
            if best is None or len(L) < len(best):
                best = list(L)
        above += len(L)

    # Fundamental cycles of short non-tree edges.
    candidates = []
    for v in comp:
        for u in adj[v]:
            if u in comp_set and u != parent.get(v) and v != parent.get(u) and v < u:
                candidates.append((depth[v] + depth[u], v, u))
    candidates.sort()
    for _, v, u in candidates[:cycle_budget]:
        cyc = set()
        a, b = v, u
        while depth[a] > depth[b]:
            cyc.add(a)
            a = parent[a]
        while depth[b] > depth[a]:
            cyc.add(b)
            b = parent[b]
        while a != b:
            cyc.add(a)
            cyc.add(b)
            a = parent[a]
            b = parent[b]
        cyc.add(a)
        if best is not None and len(cyc) >= len(best):
            continue
        alive = {w: True for w in comp}
        for w in cyc:
            alive[w] = False
        largest = 0
        seen = set(cyc)
        for s in comp:
            if s in seen:
                continue
            size = 0
            seen.add(s)
            dq = deque([s])
            while dq:
                x = dq.popleft()
                size += 1
                for y in adj[x]:
                    if y in comp_set and y not in seen:
                        seen.add(y)
                        dq.append(y)
            largest = max(largest, size)
        if largest <= limit:
            best = sorted(cyc)
    assert best is not None
    return sorted(best)


def planar_separator(p: Planarization) -> list[int]:
    """Vertex set whose removal leaves components of size <= 2n/3."""
    n = p.vertex_count
    if n == 0:
        return []
    alive = [True] * n
    comps = _components(p.adj, alive)
    limit = 2 * n / 3
    sep: list[int] = []
    for comp in comps:
        if len(comp) > limit:
            sep.extend(_component_separator(p.adj, comp))
    return sorted(sep)


@dataclass
class SeparatorBicliqueResult:
    separator_curves: tuple[int, ...]
    pair: BicliquePair
    groups: list[list[int]]
    planar_separator_size: int
    crossing_count: int
    rounds: int


def separator_biclique(arr: CurveArrangement) -> SeparatorBicliqueResult:
    """Curve separator plus a balanced crossing-free pair.

    Lifts planarization separators to curves until every surviving curve
    component has at most 2n/3 curves, then packs components into two
    groups; no pair of curves in different groups crosses, which is
    re-verified against the intersection graph.
    """
    g = intersection_graph(arr)
    n = arr.n
    removed: set[int] = set()
    planar_sep_total = 0
    rounds = 0
    while True:
        survivors = [c for c in range(n) if c not in removed]
        if not survivors:
            groups_curves: list[list[int]] = []
            break
        sub = planarize(arr, survivors)
        comps = _components(sub.adj, [True] * sub.vertex_count)
        comp_groups: list[list[int]] = []
        for comp in comps:
            cs = sorted({c for v in comp for c in sub.vertex_curves[v]})
            comp_groups.append(cs)
        if all(len(cs) <= 2 * n / 3 for cs in comp_groups):
            groups_curves = comp_groups
            break
        rounds += 1
        big = max(comp_groups, key=len)
        sub_big = planarize(arr, big)
        sp = planar_separator(sub_big)
        planar_sep_total += len(sp)
        newly = {c for v in sp for c in sub_big.vertex_curves[v]}
        if not newly:
            newly = {big[0]}
        removed |= newly

    groups_curves.sort(key=lambda cs: (-len(cs), cs))
    bin_a: list[int] = []
    bin_b: list[int] = []
    for cs in groups_curves:
        (bin_a if len(bin_a) <= len(bin_b) else bin_b).extend(cs)
    k = min(len(bin_a), len(bin_b))
    pair = BicliquePair(tuple(sorted(bin_a)[:k]), tuple(sorted(bin_b)[:k]))
    if not verify_empty_pair(g, pair):
        raise AssertionError("separator pipeline produced a crossing pair")
    return SeparatorBicliqueResult(
        tuple(sorted(removed)),
        pair,
        [sorted(bin_a), sorted(bin_b)],
        planar_sep_total,
        len(arr.crossings),
        rounds,
    )


# -- constructions and experiments ----------------------------------------


def extremal_four_part_graph(
    n: int, eps: Fraction, seed: int, max_retries: int = 1000
) -> tuple[DenseGraph, list[list[int]]]:
    """Four cliques plus sparse random inter-part edges under an edge budget.

    Total edges stay at most (1/4 + eps) n^2 / 2; the inter-part
    probability is chosen so the expected total meets the budget and
    samples exceeding it are rejected and redrawn.
    """
    eps = Fraction(eps)
    base, rem = divmod(n, 4)
    sizes = [base + 1] * rem + [base] * (4 - rem)
    parts = []
    at = 0
    for s in sizes:
        parts.append(list(range(at, at + s)))
        at += s
    budget = (Fraction(1, 4) + eps) * Fraction(n * n, 2)
    intra = sum(s * (s - 1) // 2 for s in sizes)
    inter_pairs = sum(
        sizes[i] * sizes[j] for i in range(4) for j in range(i + 1, 4)
    )
    if intra > budget:
        raise ValueError(
            f"edge budget {budget} cannot cover the four cliques ({intra} edges)"
        )
    p = min((budget - intra) / inter_pairs, Fraction(1)) if inter_pairs else Fraction(0)
    rng = np.random.Generator(np.random.PCG64(seed))
    for _ in range(max_retries):
        edges: list[tuple[int, int]] = []
        for part in parts:
            edges.extend(itertools.combinations(part, 2))
        for i in range(4):
            for j in range(i + 1, 4):
                for u in parts[i]:
                    for v in parts[j]:
                        if rng.integers(0, p.denominator) < p.numerator:
                            edges.append((u, v))
        if len(edges) <= budget:
            return DenseGraph.from_edges(n, edges), parts
    raise GenerationError(f"could not meet the edge budget in {max_retries} draws")


def random_curves(
    n: int,
    segments_per_curve: int,
    bbox: int,
    seed: int,
    step_scale: Fraction = Fraction(1, 4),
    max_retries: int = 200,
    resolution: int = 1 << 16,
) -> CurveArrangement:
    """Seeded random polylines in general position.

    Each curve is a short random walk on a fine sub-integer grid
    (coordinates are multiples of 1/resolution, which makes exact
    incidences rare).  Curves are accepted one at a time; a curve that
    touches the accepted ones degenerately is redrawn, and the whole
    arrangement is validated once more at the end.
    """
    if n < 1 or segments_per_curve < 1 or bbox < 4:
        raise ValueError("parameters must be positive (bbox >= 4)")
    rng = np.random.Generator(np.random.PCG64(seed))
    res = resolution
    span = bbox * res
    step = max(2, int(bbox * step_scale)) * res

    def draw_curve() -> Polyline:
        x = int(rng.integers(0, span + 1))
        y = int(rng.integers(0, span + 1))
        pts = [(Fraction(x, res), Fraction(y, res))]
        for _s in range(segments_per_curve):
            while True:
                dx = int(rng.integers(-step, step + 1))
                dy = int(rng.integers(-step, step + 1))
                if dx or dy:
                    break
            x, y = x + dx, y + dy
            pts.append((Fraction(x, res), Fraction(y, res)))
        return Polyline(tuple(pts))

    accepted: list[Polyline] = []
    accepted_segs: list[tuple[Point, Point]] = []
    accepted_boxes: list[tuple] = []
    points_seen: set[Point] = set()
    for _c in range(n):
        for attempt in range(max_retries):
            cand = draw_curve()
            try:
                _curve_self_check(cand, len(accepted))
            except GeneralPositionError:
                continue
            new_segs = cand.segments()
            new_points: set[Point] = set()
            ok = True
            for p1, q1 in new_segs:
                b1 = _segment_bbox(p1, q1)
                for (p2, q2), b2 in zip(accepted_segs, accepted_boxes):
                    if b1[1] < b2[0] or b2[1] < b1[0] or b1[3] < b2[2] or b2[3] < b1[2]:
                        continue
                    rel = segment_relation(p1, q1, p2, q2)
                    if rel == "degenerate":
                        ok = False
                        break
                    if rel == "proper":
                        pt, _ = proper_crossing_point(p1, q1, p2, q2)
                        if pt in points_seen or pt in new_points:
                            ok = False
                            break
                        new_points.add(pt)
                if not ok:
                    break
            if ok:
                accepted.append(cand)
                accepted_segs.extend(new_segs)
                accepted_boxes.extend(_segment_bbox(p, q) for p, q in new_segs)
                points_seen |= new_points
                break
        else:
            raise GenerationError(
                f"curve {len(accepted)} found no general position in {max_retries} draws"
            )
    return CurveArrangement.build(accepted)


def sparse_random_curves(
    n: int, seed: int, target_crossings: int, segments_per_curve: int = 4
) -> CurveArrangement:
    """Arrangement with at most ``target_crossings`` crossings.

    Shrinks the walk step (curves get shorter relative to the box) until
    the crossing count lands under the target; deterministic per seed.
    """
    scale = Fraction(1, 4)
    for _ in range(12):
        arr = random_curves(
            n, segments_per_curve, bbox=1000, seed=seed, step_scale=scale
        )
        if len(arr.crossings) <= target_crossings:
            return arr
        scale = scale / 2
    raise GenerationError(f"could not reach {target_crossings} crossings for n={n}")


def grid_arrangement(lines: int, spacing: int = 2) -> CurveArrangement:
    """lines x lines axis-parallel grid of segments (a planar workbench)."""
    size = (lines + 1) * spacing
    curves = []
    for i in range(1, lines + 1):
        y = i * spacing
        curves.append(Polyline.make([(0, y), (size, y)]))
    for i in range(1, lines + 1):
        x = i * spacing
        curves.append(Polyline.make([(x, 0), (x, size)]))
    return CurveArrangement.build(curves)


def measure_biclique_growth(
    ns: Sequence[int],
    eps: Fraction,
    seeds: Sequence[int],
    exact_cap: int = 28,
) -> list[dict]:
    """Per (n, seed): complement bi-clique size of the four-part construction."""
    from .graphs import max_balanced_empty_pair

    rows = []
    for n in ns:
        for seed in seeds:
            g, _ = extremal_four_part_graph(n, eps, seed)
            mode = "exact" if n <= exact_cap else "greedy"
            pair = max_balanced_empty_pair(g, mode=mode)
            rows.append(
                {
                    "n": n,
                    "seed": seed,
                    "size": pair.size,
                    "mode": mode,
                    "log2_n": round(math.log2(n), 6),
                }
            )
    return rows
