"""Block models and the step-by-step weak-2-subdivision embedding.

The sampler plants a partition with prescribed inter-block densities as
a stand-in for a regular partition.  The embedder then runs the
constructive argument literally: branch vertices first, then both side
vertices of one edge per step, maintaining candidate sets U_1..U_h that
only ever shrink.  "Average" vertices track the block densities within
the current candidate sets up to lambda.

A run either produces a full embedding map (verified independently) or
a structured failure naming the step and cause; there is no retrying,
so identical seeds and parameters reproduce identical outcomes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

import numpy as np

from .admissible import AdmissibilityWitness, is_eps_admissible
from .graphs import DenseGraph, iter_bits, mask_of
from .subdivisions import (
    SubdivisionPattern,
    TwoSubdivision,
    WeakSubdivisionWitness,
    two_subdivision,
    weak_contains_weak,
)
from .turan import WeightedCompleteGraph


@dataclass(frozen=True)
class RegularPartitionModel:
    """Planted-partition generator: k blocks of size N with pair densities.

    ``weights.weight(i, j)`` is the target density between blocks i and j;
    ``p_in`` the density inside each block.
    """

    weights: WeightedCompleteGraph
    block_size: int
    p_in: Fraction
    seed: int

    @property
    def k(self) -> int:
        return self.weights.k

    @property
    def n(self) -> int:
        return self.k * self.block_size


def sample_block_model(model: RegularPartitionModel) -> tuple[DenseGraph, list[list[int]]]:
    """Seeded sample of the block model; deterministic per seed."""
    if model.block_size < 1:
        raise ValueError("block size must be positive")
    k, N = model.k, model.block_size
    n = k * N
    rng = np.random.Generator(np.random.PCG64(model.seed))
    mat = np.zeros((n, n), dtype=bool)
    for i in range(k):
        for j in range(i, k):
            p = float(model.p_in if i == j else model.weights.weight(i, j))
            if p <= 0.0:
                continue
            block = rng.random((N, N)) < p
            ri, rj = i * N, j * N
            if i == j:
                upper = np.triu(block, 1)
                mat[ri : ri + N, ri : ri + N] |= upper | upper.T
            else:
                mat[ri : ri + N, rj : rj + N] |= block
                mat[rj : rj + N, ri : ri + N] |= block.T
    packed = np.packbits(mat, axis=1, bitorder="little")
    rows = tuple(int.from_bytes(packed[v].tobytes(), "little") for v in range(n))
    g = DenseGraph(n, rows)
    partition = [list(range(i * N, (i + 1) * N)) for i in range(k)]
    return g, partition


@dataclass(frozen=True)
class RegularityReport:
    max_deviation: Fraction
    trials: int
    sampled: bool = True


def check_regularity_sampled(
    g: DenseGraph,
    partition: Sequence[Sequence[int]],
    lam: Fraction,
    trials: int,
    seed: int = 0,
) -> RegularityReport:
    """Worst observed sub-pair density deviation over seeded random subsets.

    Heuristic only: the verdict is flagged as sampled and never treated
    as a regularity proof.
    """
    if trials < 1:
        raise ValueError("trials must be positive")
    lam = Fraction(lam)
    rng = np.random.Generator(np.random.PCG64(seed))
    worst = Fraction(0)

    def cross(amask: int, avs: list[int], bmask: int, cnt_b: int) -> Fraction:
        edges = sum((g.adj[v] & bmask).bit_count() for v in avs)
        return Fraction(edges, len(avs) * cnt_b)

    import math

    for bi in range(len(partition)):
        for bj in range(bi + 1, len(partition)):
            pa, pb = list(partition[bi]), list(partition[bj])
            base = cross(mask_of(pa), pa, mask_of(pb), len(pb))
            lo_a = max(1, math.ceil(lam * len(pa)))
            lo_b = max(1, math.ceil(lam * len(pb)))
            for _ in range(trials):
                sa = int(rng.integers(lo_a, len(pa) + 1))
                sb = int(rng.integers(lo_b, len(pb) + 1))
                avs = [pa[t] for t in rng.choice(len(pa), size=sa, replace=False)]
                bvs = [pb[t] for t in rng.choice(len(pb), size=sb, replace=False)]
                dev = abs(cross(mask_of(avs), avs, mask_of(bvs), len(bvs)) - base)
                if dev > worst:
                    worst = dev
    return RegularityReport(worst, trials)


def find_average_vertex(
    g: DenseGraph,
    candidates: Sequence[int],
    u_sets: dict[int, int],
    w_row: dict[int, Fraction],
    lam: Fraction,
) -> Optional[int]:
    """First candidate whose density into every referenced set is within lam.

    ``u_sets[j]`` is a nonempty vertex bitmask, ``w_row[j]`` the target
    density; the bound is strict.
    """
    lam = Fraction(lam)
    sizes = {j: m.bit_count() for j, m in u_sets.items()}
    for v in candidates:
        row = g.adj[v]
        ok = True
        for j, m in u_sets.items():
            cnt = (row & m).bit_count()
            # |cnt/size - w| < lam  without building Fractions per pair
            if abs(Fraction(cnt, sizes[j]) - w_row[j]) >= lam:
                ok = False
                break
        if ok:
            return v
    return None


@dataclass(frozen=True)
class EmbedParams:
    eps1: Fraction
    lam: Fraction
    beta: Fraction
    delta: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("eps1", "lam", "beta", "delta"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))


@dataclass(frozen=True)
class FailureReport:
    step: int
    cause: str  # candidate-exhaustion | no-average-vertex | no-cross-edge
    detail: str = ""


@dataclass(frozen=True)
class EmbeddingMap:
    """Images of the 2-subdivision of H: one branch vertex per H-vertex,
    one side vertex per directed H-edge (s_{u,v} adjacent to branch u)."""

    branch: tuple[tuple[int, int], ...]
    side: tuple[tuple[tuple[int, int], int], ...]

    def branch_of(self, v: int) -> int:
        return dict(self.branch)[v]

    def side_of(self, u: int, v: int) -> int:
        return dict(self.side)[(u, v)]

    def vertices(self) -> list[int]:
        return [x for _, x in self.branch] + [x for _, x in self.side]

    def to_json(self) -> dict:
        return {
            "branch": {str(v): x for v, x in self.branch},
            "side": {f"{u},{v}": x for (u, v), x in self.side},
        }


@dataclass
class EmbedResult:
    success: bool
    mapping: Optional[EmbeddingMap]
    failure: Optional[FailureReport]
    steps_done: int
    size_trace: list[tuple[int, ...]] = field(default_factory=list)


def _as_h_graph(h: Union[DenseGraph, SubdivisionPattern]) -> DenseGraph:
    return h.realize() if isinstance(h, SubdivisionPattern) else h


def embed_weak_2_subdivision(
    g: DenseGraph,
    partition: Sequence[Sequence[int]],
    weights: WeightedCompleteGraph,
    h_graph: Union[DenseGraph, SubdivisionPattern],
    witness: AdmissibilityWitness,
    params: EmbedParams,
) -> EmbedResult:
    """Run the forward embedding; never returns a partial map.

    The witness fixes which block hosts which H-vertex and the vertex
    order.  Branch steps pick a well-connected average vertex and restrict
    the home set to its neighborhood; edge steps place both side vertices,
    via an average pair when the block weight is at least eps1 and via a
    cross edge between average sets otherwise.
    """
    H = _as_h_graph(h_graph)
    h = H.n
    if len(witness.order) != h:
        raise ValueError("witness does not match H")
    # Position space: position p hosts H-vertex order[p] in block image[order[p]].
    order = list(witness.order)
    blk = [witness.image[x] for x in order]
    hadj = [[H.has_edge(order[p], order[q]) for q in range(h)] for p in range(h)]
    w_pos = {
        (p, q): weights.weight(blk[p], blk[q])
        for p in range(h)
        for q in range(h)
        if p != q
    }

    u: list[int] = [mask_of(partition[blk[p]]) for p in range(h)]
    edges = sorted(
        ((min(p, q), max(p, q)) for p in range(h) for q in range(p + 1, h) if hadj[p][q])
    )
    branch_img: list[Optional[int]] = [None] * h
    side_img: dict[tuple[int, int], int] = {}
    trace: list[tuple[int, ...]] = []

    def active_indices() -> list[int]:
        act = []
        for p in range(h):
            if branch_img[p] is None:
                act.append(p)
                continue
            if any((p, q) not in side_img for q in range(h) if q != p and hadj[p][q]):
                act.append(p)
        return act

    def check_active(step: int) -> Optional[FailureReport]:
        for p in active_indices():
            if u[p] == 0:
                return FailureReport(step, "candidate-exhaustion", f"U_{p} empty")
        return None

    def averages(pool_mask: int, home: int, sets: Optional[list[int]] = None) -> list[int]:
        refs = {
            q: u[q]
            for q in (sets if sets is not None else range(h))
            if q != home and u[q]
        }
        row = {q: w_pos[(home, q)] for q in refs}
        out = []
        for v in sorted(iter_bits(pool_mask)):
            ok = True
            for q, m in refs.items():
                cnt = (g.adj[v] & m).bit_count()
                if abs(Fraction(cnt, m.bit_count()) - row[q]) >= params.lam:
                    ok = False
                    break
            if ok:
                out.append(v)
        return out

    step = 0
    # Branch phase: place v'_p for p = 0..h-1.
    for p in range(h):
        step += 1
        trace.append(tuple(m.bit_count() for m in u))
        pool = u[p]
        size = pool.bit_count()
        if size == 0:
            return EmbedResult(False, None, FailureReport(step, "candidate-exhaustion", f"U_{p} empty"), step - 1, trace)
        well = [
            v
            for v in sorted(iter_bits(pool))
            if (g.adj[v] & pool).bit_count() >= params.beta * size
        ]
        if not well:
            return EmbedResult(False, None, FailureReport(step, "candidate-exhaustion", "no high-degree vertex in home set"), step - 1, trace)
        refs = {q: u[q] for q in range(h) if q != p and u[q]}
        row = {q: w_pos[(p, q)] for q in refs}
        vstar = find_average_vertex(g, well, refs, row, params.lam)
        if vstar is None:
            return EmbedResult(False, None, FailureReport(step, "no-average-vertex", "branch step"), step - 1, trace)
        branch_img[p] = vstar
        for q in range(h):
            if q == p:
                u[p] = g.adj[vstar] & u[p]
            else:
                u[q] &= ~g.adj[vstar]
        fail = check_active(step)
        if fail is not None:
            return EmbedResult(False, None, fail, step, trace)

    # Edge phase: place s'_{a,b} and s'_{b,a} for each H-edge in order.
    for a, b in edges:
        step += 1
        trace.append(tuple(m.bit_count() for m in u))
        if w_pos[(a, b)] >= params.eps1:
            # Case 1: dense block pair.
            cand_a = averages(u[a], a)
            if not cand_a:
                return EmbedResult(False, None, FailureReport(step, "no-average-vertex", f"edge ({a},{b}) first side"), step - 1, trace)
            sa = cand_a[0]
            uprime = [u[q] if q == a else u[q] & ~g.adj[sa] for q in range(h)]
            w_pool = u[b] & g.adj[sa]
            refs = {q: uprime[q] for q in range(h) if q != b and uprime[q]}
            row = {q: w_pos[(b, q)] for q in refs}
            sb = find_average_vertex(g, sorted(iter_bits(w_pool)), refs, row, params.lam)
            if sb is None:
                cause = "candidate-exhaustion" if w_pool == 0 else "no-average-vertex"
                return EmbedResult(False, None, FailureReport(step, cause, f"edge ({a},{b}) second side"), step - 1, trace)
            for q in range(h):
                if q == b:
                    u[b] = uprime[b]
                else:
                    u[q] = uprime[q] & ~g.adj[sb]
        else:
            # Case 2: thin block pair, place a cross edge between average sets.
            w_a = averages(u[a], a)
            w_b = averages(u[b], b)
            if not w_a or not w_b:
                return EmbedResult(False, None, FailureReport(step, "no-average-vertex", f"edge ({a},{b}) thin case"), step - 1, trace)
            wb_mask = mask_of(w_b)
            sa = sb = None
            for v in w_a:
                hit = g.adj[v] & wb_mask
                if hit:
                    sa = v
                    sb = min(iter_bits(hit))
                    break
            if sa is None:
                return EmbedResult(False, None, FailureReport(step, "no-cross-edge", f"edge ({a},{b})"), step - 1, trace)
            both = g.adj[sa] | g.adj[sb]
            for q in range(a + 1, h):
                if q != b:
                    u[q] &= ~both
            u[a] &= ~g.adj[sb]
            u[b] &= ~g.adj[sa]
        side_img[(a, b)] = sa
        side_img[(b, a)] = sb
        fail = check_active(step)
        if fail is not None:
            return EmbedResult(False, None, fail, step, trace)

    trace.append(tuple(m.bit_count() for m in u))
    branch = tuple((order[p], branch_img[p]) for p in range(h))
    side = tuple(
        ((order[p], order[q]), v) for (p, q), v in sorted(side_img.items())
    )
    return EmbedResult(True, EmbeddingMap(branch, side), None, step, trace)


@dataclass(frozen=True)
class EmbeddingCheck:
    ok: bool
    diffs: tuple[str, ...]
    recognized: Optional[bool]  # weak-subdivision recognition, complete H only


def verify_embedding(
    g: DenseGraph,
    h_graph: Union[DenseGraph, SubdivisionPattern],
    mapping: EmbeddingMap,
) -> EmbeddingCheck:
    """Re-check an embedding against the strict requirements.

    Every image of a 2-subdivision edge must be a G-edge and every other
    pair a non-edge, except that two side vertices rooted at the same
    H-vertex may be joined.  For complete H the induced subgraph is also
    run through weak-subdivision recognition.
    """
    H = _as_h_graph(h_graph)
    h = H.n
    branch = dict(mapping.branch)
    side = dict(mapping.side)
    diffs: list[str] = []
    verts: list[tuple[str, tuple, int]] = []
    for v in range(h):
        verts.append(("branch", (v,), branch[v]))
    for (x, y), img in side.items():
        verts.append(("side", (x, y), img))
    if len({img for _, _, img in verts}) != len(verts):
        diffs.append("images not distinct")

    def required(kind1, key1, kind2, key2) -> bool:
        # edges of the 2-subdivision: v_x ~ s_{x,y} and s_{x,y} ~ s_{y,x}
        if kind1 == "branch" and kind2 == "side":
            return key2[0] == key1[0] and H.has_edge(*key2)
        if kind1 == "side" and kind2 == "branch":
            return required(kind2, key2, kind1, key1)
        if kind1 == "side" and kind2 == "side":
            return key1 == (key2[1], key2[0])
        return False

    def allowed_extra(kind1, key1, kind2, key2) -> bool:
        return kind1 == "side" and kind2 == "side" and key1[0] == key2[0]

    for (k1, key1, i1), (k2, key2, i2) in itertools.combinations(verts, 2):
        has = g.has_edge(i1, i2)
        need = required(k1, key1, k2, key2)
        if need and not has:
            diffs.append(f"missing edge {k1}{key1} - {k2}{key2}")
        elif not need and has and not allowed_extra(k1, key1, k2, key2):
            diffs.append(f"forbidden edge {k1}{key1} - {k2}{key2}")

    recognized = None
    if H.edge_count() == h * (h - 1) // 2:
        from .subdivisions import is_weak_subdivision

        sub = g.subgraph(sorted(img for _, _, img in verts))
        recognized = is_weak_subdivision(sub, h) is not None
        if not recognized:
            diffs.append("recognition as weak-subdivision failed")
    return EmbeddingCheck(not diffs, tuple(diffs), recognized)


def extract_weak_k5(
    p: SubdivisionPattern, g: DenseGraph, mapping: EmbeddingMap
) -> tuple[tuple[int, ...], WeakSubdivisionWitness]:
    """Induced weak-subdivision of K5 inside an embedded weak-2-subdivision of p."""
    base = p.realize()
    two = two_subdivision(base)
    branch = dict(mapping.branch)
    side = dict(mapping.side)
    host_of = {}
    for v in range(base.n):
        host_of[v] = branch[v]
    for (x, y), s in two.side.items():
        host_of[s] = side[(x, y)]
    local = sorted(host_of)
    to_local = {lab: i for i, lab in enumerate(local)}
    host_list = [host_of[lab] for lab in local]
    sub = g.subgraph(host_list)
    relabeled_side = {e: to_local[s] for e, s in two.side.items()}
    host = TwoSubdivision(base, sub, relabeled_side)
    subset_local, wit = weak_contains_weak(p, host)
    subset_host = tuple(sorted(host_list[i] for i in subset_local))
    wit_host = WeakSubdivisionWitness(
        wit.pattern,
        tuple(host_list[i] for i in wit.vertex_map),
        tuple(tuple(sorted((host_list[a], host_list[b]))) for a, b in wit.extra_edges),
    )
    return subset_host, wit_host


def trivial_witness_for_half_weights(
    weights: WeightedCompleteGraph,
    h_graph: Union[DenseGraph, SubdivisionPattern],
    eps1: Fraction,
    blocks: Optional[Sequence[int]] = None,
) -> AdmissibilityWitness:
    """Admissibility witness for block models without thin or fat pairs."""
    H = _as_h_graph(h_graph)
    blocks = list(blocks) if blocks is not None else list(range(H.n))
    sub = [[weights.weight(a, b) if a != b else Fraction(0) for b in blocks] for a in blocks]
    w = is_eps_admissible(sub, H, Fraction(eps1), targets=blocks)
    if w is None:
        raise ValueError("block weights are not admissible for H at this eps1")
    return w


def run_embedding_batch(
    h_graph: Union[DenseGraph, SubdivisionPattern],
    weights: WeightedCompleteGraph,
    block_size: int,
    p_in: Fraction,
    params: EmbedParams,
    seeds: Sequence[int],
    witness: Optional[AdmissibilityWitness] = None,
) -> list[dict]:
    """One row per seed: sample the model, embed, verify."""
    H = _as_h_graph(h_graph)
    if witness is None:
        witness = trivial_witness_for_half_weights(weights, H, params.eps1)
    rows = []
    for seed in seeds:
        model = RegularPartitionModel(weights, block_size, Fraction(p_in), seed)
        g, partition = sample_block_model(model)
        res = embed_weak_2_subdivision(g, partition, weights, h_graph, witness, params)
        final = res.size_trace[-1] if res.size_trace else ()
        row = {
            "seed": seed,
            "success": int(res.success),
            "failure_step": res.failure.step if res.failure else "",
            "failure_cause": res.failure.cause if res.failure else "",
            "steps_done": res.steps_done,
            "sizes": "|".join(str(x) for x in final),
            "verified": "",
        }
        if res.success:
            check = verify_embedding(g, h_graph, res.mapping)
            row["verified"] = int(check.ok)
        rows.append(row)
    return rows
