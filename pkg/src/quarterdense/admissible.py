"""Admissibility predicates: the pivot between embedding and weight reduction.

All three variants share one backtracking engine.  A candidate order and
bijection are grown position by position; every edge of H whose image is
"thin" creates a constraint on all later-placed vertices, kept as a
running forbidden-vertex bitmask ("jeopardy" of the thin pair).  The
variants differ only in what thin/fat/jeopardy mean:

  * unweighted      thin = non-edge of Q', jeopardy = common neighbors
  * zero-weighted   thin = weight 0, fat = weight 1, jeopardy = sum >= 1
  * eps-weighted    thin = weight <= eps, fat = weight >= 1 - eps,
                    jeopardy = sum >= 1 - eps

Searches are exhaustive, so a None result is a proof of non-admissibility.
Returned witnesses are always re-validated against the raw definition by
an independent check.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .enumeration import canonical_form, vertex_orbits
from .graphs import DenseGraph, from_upper_bits
from .subdivisions import SubdivisionPattern


@dataclass(frozen=True)
class AdmissibilityWitness:
    """A total order on V(H) plus a bijection into the target vertices."""

    order: tuple[int, ...]
    image: tuple[int, ...]  # image[h_vertex] = target vertex

    def to_json(self) -> dict:
        return {
            "order": list(self.order),
            "map": {str(x): self.image[x] for x in sorted(self.order)},
        }


WeightMatrix = Sequence[Sequence[Fraction]]


def _run_search(
    h: int,
    hadj: Sequence[int],
    thin: Sequence[Sequence[bool]],
    jeop: Sequence[Sequence[int]],
    h_first: Sequence[int],
    q_first: Sequence[int],
) -> Optional[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Core backtracking over (order, bijection) pairs.

    Returns (hseq, qseq): the H-vertices in precedence order and their
    images.  ``h_first``/``q_first`` restrict only the first position
    (sound under the automorphism groups of H and of the target).
    """
    hseq: list[int] = []
    qseq: list[int] = []
    forb_stack = [0]

    def rec(pos: int, hplaced: int, qused: int) -> bool:
        if pos == h:
            return True
        hcands = h_first if pos == 0 else [x for x in range(h) if not (hplaced >> x) & 1]
        qcands = q_first if pos == 0 else [q for q in range(h) if not (qused >> q) & 1]
        forb = forb_stack[-1]
        for x in hcands:
            xrow = hadj[x]
            for q in qcands:
                if (forb >> q) & 1:
                    continue
                new_forb = forb
                fail = False
                for ypos in range(pos):
                    y = hseq[ypos]
                    if not (xrow >> y) & 1:
                        continue
                    qy = qseq[ypos]
                    if not thin[qy][q]:
                        continue
                    jm = jeop[qy][q]
                    for zpos in range(ypos + 1, pos):
                        if (jm >> qseq[zpos]) & 1:
                            fail = True
                            break
                    if fail:
                        break
                    new_forb |= jm
                if fail:
                    continue
                hseq.append(x)
                qseq.append(q)
                forb_stack.append(new_forb)
                if rec(pos + 1, hplaced | (1 << x), qused | (1 << q)):
                    return True
                forb_stack.pop()
                hseq.pop()
                qseq.pop()
        return False

    if rec(0, 0, 0):
        return tuple(hseq), tuple(qseq)
    return None


_H_ORBIT_CACHE: dict[tuple[int, tuple[int, ...]], list[int]] = {}


def _h_orbit_reps(H: DenseGraph) -> list[int]:
    key = (H.n, H.adj)
    if key not in _H_ORBIT_CACHE:
        _H_ORBIT_CACHE[key] = vertex_orbits(H, perm_limit=8)
    return _H_ORBIT_CACHE[key]


def _as_graph(H: Union[DenseGraph, SubdivisionPattern]) -> DenseGraph:
    return H.realize() if isinstance(H, SubdivisionPattern) else H


def _witness_from_seqs(
    seqs: tuple[tuple[int, ...], tuple[int, ...]], targets: Sequence[int]
) -> AdmissibilityWitness:
    hseq, qseq = seqs
    h = len(hseq)
    image = [0] * h
    for x, q in zip(hseq, qseq):
        image[x] = targets[q]
    return AdmissibilityWitness(hseq, tuple(image))


# -- unweighted ---------------------------------------------------------


def is_H_admissible(qp: DenseGraph, H: Union[DenseGraph, SubdivisionPattern]) -> Optional[AdmissibilityWitness]:
    """Witness iff Q' is H-admissible (unweighted form).

    For every H-edge xy with x before y whose image is a non-edge of Q',
    no later vertex may map to a common neighbor of the two images.
    """
    Hg = _as_graph(H)
    h = Hg.n
    if qp.n != h:
        raise ValueError(f"size mismatch: |V(Q')|={qp.n}, |V(H)|={h}")
    thin = [[not qp.has_edge(a, b) if a != b else False for b in range(h)] for a in range(h)]
    jeop = [[qp.adj[a] & qp.adj[b] for b in range(h)] for a in range(h)]
    seqs = _run_search(
        h, Hg.adj, thin, jeop, _h_orbit_reps(Hg), vertex_orbits(qp, perm_limit=6)
    )
    if seqs is None:
        return None
    witness = _witness_from_seqs(seqs, list(range(h)))
    assert validate_graph_witness(qp, Hg, witness)
    return witness


def validate_graph_witness(qp: DenseGraph, H: DenseGraph, w: AdmissibilityWitness) -> bool:
    """Direct cubic re-check of the unweighted definition."""
    h = H.n
    if sorted(w.order) != list(range(h)) or sorted(w.image) != list(range(h)):
        return False
    pos = {x: p for p, x in enumerate(w.order)}
    for x in range(h):
        for y in range(h):
            if x == y or not H.has_edge(x, y):
                continue
            if pos[x] > pos[y]:
                continue
            if qp.has_edge(w.image[x], w.image[y]):
                continue
            for z in range(h):
                if z in (x, y) or pos[z] <= pos[x]:
                    continue
                if qp.has_edge(w.image[x], w.image[z]) and qp.has_edge(w.image[y], w.image[z]):
                    return False
    return True


# -- weighted -----------------------------------------------------------


def _weighted_tables(wmat: WeightMatrix, eps: Fraction) -> Optional[tuple[list, list]]:
    """Thin/jeopardy tables, or None when some pair is fat."""
    h = len(wmat)
    one = Fraction(1)
    for a in range(h):
        for b in range(a + 1, h):
            if wmat[a][b] >= one - eps:
                return None
    thin = [[(a != b and wmat[a][b] <= eps) for b in range(h)] for a in range(h)]
    jeop = [[0] * h for _ in range(h)]
    for a in range(h):
        for b in range(h):
            if a == b:
                continue
            m = 0
            for z in range(h):
                if z != a and z != b and wmat[a][z] + wmat[b][z] >= one - eps:
                    m |= 1 << z
            jeop[a][b] = m
    return thin, jeop


def is_eps_admissible(
    wmat: WeightMatrix,
    H: Union[DenseGraph, SubdivisionPattern],
    eps: Fraction,
    targets: Optional[Sequence[int]] = None,
) -> Optional[AdmissibilityWitness]:
    """Witness iff the weighted complete graph restricted to |V(H)| vertices
    is (H, eps)-admissible.

    ``wmat`` is the symmetric pair-weight matrix of the restriction; thin
    means weight <= eps, fat means weight >= 1 - eps, and thin H-edge
    images bound w(b(x)b(z)) + w(b(y)b(z)) < 1 - eps for later z.
    """
    Hg = _as_graph(H)
    h = Hg.n
    if len(wmat) != h:
        raise ValueError(f"size mismatch: restriction has {len(wmat)} vertices, |V(H)|={h}")
    eps = Fraction(eps)
    tables = _weighted_tables(wmat, eps)
    if tables is None:
        return None
    thin, jeop = tables
    seqs = _run_search(h, Hg.adj, thin, jeop, _h_orbit_reps(Hg), list(range(h)))
    if seqs is None:
        return None
    witness = _witness_from_seqs(seqs, targets if targets is not None else list(range(h)))
    local = _witness_from_seqs(seqs, list(range(h)))
    assert validate_weight_witness(wmat, Hg, local, eps)
    return witness


def is_zero_admissible(
    wmat: WeightMatrix,
    H: Union[DenseGraph, SubdivisionPattern],
    targets: Optional[Sequence[int]] = None,
) -> Optional[AdmissibilityWitness]:
    """(H, 0)-admissibility: thin is weight 0 exactly, fat is weight 1 exactly."""
    return is_eps_admissible(wmat, H, Fraction(0), targets=targets)


def validate_weight_witness(
    wmat: WeightMatrix, H: DenseGraph, w: AdmissibilityWitness, eps: Fraction
) -> bool:
    h = H.n
    one = Fraction(1)
    for a in range(h):
        for b in range(a + 1, h):
            if wmat[a][b] >= one - eps:
                return False
    pos = {x: p for p, x in enumerate(w.order)}
    for x in range(h):
        for y in range(h):
            if x == y or not H.has_edge(x, y) or pos[x] > pos[y]:
                continue
            if wmat[w.image[x]][w.image[y]] > eps:
                continue
            for z in range(h):
                if z in (x, y) or pos[z] <= pos[x]:
                    continue
                if wmat[w.image[x]][w.image[z]] + wmat[w.image[y]][w.image[z]] >= one - eps:
                    return False
    return True


# -- family search over subgraphs ----------------------------------------


@dataclass(frozen=True)
class AdmissibleHit:
    subset: tuple[int, ...]
    family_index: int
    witness: AdmissibilityWitness


_GRAPH_MEMO: dict[tuple[int, int, int], Optional[tuple[tuple[int, ...], tuple[int, ...]]]] = {}


def clear_memo() -> None:
    _GRAPH_MEMO.clear()


def _cached_graph_admissible(
    qs: DenseGraph, Hg: DenseGraph, fam_key: int
) -> Optional[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Search result on the canonical form of ``qs``; image in qs-local labels."""
    bits, perm = canonical_form(qs)
    key = (qs.n, bits, fam_key)
    if key in _GRAPH_MEMO:
        hit = _GRAPH_MEMO[key]
    else:
        cg = from_upper_bits(qs.n, bits)
        thin = [[a != b and not cg.has_edge(a, b) for b in range(cg.n)] for a in range(cg.n)]
        jeop = [[cg.adj[a] & cg.adj[b] for b in range(cg.n)] for a in range(cg.n)]
        hit = _run_search(
            cg.n, Hg.adj, thin, jeop, _h_orbit_reps(Hg), vertex_orbits(cg, perm_limit=6)
        )
        _GRAPH_MEMO[key] = hit
    if hit is None:
        return None
    inv = [0] * qs.n
    for local, p in enumerate(perm):
        inv[p] = local
    hseq, qseq = hit
    return hseq, tuple(inv[q] for q in qseq)


def find_admissible_subgraph(
    q: Union[DenseGraph, WeightMatrix],
    family: Sequence[Union[DenseGraph, SubdivisionPattern]],
    eps: Optional[Fraction] = None,
) -> Optional[AdmissibleHit]:
    """First (subset, H) of the family admitting a witness, else None.

    A None result certifies that ``q`` is admissible-free for the family.
    Family members are tried in ascending vertex count (ties in given
    order), subsets in lexicographic order.  Unweighted graphs use the
    graph predicate; weight matrices use the (H, eps)-admissibility with
    eps defaulting to 0.
    """
    if not family:
        raise ValueError("family must be nonempty")
    graphs = [_as_graph(H) for H in family]
    order = sorted(range(len(graphs)), key=lambda i: (graphs[i].n, i))
    if isinstance(q, DenseGraph):
        s = q.n
        for fi in order:
            Hg = graphs[fi]
            if Hg.n > s:
                continue
            for subset in itertools.combinations(range(s), Hg.n):
                qs = q.subgraph(subset)
                hit = _cached_graph_admissible(qs, Hg, fi)
                if hit is not None:
                    witness = _witness_from_seqs(hit, subset)
                    assert validate_graph_witness(
                        q.subgraph(subset), Hg,
                        _witness_from_seqs(hit, list(range(Hg.n))),
                    )
                    return AdmissibleHit(subset, fi, witness)
        return None
    wmat = q
    s = len(wmat)
    eps = Fraction(0) if eps is None else Fraction(eps)
    for fi in order:
        Hg = graphs[fi]
        if Hg.n > s:
            continue
        for subset in itertools.combinations(range(s), Hg.n):
            sub = [[wmat[a][b] for b in subset] for a in subset]
            witness = is_eps_admissible(sub, Hg, eps, targets=subset)
            if witness is not None:
                return AdmissibleHit(subset, fi, witness)
    return None
