"""Small dense graphs with exact density predicates and bi-clique search.

Graphs are stored as immutable bitmask adjacency rows, which keeps every
operation here a pure function and makes the exhaustive searches cheap:
neighborhood intersections, induced subgraphs and degree counts are single
integer operations.

Densities follow the convention d(G) = |E| / n**2 (not |E| / C(n,2)), and
all density values are exact ``Fraction`` objects.  The balanced empty-pair
search looks for two disjoint equal-size vertex sets with no edge between
them, i.e. a balanced bi-clique of the complement.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Sequence

from .errors import CapacityError, InputFormatError

EXACT_PAIR_CAP = 28
EXACT_SUBSET_CAP = 16
SAMPLED_SUBSETS_PER_SIZE = 10_000


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class DenseGraph:
    """Simple undirected graph as a tuple of adjacency bitmasks.

    ``adj[v]`` has bit ``u`` set iff ``uv`` is an edge.  The constructor
    enforces symmetry and an empty diagonal.
    """

    n: int
    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("vertex count must be nonnegative")
        if len(self.adj) != self.n:
            raise ValueError("adjacency length does not match vertex count")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & (1 << v):
                raise ValueError(f"self-loop at vertex {v}")
            if row & ~full:
                raise ValueError(f"adjacency row {v} mentions vertices >= n")
        for v in range(self.n):
            for u in iter_bits(self.adj[v]):
                if not self.adj[u] & (1 << v):
                    raise ValueError(f"adjacency not symmetric at ({v}, {u})")

    # -- constructors ------------------------------------------------

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "DenseGraph":
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop ({u}, {v})")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def empty(cls, n: int) -> "DenseGraph":
        return cls(n, (0,) * n)

    @classmethod
    def complete(cls, n: int) -> "DenseGraph":
        full = (1 << n) - 1
        return cls(n, tuple(full ^ (1 << v) for v in range(n)))

    @classmethod
    def cycle(cls, n: int) -> "DenseGraph":
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    # -- basic accessors ----------------------------------------------

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] & (1 << v))

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for v in range(self.n):
            higher = self.adj[v] >> (v + 1)
            for off in iter_bits(higher):
                out.append((v, v + 1 + off))
        return out

    def complement(self) -> "DenseGraph":
        full = (1 << self.n) - 1
        return DenseGraph(self.n, tuple((full ^ row) ^ (1 << v) for v, row in enumerate(self.adj)))

    def subgraph(self, vertices: Sequence[int]) -> "DenseGraph":
        """Induced subgraph, relabeled to 0..len(vertices)-1 in the given order."""
        index = {v: i for i, v in enumerate(vertices)}
        rows = [0] * len(vertices)
        for v in vertices:
            for u in iter_bits(self.adj[v]):
                if u in index:
                    rows[index[v]] |= 1 << index[u]
        return DenseGraph(len(vertices), tuple(rows))

    def relabel(self, perm: Sequence[int]) -> "DenseGraph":
        """Image of the graph under ``v -> perm[v]``."""
        rows = [0] * self.n
        for v in range(self.n):
            for u in iter_bits(self.adj[v]):
                rows[perm[v]] |= 1 << perm[u]
        return DenseGraph(self.n, tuple(rows))

    def upper_bits(self) -> int:
        """Upper-triangle edge bits packed column-major, as used by graph6."""
        bits = 0
        pos = 0
        for j in range(1, self.n):
            for i in range(j):
                bits = (bits << 1) | ((self.adj[i] >> j) & 1)
                pos += 1
        return bits


@dataclass(frozen=True)
class BicliquePair:
    """Disjoint equal-size vertex sets; here always with no edge between them."""

    a: tuple[int, ...]
    b: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.a) != len(self.b):
            raise ValueError("sides must have equal size")
        if set(self.a) & set(self.b):
            raise ValueError("sides must be disjoint")

    @property
    def size(self) -> int:
        return len(self.a)

    def to_json(self) -> dict:
        return {"A": sorted(self.a), "B": sorted(self.b)}


def verify_empty_pair(g: DenseGraph, pair: BicliquePair) -> bool:
    """Check that no edge of ``g`` joins the two sides."""
    mb = mask_of(pair.b)
    return all(not (g.adj[v] & mb) for v in pair.a)


# -- densities --------------------------------------------------------


def density(g: DenseGraph) -> Fraction:
    """Edge density |E| / n**2."""
    if g.n == 0:
        raise ValueError("density of the empty graph is undefined")
    return Fraction(g.edge_count(), g.n * g.n)


def pair_density(g: DenseGraph, a: Iterable[int], b: Iterable[int]) -> Fraction:
    """Cross density |E(A,B)| / (|A||B|) for disjoint nonempty A, B."""
    aset, bset = sorted(set(a)), sorted(set(b))
    if not aset or not bset:
        raise ValueError("both sides must be nonempty")
    if set(aset) & set(bset):
        raise ValueError("sides must be disjoint")
    mb = mask_of(bset)
    cross = sum((g.adj[v] & mb).bit_count() for v in aset)
    return Fraction(cross, len(aset) * len(bset))


# -- balanced empty pairs ----------------------------------------------


def _greedy_empty_pair(g: DenseGraph) -> BicliquePair:
    # Peel the two candidate pools: repeatedly drop the vertex with the
    # largest degree into the opposing pool until no cross edge remains.
    half = (g.n + 1) // 2
    x = set(range(half))
    y = set(range(half, g.n))
    xmask = mask_of(x)
    ymask = mask_of(y)
    while True:
        worst_v, worst_deg, worst_in_x = -1, 0, True
        for v in sorted(x):
            d = (g.adj[v] & ymask).bit_count()
            if d > worst_deg:
                worst_v, worst_deg, worst_in_x = v, d, True
        for v in sorted(y):
            d = (g.adj[v] & xmask).bit_count()
            if d > worst_deg:
                worst_v, worst_deg, worst_in_x = v, d, False
        if worst_deg == 0:
            break
        if worst_in_x:
            x.remove(worst_v)
            xmask ^= 1 << worst_v
        else:
            y.remove(worst_v)
            ymask ^= 1 << worst_v
    k = min(len(x), len(y))
    return BicliquePair(tuple(sorted(x)[:k]), tuple(sorted(y)[:k]))


def _exact_empty_pair(g: DenseGraph, stop_at: Optional[int] = None) -> BicliquePair:
    """Branch and bound over the A side.

    The state keeps the common non-neighborhood F of the current A; any
    B must be drawn from F, so min(|A|, |F|) is achievable at once and
    min(|A| + remaining, |F|) bounds every descendant.
    """
    n = g.n
    full = (1 << n) - 1
    order = sorted(range(n), key=lambda v: (g.degree(v), v))
    nonadj = [full ^ g.adj[v] ^ (1 << v) for v in range(n)]

    best_pair = _greedy_empty_pair(g)
    best = best_pair.size

    def realize(amask: int, fmask: int) -> BicliquePair:
        avs = sorted(iter_bits(amask))
        fvs = sorted(iter_bits(fmask))
        k = min(len(avs), len(fvs))
        return BicliquePair(tuple(avs[:k]), tuple(fvs[:k]))

    def dfs(idx: int, amask: int, asize: int, fmask: int) -> None:
        nonlocal best, best_pair
        if stop_at is not None and best >= stop_at:
            return
        fsize = fmask.bit_count()
        value = min(asize, fsize)
        if value > best:
            best = value
            best_pair = realize(amask, fmask)
        remaining = n - idx
        if min(asize + remaining, fsize) <= best:
            return
        if idx == n:
            return
        v = order[idx]
        vbit = 1 << v
        # include v in A
        dfs(idx + 1, amask | vbit, asize + 1, fmask & nonadj[v] & ~vbit)
        # leave v out of A (it stays available for the B side if in F)
        dfs(idx + 1, amask, asize, fmask)

    dfs(0, 0, 0, full)
    return best_pair


def max_balanced_empty_pair(
    g: DenseGraph,
    mode: str = "exact",
    cap: int = EXACT_PAIR_CAP,
    stop_at: Optional[int] = None,
) -> BicliquePair:
    """Largest balanced pair (A, B) with E(A, B) empty.

    Exact mode proves optimality (capacity-limited); greedy mode peels
    deterministically and only gives a lower bound.  ``stop_at`` lets the
    exact search return early once a pair of that size is found.
    """
    if mode == "greedy":
        return _greedy_empty_pair(g)
    if mode != "exact":
        raise ValueError(f"unknown mode {mode!r}")
    if g.n > cap:
        raise CapacityError(f"exact empty-pair search capped at {cap} vertices, got {g.n}")
    return _exact_empty_pair(g, stop_at=stop_at)


@dataclass(frozen=True)
class FullnessVerdict:
    holds: bool
    threshold: int
    witness: Optional[BicliquePair]
    exact: bool


def is_delta_full(g: DenseGraph, delta: Fraction, mode: str = "exact") -> FullnessVerdict:
    """Whether every two disjoint vertex sets of size >= ceil(delta * n) touch.

    Equivalently: the complement has no balanced bi-clique of size
    ceil(delta * n).  A greedy-mode "holds" verdict is heuristic.
    """
    delta = Fraction(delta)
    if not 0 < delta < Fraction(1, 2):
        raise ValueError("delta must lie strictly between 0 and 1/2")
    need = math.ceil(delta * g.n)
    pair = max_balanced_empty_pair(g, mode=mode, stop_at=need if mode == "exact" else None)
    if pair.size >= need:
        witness = BicliquePair(pair.a[:need], pair.b[:need])
        return FullnessVerdict(False, need, witness, mode == "exact")
    return FullnessVerdict(True, need, None, mode == "exact")


@dataclass(frozen=True)
class DensityVerdict:
    holds: bool
    witness: Optional[tuple[int, ...]]
    sampled: bool
    subsets_checked: int


def is_alpha_beta_dense(
    g: DenseGraph,
    alpha: Fraction,
    beta: Fraction,
    mode: str = "exact",
    cap: int = EXACT_SUBSET_CAP,
    trials_per_size: int = SAMPLED_SUBSETS_PER_SIZE,
    seed: int = 0,
) -> DensityVerdict:
    """Whether every induced subgraph on >= alpha * n vertices has density >= beta.

    Exact mode enumerates all qualifying subsets (capacity-limited); sampled
    mode tests seeded random subsets per size class and flags the verdict as
    probabilistic.
    """
    alpha, beta = Fraction(alpha), Fraction(beta)
    if not 0 < alpha <= 1:
        raise ValueError("alpha must lie in (0, 1]")
    if not 0 <= beta <= 1:
        raise ValueError("beta must lie in [0, 1]")
    m_min = max(1, math.ceil(alpha * g.n))

    def subset_density(vs: tuple[int, ...]) -> Fraction:
        smask = mask_of(vs)
        edges = sum((g.adj[v] & smask & ~((1 << (v + 1)) - 1)).bit_count() for v in vs)
        return Fraction(edges, len(vs) * len(vs))

    checked = 0
    if mode == "exact":
        if g.n > cap:
            raise CapacityError(f"exact subset enumeration capped at {cap} vertices, got {g.n}")
        for m in range(m_min, g.n + 1):
            for vs in itertools.combinations(range(g.n), m):
                checked += 1
                if subset_density(vs) < beta:
                    return DensityVerdict(False, vs, False, checked)
        return DensityVerdict(True, None, False, checked)
    if mode != "sampled":
        raise ValueError(f"unknown mode {mode!r}")
    rng = random.Random(seed)
    for m in range(m_min, g.n + 1):
        for _ in range(trials_per_size):
            vs = tuple(sorted(rng.sample(range(g.n), m)))
            checked += 1
            if subset_density(vs) < beta:
                return DensityVerdict(False, vs, True, checked)
    return DensityVerdict(True, None, True, checked)


def from_upper_bits(n: int, bits: int) -> DenseGraph:
    """Inverse of :meth:`DenseGraph.upper_bits`."""
    rows = [0] * n
    pos = n * (n - 1) // 2 - 1
    for j in range(1, n):
        for i in range(j):
            if (bits >> pos) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            pos -= 1
    return DenseGraph(n, tuple(rows))


# -- graph6 ------------------------------------------------------------

GRAPH6_HEADER = ">>graph6<<"


def _g6_encode_n(n: int) -> bytes:
    if n < 0:
        raise ValueError("negative vertex count")
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126, (n >> 12) + 63, ((n >> 6) & 63) + 63, (n & 63) + 63])
    if n <= 68719476735:
        return bytes([126, 126] + [((n >> (6 * k)) & 63) + 63 for k in range(5, -1, -1)])
    raise ValueError("vertex count too large for graph6")


def to_graph6(g: DenseGraph, header: bool = False) -> str:
    """Standard graph6 line (without trailing newline)."""
    nbits = g.n * (g.n - 1) // 2
    bits = g.upper_bits()
    npad = (-nbits) % 6
    bits <<= npad
    groups = []
    for k in range((nbits + npad) // 6 - 1, -1, -1):
        groups.append(((bits >> (6 * k)) & 63) + 63)
    text = _g6_encode_n(g.n).decode("ascii") + bytes(groups).decode("ascii")
    return GRAPH6_HEADER + text if header else text


def from_graph6(line: str) -> DenseGraph:
    """Parse one graph6 line (optional ``>>graph6<<`` header allowed)."""
    s = line.strip()
    if s.startswith(GRAPH6_HEADER):
        s = s[len(GRAPH6_HEADER):]
    data = [ord(c) - 63 for c in s]
    if any(d < 0 or d > 63 for d in data):
        raise InputFormatError(f"invalid graph6 character in {line!r}")
    if not data:
        raise InputFormatError("empty graph6 line")
    if data[0] != 63:
        n, rest = data[0], data[1:]
    elif len(data) >= 2 and data[1] != 63:
        if len(data) < 4:
            raise InputFormatError("truncated graph6 size")
        n = (data[1] << 12) | (data[2] << 6) | data[3]
        rest = data[4:]
    else:
        if len(data) < 8:
            raise InputFormatError("truncated graph6 size")
        n = 0
        for d in data[2:8]:
            n = (n << 6) | d
        rest = data[8:]
    nbits = n * (n - 1) // 2
    if len(rest) != (nbits + 5) // 6:
        raise InputFormatError(f"graph6 payload length mismatch for n={n}")
    bits = 0
    for d in rest:
        bits = (bits << 6) | d
    bits >>= (len(rest) * 6 - nbits)
    rows = [0] * n
    pos = nbits - 1
    for j in range(1, n):
        for i in range(j):
            if (bits >> pos) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            pos -= 1
    return DenseGraph(n, tuple(rows))
