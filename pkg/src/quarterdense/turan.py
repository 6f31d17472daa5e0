"""Weight reduction, quotient graphs, and exact simplex minimization.

This is the Turán-style half of the toolkit: complete edge-weighted
graphs with rational weights in [0, 1] are collapsed onto {0, 1/2, 1},
normalized into block-uniform structure, and projected to a
vertex-weighted quotient whose weight

    phi(Q) = sum_a phi(a)^2 + sum_{ab in E(Q)} phi(a) phi(b)

ties back to the total edge weight through an exact identity.  The
global minimum of phi(Q) over the probability simplex is computed by
enumerating support sets and solving each face's stationarity system
with fraction-free elimination; every bound asserted downstream is an
exact rational comparison.

Each rewriting step preserves the set of dangerous triples (x, y, z)
with w(xy) = 0 and w(xz) + w(yz) >= 1, never increases total weight,
and is logged in a replayable trace.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .admissible import find_admissible_subgraph
from .enumeration import canonical_form, enumerate_graphs, known_graph_count
from .errors import CapacityError
from .graphs import DenseGraph, iter_bits, to_graph6
from .subdivisions import SubdivisionPattern, partial_subdivisions

HALF = Fraction(1, 2)
ONE = Fraction(1)
ZERO = Fraction(0)
QUARTER = Fraction(1, 4)

MINIMIZE_PHI_CAP = 12


def _pair_index(k: int, i: int, j: int) -> int:
    if i > j:
        i, j = j, i
    return i * (2 * k - i - 1) // 2 + (j - i - 1)


@dataclass(frozen=True)
class WeightedCompleteGraph:
    """Complete graph on k vertices with exact rational pair weights in [0, 1]."""

    k: int
    w: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.w) != self.k * (self.k - 1) // 2:
            raise ValueError("need one weight per vertex pair")
        for x in self.w:
            if not ZERO <= x <= ONE:
                raise ValueError(f"weight {x} outside [0, 1]")

    @classmethod
    def from_function(cls, k: int, f) -> "WeightedCompleteGraph":
        return cls(k, tuple(Fraction(f(i, j)) for i in range(k) for j in range(i + 1, k)))

    @classmethod
    def constant(cls, k: int, value) -> "WeightedCompleteGraph":
        v = Fraction(value)
        return cls(k, (v,) * (k * (k - 1) // 2))

    def weight(self, i: int, j: int) -> Fraction:
        return self.w[_pair_index(self.k, i, j)]

    def total(self) -> Fraction:
        return sum(self.w, ZERO)

    def degree(self, x: int) -> Fraction:
        return sum((self.weight(x, y) for y in range(self.k) if y != x), ZERO)

    def matrix(self) -> list[list[Fraction]]:
        m = [[ZERO] * self.k for _ in range(self.k)]
        for i in range(self.k):
            for j in range(i + 1, self.k):
                m[i][j] = m[j][i] = self.weight(i, j)
        return m

    def value_set(self) -> set[Fraction]:
        """F_w: weight values outside {0, 1/2, 1}."""
        return {x for x in self.w if x not in (ZERO, HALF, ONE)}

    def replace_values(self, mapping: dict[Fraction, Fraction]) -> "WeightedCompleteGraph":
        return WeightedCompleteGraph(self.k, tuple(mapping.get(x, x) for x in self.w))

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "w": {
                f"{i},{j}": str(self.weight(i, j))
                for i in range(self.k)
                for j in range(i + 1, self.k)
            },
        }

    @classmethod
    def from_json(cls, obj: dict) -> "WeightedCompleteGraph":
        k = int(obj["k"])
        return cls.from_function(k, lambda i, j: Fraction(obj["w"][f"{i},{j}"]))


@dataclass
class PartialWeightedGraph:
    """Edge-weighted graph that may be missing edges (pre-completion input)."""

    k: int
    w: dict[tuple[int, int], Fraction]

    def __post_init__(self) -> None:
        norm = {}
        for (i, j), v in self.w.items():
            if i == j or not (0 <= i < self.k and 0 <= j < self.k):
                raise ValueError(f"bad edge ({i}, {j})")
            norm[tuple(sorted((i, j)))] = Fraction(v)
        self.w = norm

    def edge_count(self) -> int:
        return len(self.w)

    def total(self) -> Fraction:
        return sum(self.w.values(), ZERO)


def dangerous_triples(r: WeightedCompleteGraph) -> frozenset[tuple[int, int, int]]:
    """All (x, y, z), x < y, with w(xy) = 0 and w(xz) + w(yz) >= 1."""
    out = []
    for x in range(r.k):
        for y in range(x + 1, r.k):
            if r.weight(x, y) != ZERO:
                continue
            for z in range(r.k):
                if z in (x, y):
                    continue
                if r.weight(x, z) + r.weight(y, z) >= ONE:
                    out.append((x, y, z))
    return frozenset(out)


# -- reduction traces ----------------------------------------------------


@dataclass(frozen=True)
class TraceStep:
    kind: str
    detail: dict
    total_before: Fraction
    total_after: Fraction
    dangerous_before: frozenset
    dangerous_after: frozenset
    weights_after: tuple[Fraction, ...]

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "detail": {k: str(v) for k, v in self.detail.items()},
            "total_before": str(self.total_before),
            "total_after": str(self.total_after),
            "weights_after": [str(x) for x in self.weights_after],
        }


@dataclass
class ReductionTrace:
    initial: WeightedCompleteGraph
    steps: list[TraceStep] = field(default_factory=list)

    def record(self, kind: str, detail: dict, before: WeightedCompleteGraph, after: WeightedCompleteGraph) -> None:
        """Append a step, enforcing its invariants.

        Total weight never increases.  Dangerous triples are monotone for
        collapse steps only: the repair and copy moves overwrite whole
        rows and may drop sums through the rewritten vertex (their
        admissibility preservation rests on the twin argument instead).
        """
        step = TraceStep(
            kind=kind,
            detail=detail,
            total_before=before.total(),
            total_after=after.total(),
            dangerous_before=dangerous_triples(before),
            dangerous_after=dangerous_triples(after),
            weights_after=after.w,
        )
        if step.total_after > step.total_before:
            raise AssertionError(f"step {kind} increased total weight")
        if kind == "collapse" and not step.dangerous_before <= step.dangerous_after:
            raise AssertionError(f"step {kind} lost a dangerous triple")
        self.steps.append(step)

    def states(self) -> list[WeightedCompleteGraph]:
        """Initial graph followed by the graph after each step."""
        out = [self.initial]
        for st in self.steps:
            out.append(WeightedCompleteGraph(self.initial.k, st.weights_after))
        return out

    def to_json(self) -> dict:
        return {"initial": self.initial.to_json(), "steps": [s.to_json() for s in self.steps]}


# -- weight collapse (rounding onto {0, 1/2, 1}) -------------------------


def _collapse_q(r: Fraction, fset: set[Fraction]) -> Fraction:
    """Target value for rounding the r-weighted edges down.

    The candidate pool q with q in F or 1-q in F keeps every dangerous
    sum intact: any partner weight v >= 1-r satisfies 1-v <= q.
    """
    candidates = set(fset) | {ONE - v for v in fset}
    if r > HALF:
        pool = [q for q in candidates if HALF <= q < r]
        return max(pool) if pool else HALF
    pool = [q for q in candidates if q < r]
    return max(pool) if pool else ZERO


def collapse_weights(r: WeightedCompleteGraph) -> tuple[WeightedCompleteGraph, ReductionTrace]:
    """Round all weights onto {0, 1/2, 1} without losing dangerous triples.

    Each step removes one complementary value class {r, 1-r} from the
    weight set, so the loop terminates; total weight never increases.
    """
    trace = ReductionTrace(r)
    cur = r
    while True:
        fset = cur.value_set()
        if not fset:
            break
        r0 = max(fset)
        if (ONE - r0) in fset:
            count_r0 = sum(1 for x in cur.w if x == r0)
            count_c = sum(1 for x in cur.w if x == ONE - r0)
            rr = r0 if count_r0 >= count_c else ONE - r0
            q = _collapse_q(rr, fset)
            nxt = cur.replace_values({rr: q, ONE - rr: ONE - q})
            detail = {"case": 2, "r": rr, "q": q}
        else:
            q = _collapse_q(r0, fset)
            nxt = cur.replace_values({r0: q})
            detail = {"case": 1, "r": r0, "q": q}
        trace.record("collapse", detail, cur, nxt)
        if len(nxt.value_set()) > len(fset):
            raise AssertionError("collapse enlarged the value set")
        cur = nxt
    return cur, trace


# -- partition normalization ---------------------------------------------


def _copy_row(r: WeightedCompleteGraph, dst: int, src: int, keep: Iterable[int]) -> WeightedCompleteGraph:
    """Make dst's weights to everything outside ``keep`` equal to src's."""
    keep_set = set(keep) | {dst, src}
    w = list(r.w)
    for u in range(r.k):
        if u in keep_set:
            continue
        w[_pair_index(r.k, dst, u)] = r.weight(src, u)
    return WeightedCompleteGraph(r.k, tuple(w))


def _find_repair_triple(r: WeightedCompleteGraph) -> Optional[tuple[int, int, int, int]]:
    """First intransitivity of the weight-1 relation, preferring case 1.

    Returns (x, y, z, case); y is the middle vertex (w(xy)=w(yz)=1,
    w(xz)<1).  Case 1 means some endpoint has smaller weighted degree
    than y, case 2 means y has the minimum degree of the three.
    """
    degs = [r.degree(x) for x in range(r.k)]
    first_case2 = None
    for y in range(r.k):
        for x in range(r.k):
            if x == y or r.weight(x, y) != ONE:
                continue
            for z in range(x + 1, r.k):
                if z == y or z == x or r.weight(y, z) != ONE:
                    continue
                if r.weight(x, z) == ONE:
                    continue
                if degs[y] > degs[x]:
                    return (x, y, z, 1)
                if degs[y] > degs[z]:
                    return (z, y, x, 1)
                if first_case2 is None:
                    first_case2 = (x, y, z, 2)
    return first_case2


def normalize_partition(
    r: WeightedCompleteGraph,
) -> tuple[list[list[int]], WeightedCompleteGraph, ReductionTrace]:
    """Repair the weight-1 relation into an equivalence, then uniformize.

    Output classes X_1..X_s have all internal weights 1, and between any
    two classes every weight is 0 or every weight is 1/2.  The repair
    loop strictly decreases total weight, so it terminates; the copy
    operators never increase it.
    """
    for x in r.w:
        if x not in (ZERO, HALF, ONE):
            raise ValueError("normalize_partition needs weights in {0, 1/2, 1}")
    trace = ReductionTrace(r)
    cur = r
    while True:
        trip = _find_repair_triple(cur)
        if trip is None:
            break
        x, y, z, case = trip
        if case == 1:
            # y's row becomes a copy of x's; the xy edge stays weight 1.
            nxt = _copy_row(cur, y, x, keep=())
            detail = {"case": 1, "x": x, "y": y, "z": z}
        else:
            nxt = _copy_row(cur, x, y, keep=(z,))
            nxt = _copy_row(nxt, z, y, keep=(x,))
            w = list(nxt.w)
            w[_pair_index(cur.k, x, z)] = ONE
            nxt = WeightedCompleteGraph(cur.k, tuple(w))
            detail = {"case": 2, "x": x, "y": y, "z": z}
        trace.record("repair", detail, cur, nxt)
        if nxt.total() >= cur.total():
            raise AssertionError("repair step failed to decrease total weight")
        cur = nxt

    # Equivalence classes of the weight-1 relation, ordered by minimum vertex.
    parent = list(range(cur.k))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i in range(cur.k):
        for j in range(i + 1, cur.k):
            if cur.weight(i, j) == ONE:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[max(ri, rj)] = min(ri, rj)
    classes: dict[int, list[int]] = {}
    for v in range(cur.k):
        classes.setdefault(find(v), []).append(v)
    partition = [sorted(classes[k]) for k in sorted(classes)]

    # Copy operators: every class member adopts the outside-row of its
    # minimum-degree representative.
    for ci, cls in enumerate(partition):
        degs = {x: cur.degree(x) for x in cls}
        rep = min(cls, key=lambda x: (degs[x], x))
        nxt = cur
        for y in cls:
            if y != rep:
                nxt = _copy_row(nxt, y, rep, keep=cls)
        trace.record("copy", {"class": ci, "rep": rep}, cur, nxt)
        cur = nxt

    _check_block_uniform(cur, partition)
    return partition, cur, trace


def _check_block_uniform(r: WeightedCompleteGraph, partition: list[list[int]]) -> None:
    for cls in partition:
        for a, b in itertools.combinations(cls, 2):
            if r.weight(a, b) != ONE:
                raise AssertionError("class with internal weight != 1")
    for ca, cb in itertools.combinations(partition, 2):
        vals = {r.weight(a, b) for a in ca for b in cb}
        if len(vals) != 1 or vals & {ONE}:
            raise AssertionError(f"non-uniform block pair {ca} x {cb}")


def replay_trace(trace_json: dict) -> bool:
    """Re-execute a serialized trace step by step and compare weights."""
    cur = WeightedCompleteGraph.from_json(trace_json["initial"])
    for st in trace_json["steps"]:
        kind, detail = st["kind"], st["detail"]
        if kind == "collapse":
            case = int(detail["case"])
            r = Fraction(detail["r"])
            q = Fraction(detail["q"])
            mapping = {r: q} if case == 1 else {r: q, ONE - r: ONE - q}
            cur = cur.replace_values(mapping)
        elif kind == "repair":
            x, y, z = int(detail["x"]), int(detail["y"]), int(detail["z"])
            if int(detail["case"]) == 1:
                cur = _copy_row(cur, y, x, keep=())
            else:
                cur = _copy_row(cur, x, y, keep=(z,))
                cur = _copy_row(cur, z, y, keep=(x,))
                w = list(cur.w)
                w[_pair_index(cur.k, x, z)] = ONE
                cur = WeightedCompleteGraph(cur.k, tuple(w))
        elif kind == "copy":
            # Reconstruct the class from the replayed state.
            rep = int(detail["rep"])
            cls = sorted(
                {rep}
                | {u for u in range(cur.k) if u != rep and cur.weight(rep, u) == ONE}
            )
            nxt = cur
            for y in cls:
                if y != rep:
                    nxt = _copy_row(nxt, y, rep, keep=cls)
            cur = nxt
        else:
            raise ValueError(f"unknown step kind {kind!r}")
        expect = tuple(Fraction(x) for x in st["weights_after"])
        if cur.w != expect:
            return False
    return True


# -- quotient ------------------------------------------------------------


@dataclass(frozen=True)
class VertexWeightedGraph:
    graph: DenseGraph
    phi: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.phi) != self.graph.n:
            raise ValueError("one weight per vertex required")
        if any(p < 0 for p in self.phi):
            raise ValueError("vertex weights must be nonnegative")
        if sum(self.phi, ZERO) != ONE:
            raise ValueError("vertex weights must sum to 1")


def phi_weight(q: VertexWeightedGraph) -> Fraction:
    total = sum((p * p for p in q.phi), ZERO)
    for a, b in q.graph.edges():
        total += q.phi[a] * q.phi[b]
    return total


def phi_value(g: DenseGraph, phi: Sequence[Fraction]) -> Fraction:
    """phi(Q) for an explicit weight vector (no simplex validation)."""
    total = sum((p * p for p in phi), ZERO)
    for a, b in g.edges():
        total += phi[a] * phi[b]
    return total


def quotient(partition: list[list[int]], r: WeightedCompleteGraph) -> VertexWeightedGraph:
    """Vertex-weighted quotient of a block-uniform weighting.

    Classes become vertices with phi(a) = |X_a| / k; an edge means the
    between-class weight is 1/2.  The identity
    w(R) = (k^2/2) (phi(Q) - 1/k) is re-checked exactly.
    """
    _check_block_uniform(r, partition)
    s = len(partition)
    edges = []
    for a in range(s):
        for b in range(a + 1, s):
            if r.weight(partition[a][0], partition[b][0]) == HALF:
                edges.append((a, b))
    g = DenseGraph.from_edges(s, edges)
    phi = tuple(Fraction(len(cls), r.k) for cls in partition)
    q = VertexWeightedGraph(g, phi)
    expected = Fraction(r.k * r.k, 2) * (phi_weight(q) - Fraction(1, r.k))
    if r.total() != expected:
        raise AssertionError("quotient identity failed")
    return q


def complete_ize(r: PartialWeightedGraph, eps: Fraction) -> WeightedCompleteGraph:
    """Fill in missing edges at weight 1 and round the rest.

    Present edges with weight <= eps drop to 0, others move up by eps
    (clamped at 1).  Admissible subgraphs of the result at eps = 0
    remain admissible in the original at threshold eps.
    """
    eps = Fraction(eps)
    if not ZERO < eps < ONE:
        raise ValueError("eps must lie strictly between 0 and 1")

    def value(i: int, j: int) -> Fraction:
        key = (i, j) if i < j else (j, i)
        if key not in r.w:
            return ONE
        v = r.w[key]
        if v <= eps:
            return ZERO
        return min(v + eps, ONE)

    return WeightedCompleteGraph.from_function(r.k, value)


# -- exact simplex minimization ------------------------------------------


def solve_integer_system(a: list[list[int]], b: list[int]) -> Optional[list[Fraction]]:
    """Solve A x = b exactly by fraction-free (Bareiss) elimination.

    Returns None when A is singular.
    """
    n = len(a)
    m = [row[:] + [bb] for row, bb in zip(a, b)]
    prev = 1
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return None
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
        for r in range(col + 1, n):
            for c in range(col + 1, n + 1):
                m[r][c] = (m[r][c] * m[col][col] - m[r][col] * m[col][c]) // prev
            m[r][col] = 0
        prev = m[col][col]
    x: list[Fraction] = [ZERO] * n
    for r in range(n - 1, -1, -1):
        acc = Fraction(m[r][n])
        for c in range(r + 1, n):
            acc -= m[r][c] * x[c]
        x[r] = acc / m[r][r]
    return x


@dataclass(frozen=True)
class MinimizePhiResult:
    value: Fraction
    phi: tuple[Fraction, ...]
    support: tuple[int, ...]
    multiplier: Fraction
    faces_solved: int

    def to_json(self) -> dict:
        return {
            "min_phi": str(self.value),
            "phi": [str(x) for x in self.phi],
            "support": list(self.support),
            "multiplier": str(self.multiplier),
            "faces_solved": self.faces_solved,
        }


def minimize_phi(g: DenseGraph, cap: int = MINIMIZE_PHI_CAP) -> MinimizePhiResult:
    """Exact global minimum of phi over the probability simplex.

    For every nonempty support the stationarity system 2 M x = mu 1,
    sum x = 1 (M = I + A/2) is solved exactly; feasible stationary
    points cover the minimum because a minimizer is stationary on the
    relative interior of its support face, and singular faces attain
    their infimum on sub-faces, which are enumerated anyway.
    """
    s = g.n
    if s == 0:
        raise ValueError("graph must have at least one vertex")
    if s > cap:
        raise CapacityError(f"minimize_phi capped at {cap} vertices, got {s}")
    # 4M has diagonal 4 and off-diagonal 2 for edges, 0 otherwise.
    best: Optional[MinimizePhiResult] = None
    faces = 0
    for smask in range(1, 1 << s):
        sup = list(iter_bits(smask))
        m = len(sup)
        a: list[list[int]] = []
        for i in sup:
            row = [4 if j == i else (2 if g.has_edge(i, j) else 0) for j in sup]
            row.append(-1)  # -nu with nu = 2 mu
            a.append(row)
        a.append([1] * m + [0])
        rhs = [0] * m + [1]
        sol = solve_integer_system(a, rhs)
        faces += 1
        if sol is None:
            continue
        xs, nu = sol[:m], sol[m]
        if any(x < 0 for x in xs):
            continue
        phi = [ZERO] * s
        for i, x in zip(sup, xs):
            phi[i] = x
        value = phi_value(g, phi)
        if best is None or value < best.value:
            best = MinimizePhiResult(value, tuple(phi), tuple(sup), nu / 2, 0)
    assert best is not None  # singleton faces always solve
    return MinimizePhiResult(best.value, best.phi, best.support, best.multiplier, faces)


# -- tiny exact polynomials (for identity checks) -------------------------


class Poly:
    """Sparse multivariate polynomial with Fraction coefficients."""

    __slots__ = ("c",)

    def __init__(self, c: Optional[dict] = None):
        self.c = {k: v for k, v in (c or {}).items() if v != 0}

    @classmethod
    def var(cls, i: int, n: int) -> "Poly":
        e = [0] * n
        e[i] = 1
        return cls({tuple(e): Fraction(1)})

    @classmethod
    def const(cls, v, n: int) -> "Poly":
        return cls({(0,) * n: Fraction(v)})

    def __add__(self, o: "Poly") -> "Poly":
        c = dict(self.c)
        for k, v in o.c.items():
            c[k] = c.get(k, Fraction(0)) + v
        return Poly(c)

    def __sub__(self, o: "Poly") -> "Poly":
        c = dict(self.c)
        for k, v in o.c.items():
            c[k] = c.get(k, Fraction(0)) - v
        return Poly(c)

    def __mul__(self, o: "Poly") -> "Poly":
        c: dict = {}
        for k1, v1 in self.c.items():
            for k2, v2 in o.c.items():
                k = tuple(x + y for x, y in zip(k1, k2))
                c[k] = c.get(k, Fraction(0)) + v1 * v2
        return Poly(c)

    def scale(self, v) -> "Poly":
        return Poly({k: val * Fraction(v) for k, val in self.c.items()})

    def is_zero(self) -> bool:
        return not self.c


def random_weighting(k: int, seed: int) -> WeightedCompleteGraph:
    """Seeded rational weighting mixing the special values and generic ones.

    Mass on 0, 1/2 and 1 keeps zero-admissibility and the dangerous-triple
    machinery exercised; the rest are small-denominator rationals.
    """
    import random as _random

    rng = _random.Random(seed)

    def draw() -> Fraction:
        u = rng.random()
        if u < 0.20:
            return ZERO
        if u < 0.35:
            return HALF
        if u < 0.50:
            return ONE
        den = rng.randrange(2, 13)
        return Fraction(rng.randrange(0, den + 1), den)

    return WeightedCompleteGraph(k, tuple(draw() for _ in range(k * (k - 1) // 2)))


# -- verification reports --------------------------------------------------


@dataclass
class VerificationReport:
    scope: str
    graph_count: int = 0
    admissible_free_count: int = 0
    min_phi: Optional[str] = None
    extremal_graphs: list = field(default_factory=list)
    violations: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "scope": self.scope,
            "graph_count": self.graph_count,
            "admissible_free_count": self.admissible_free_count,
            "min_phi": self.min_phi,
            "extremal_graphs": self.extremal_graphs,
            "violations": self.violations,
            "details": self.details,
        }


def default_family() -> list[SubdivisionPattern]:
    return partial_subdivisions(5, 8)


def _check_enumeration(s: int, graphs: list[DenseGraph], report: VerificationReport) -> None:
    golden = known_graph_count(s)
    if golden is not None and len(graphs) != golden:
        report.violations.append(
            {"check": "enumeration", "n": s, "got": len(graphs), "expected": golden}
        )


_SWEEP_FAMILY: Optional[list] = None


def _sweep_init(family) -> None:
    global _SWEEP_FAMILY
    _SWEEP_FAMILY = family


def _sweep_graph(adj: tuple[int, ...]) -> Optional[str]:
    """Worker body: graph6 of the graph if admissible-free, else None."""
    g = DenseGraph(len(adj), adj)
    hit = find_admissible_subgraph(g, _SWEEP_FAMILY)
    return to_graph6(g) if hit is None else None


def admissible_free_graphs(
    s: int, family: Sequence, workers: int = 1
) -> tuple[list[DenseGraph], list[DenseGraph]]:
    """(all graphs on s vertices, the admissible-free ones)."""
    graphs = enumerate_graphs(s)
    family = list(family)
    if workers <= 1:
        _sweep_init(family)
        free = [g for g in graphs if _sweep_graph(g.adj) is not None]
        return graphs, free
    from concurrent.futures import ProcessPoolExecutor

    free = []
    with ProcessPoolExecutor(
        max_workers=workers, initializer=_sweep_init, initargs=(family,)
    ) as pool:
        for g, tag in zip(graphs, pool.map(_sweep_graph, [g.adj for g in graphs], chunksize=256)):
            if tag is not None:
                free.append(g)
    return graphs, free


def verify_prop_quarter(
    s: int, family: Optional[Sequence] = None, workers: int = 1
) -> VerificationReport:
    """Every admissible-free graph on s vertices has min phi >= 1/4.

    Exact rational comparison; the report lists the smallest minimum and
    the graphs attaining it.
    """
    if not 1 <= s <= 7:
        raise CapacityError(f"prop-quarter sweep supports 1 <= s <= 7, got {s}")
    family = list(family) if family is not None else default_family()
    report = VerificationReport(scope=f"prop-quarter-s{s}")
    graphs, free = admissible_free_graphs(s, family, workers=workers)
    _check_enumeration(s, graphs, report)
    report.graph_count = len(graphs)
    report.admissible_free_count = len(free)
    best: Optional[Fraction] = None
    extremal: list[str] = []
    for g in free:
        res = minimize_phi(g)
        if res.value < QUARTER:
            report.violations.append(
                {"check": "min-phi", "graph6": to_graph6(g), "min_phi": str(res.value)}
            )
        if best is None or res.value < best:
            best = res.value
            extremal = [to_graph6(g)]
        elif res.value == best:
            extremal.append(to_graph6(g))
    report.min_phi = str(best) if best is not None else None
    report.extremal_graphs = extremal
    return report


def verify_claim_s8(family: Optional[Sequence] = None, workers: int = 1) -> VerificationReport:
    """No admissible-free graph exists on 8 vertices."""
    family = list(family) if family is not None else default_family()
    report = VerificationReport(scope="s8")
    graphs, free = admissible_free_graphs(8, family, workers=workers)
    _check_enumeration(8, graphs, report)
    report.graph_count = len(graphs)
    report.admissible_free_count = len(free)
    for g in free:
        report.violations.append({"check": "admissible-free-at-8", "graph6": to_graph6(g)})
    return report


# -- observation checks ----------------------------------------------------


def has_two_neighboring_edges(g: DenseGraph) -> bool:
    return any(g.degree(v) >= 2 for v in range(g.n))


def has_two_disjoint_edges(g: DenseGraph) -> bool:
    for u, v in g.edges():
        excl = (1 << u) | (1 << v)
        for a, b in g.edges():
            if not ((1 << a) | (1 << b)) & excl:
                return True
    return False


def has_cycle_of_length(g: DenseGraph, length: int) -> bool:
    """Whether g contains a (not necessarily induced) cycle on ``length`` vertices."""
    if length < 3 or length > g.n:
        return False
    for subset in itertools.combinations(range(g.n), length):
        start = subset[0]
        rest = subset[1:]
        for perm in itertools.permutations(rest):
            cyc = (start,) + perm
            if all(g.has_edge(cyc[i], cyc[(i + 1) % length]) for i in range(length)):
                return True
    return False


def _claim17_identities() -> bool:
    """(ac+bd) - (ad+bc) = (b-a)(d-c) and (ab+cd) - (ac+bd) = (c-b)(d-a)."""
    n = 4
    a, b, c, d = (Poly.var(i, n) for i in range(4))
    first = (a * c + b * d) - (a * d + b * c) - (b - a) * (d - c)
    second = (a * b + c * d) - (a * c + b * d) - (c - b) * (d - a)
    return first.is_zero() and second.is_zero()


def verify_observations(family: Optional[Sequence] = None, workers: int = 1) -> VerificationReport:
    """Exhaustive finite-scope checks of the structural observations.

    Covers: the 5-vertex admissibility dichotomy, forbidden bipartite
    configurations, the complete/anticomplete 4-set shape, the complement
    degree bound at 7 vertices, the four-variable product inequality, and
    the cycle-forces-quarter bound on 7 vertices.
    """
    family = list(family) if family is not None else default_family()
    report = VerificationReport(scope="observations")
    k5 = DenseGraph.complete(5)

    # Obs-12 direction: missing two neighboring edges or two disjoint
    # edges forces K5-admissibility.
    from .admissible import is_H_admissible

    g5 = enumerate_graphs(5)
    _check_enumeration(5, g5, report)
    adm_count = 0
    for g in g5:
        adm = is_H_admissible(g, k5) is not None
        if adm:
            adm_count += 1
        if not (has_two_neighboring_edges(g) and has_two_disjoint_edges(g)) and not adm:
            report.violations.append({"check": "obs-two-edge-types", "graph6": to_graph6(g)})
    report.details["k5_admissible_5graphs"] = adm_count
    report.details["admissible_free_5graphs"] = len(g5) - adm_count

    free_by_s: dict[int, list[DenseGraph]] = {}
    for s in (5, 6, 7):
        graphs, free = admissible_free_graphs(s, family, workers=workers)
        _check_enumeration(s, graphs, report)
        free_by_s[s] = free
    report.details["admissible_free_counts"] = {s: len(v) for s, v in free_by_s.items()}
    report.graph_count = sum(known_graph_count(s) or 0 for s in (5, 6, 7))
    report.admissible_free_count = sum(len(v) for v in free_by_s.values())

    # Forbidden (a, b, A) configurations inside admissible-free graphs.
    for s, frees in free_by_s.items():
        for g in frees:
            for a, b in itertools.permutations(range(g.n), 2):
                others = [v for v in range(g.n) if v not in (a, b)]
                for sub in itertools.combinations(others, 3):
                    am = sum(1 << v for v in sub)
                    a_edges = g.adj[a] & am
                    b_edges = g.adj[b] & am
                    cfg1 = a_edges == 0 and b_edges == 0
                    cfg2 = a_edges == 0 and b_edges == am
                    cfg3 = g.has_edge(a, b) and a_edges == am and b_edges == am
                    if cfg1 or cfg2 or cfg3:
                        report.violations.append(
                            {
                                "check": "obs-bipartite-config",
                                "graph6": to_graph6(g),
                                "a": a,
                                "b": b,
                                "A": list(sub),
                            }
                        )

    # Complete/anticomplete 4-sets must induce C4 or P4.
    c4_key = canonical_form(DenseGraph.cycle(4))[0]
    p4_key = canonical_form(DenseGraph.from_edges(4, [(0, 1), (1, 2), (2, 3)]))[0]
    for s, frees in free_by_s.items():
        for g in frees:
            for v in range(g.n):
                others = [u for u in range(g.n) if u != v]
                for sub in itertools.combinations(others, 4):
                    am = sum(1 << u for u in sub)
                    inter = g.adj[v] & am
                    if inter != 0 and inter != am:
                        continue
                    key = canonical_form(g.subgraph(sub))[0]
                    if key not in (c4_key, p4_key):
                        report.violations.append(
                            {
                                "check": "obs-four-set-shape",
                                "graph6": to_graph6(g),
                                "v": v,
                                "A": list(sub),
                            }
                        )

    # Complement degree bound at s = 7.
    for g in free_by_s[7]:
        comp = g.complement()
        if any(comp.degree(v) > 4 for v in range(7)):
            report.violations.append({"check": "obs-complement-degree", "graph6": to_graph6(g)})

    # Product inequality on the 1/20 grid plus exact factorizations.
    if not _claim17_identities():
        report.violations.append({"check": "product-inequality-identities"})
    step = Fraction(1, 20)
    vals = [step * i for i in range(21)]
    grid_checked = 0
    for a, b, c, d in itertools.combinations_with_replacement(vals, 4):
        grid_checked += 1
        if not (a * d + b * c <= a * c + b * d <= a * b + c * d):
            report.violations.append(
                {"check": "product-inequality", "point": [str(x) for x in (a, b, c, d)]}
            )
    report.details["product_inequality_grid_points"] = grid_checked

    # Any 7-vertex graph carrying a 6- or 7-cycle has min phi >= 1/4,
    # and admissible-free 7-vertex graphs always carry one.
    g7 = enumerate_graphs(7)
    free7_keys = {g.adj for g in free_by_s[7]}
    with_cycle = 0
    for g in g7:
        cyc = has_cycle_of_length(g, 7) or has_cycle_of_length(g, 6)
        if cyc:
            with_cycle += 1
            if minimize_phi(g).value < QUARTER:
                report.violations.append(
                    {"check": "cycle-quarter-bound", "graph6": to_graph6(g)}
                )
        elif g.adj in free7_keys:
            report.violations.append(
                {"check": "admissible-free-7-has-long-cycle", "graph6": to_graph6(g)}
            )
    report.details["7graphs_with_long_cycle"] = with_cycle
    return report


def verify_clique_partition_bound(t: int, s: int) -> VerificationReport:
    """Disjoint unions of at most t-1 cliques on s vertices.

    Checks the exact split identity
    phi(Q) = 1/2 sum phi(i)^2 + 1/2 sum_blocks (block sum)^2
    and the bound min phi >= 1/(2s) + 1/(2(t-1)).
    """
    if not 3 <= t <= 5:
        raise CapacityError(f"t must be in [3, 5], got {t}")
    if s > 10:
        raise CapacityError(f"clique-partition bound capped at s = 10, got {s}")
    report = VerificationReport(scope=f"clique-bound-t{t}-s{s}")
    bound = Fraction(1, 2 * s) + Fraction(1, 2 * (t - 1))

    def size_partitions(total: int, parts: int, minimum: int = 1):
        if parts == 1:
            if total >= minimum:
                yield (total,)
            return
        for first in range(minimum, total // parts + 1):
            for rest in size_partitions(total - first, parts - 1, first):
                yield (first,) + rest

    checked = 0
    for nblocks in range(1, t):
        for sizes in size_partitions(s, nblocks):
            checked += 1
            blocks = []
            at = 0
            edges = []
            for size in sizes:
                blk = list(range(at, at + size))
                at += size
                blocks.append(blk)
                edges.extend(itertools.combinations(blk, 2))
            g = DenseGraph.from_edges(s, edges)

            # phi(Q) == 1/2 sum phi_i^2 + 1/2 sum_blocks (sum phi)^2 as polynomials
            xs = [Poly.var(i, s) for i in range(s)]
            lhs = Poly({})
            for i in range(s):
                lhs = lhs + xs[i] * xs[i]
            for a, b in g.edges():
                lhs = lhs + xs[a] * xs[b]
            rhs = Poly({})
            for i in range(s):
                rhs = rhs + (xs[i] * xs[i]).scale(HALF)
            for blk in blocks:
                tot = Poly({})
                for v in blk:
                    tot = tot + xs[v]
                rhs = rhs + (tot * tot).scale(HALF)
            if not (lhs - rhs).is_zero():
                report.violations.append({"check": "split-identity", "sizes": list(sizes)})

            res = minimize_phi(g)
            if res.value < bound:
                report.violations.append(
                    {
                        "check": "clique-bound",
                        "sizes": list(sizes),
                        "min_phi": str(res.value),
                        "bound": str(bound),
                    }
                )
    report.graph_count = checked
    report.details["bound"] = str(bound)
    return report
