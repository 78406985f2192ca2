"""Counting certificates and C8 machinery for subgraphs of Wenger graphs.

The pipeline turns three facts into executable checks, all in exact
arithmetic (integers and rationals; square roots compared by squaring,
never by floating point):

* cherries (paths point-line-point' .. here point with two surviving line
  incidences from distinct classes) counted two ways, once from point
  degrees and once plane by plane, must agree;
* convexity gives m^2/(2 q^5) - m/2 as a lower bound on the cherry count;
* a C4-free q x q bipartite graph has at most q^(3/2) + q edges
  (Kovari-Sos-Turan), capping each per-plane auxiliary graph of a C8-free
  subgraph.

Combining the chain yields B(q), the largest edge count not excluded for a
C8-free subgraph, and the auxiliary C4 route constructively produces an
explicit 8-cycle witness from any surviving-crossing rectangle.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import combinations
from math import comb, isqrt, log
from typing import Optional, Sequence

from .bipartite import (
    FOUND,
    INCONCLUSIVE,
    NONE,
    BipartiteGraph,
    CycleSearch,
    enumerate_cycles_of_length,
    exists_path_of_length,
    find_c4_small,
    find_cycle_of_length,
)
from .rng import Stream, derive_seed
from .wenger import EdgeMask, PlaneId, WengerGraph

# extraction statuses
EX_FOUND_AUX = "found"
EX_FOUND_GENERIC = "found_generic"
EX_NOT_FOUND_AUX = "not_found_auxiliary"
EX_NOT_FOUND = "not_found"
EX_INCONCLUSIVE = "inconclusive"

MODE_AUX_ONLY = "auxiliaryOnly"
MODE_AUX_THEN_GENERIC = "auxiliaryThenGeneric"


# -- cherry counts ------------------------------------------------------


def cherry_count_degrees(host: WengerGraph, mask: EdgeMask) -> int:
    """Sum over points of C(degree, 2), from the degree side."""
    q = host.q
    degs = [0] * host.n_points
    for eid in mask.iter_edges():
        degs[eid // q] += 1
    return sum(d * (d - 1) // 2 for d in degs)


def _plane_survey(host: WengerGraph, mask: EdgeMask) -> tuple[int, int]:
    """(total surviving crossings, max per-plane count) over all class pairs.

    Walks every plane of every unordered class pair through the crossing
    tables; each surviving crossing is one cherry, so the total must equal
    the degree-side count.
    """
    q = host.q
    contains = mask.contains
    total = 0
    max_plane = 0
    for i, j in host.class_pairs():
        for _, _, cells in host.crossing_table(i, j):
            count = 0
            for _, _, x in cells:
                base = x * q
                if contains(base + i) and contains(base + j):
                    count += 1
            total += count
            if count > max_plane:
                max_plane = count
    return total, max_plane


def cherry_count_planes(host: WengerGraph, mask: EdgeMask) -> int:
    """Cherry count summed plane by plane over unordered class pairs."""
    return _plane_survey(host, mask)[0]


def convexity_lower_bound(m: int, q: int) -> Fraction:
    """Exact rational m^2/(2 q^5) - m/2."""
    if m < 0:
        raise ValueError("edge count cannot be negative")
    return Fraction(m * m, 2 * q**5) - Fraction(m, 2)


# -- the Kovari-Sos-Turan cap, exactly ---------------------------------


def _ceil_sqrt(n: int) -> int:
    r = isqrt(n)
    return r if r * r == n else r + 1


def kst_cap_int(q: int) -> int:
    """Smallest integer upper bound on q^(3/2) + q."""
    return _ceil_sqrt(q**3) + q


def kst_cap_value(q: int, bits: int = 60) -> Fraction:
    """q^(3/2) + q as a Fraction: exact for square q, else rounded up.

    The directed rounding keeps the value a true upper bound, within
    2^-bits of the real number.
    """
    r = isqrt(q)
    if r * r == q:
        return Fraction(r**3 + q)
    s = isqrt(q << (2 * bits))
    return q * Fraction(s + 1, 1 << bits) + q


def aux_edges_within_cap(edge_count: int, q: int) -> bool:
    """Exact check edge_count <= q^(3/2) + q (square both sides)."""
    d = edge_count - q
    return d <= 0 or d * d <= q**3


def kst_cap_total_value(q: int, bits: int = 60) -> Fraction:
    """C(q,2) * q^3 * (q^(3/2) + q), exact or rounded up as above."""
    return comb(q, 2) * q**3 * kst_cap_value(q, bits)


def kst_cap_total_int(q: int) -> int:
    """Smallest integer upper bound on the summed cap."""
    c = comb(q, 2) * q**4
    return c + _ceil_sqrt(c * c * q)


def psi_within_total_cap(psi: int, q: int) -> bool:
    """Exact check psi <= C(q,2) q^3 (q^(3/2) + q)."""
    c = comb(q, 2) * q**4  # both the rational part and the sqrt coefficient
    d = psi - c
    return d <= 0 or d * d <= c * c * q


def c8free_upper_bound(q: int) -> int:
    """B(q): the largest integer m with m^2/(2 q^5) - m/2 within the cap.

    Solved by a float guess at the quadratic root, then an exact scan to
    the true threshold, so the result never inherits rounding error.
    """
    if q < 2:
        raise ValueError("need q >= 2")
    c = comb(q, 2) * q**4

    def ok(m: int) -> bool:
        lhs = convexity_lower_bound(m, q) - c
        return lhs <= 0 or lhs * lhs <= c * c * q

    total_float = c + c * q**0.5
    disc = q**10 + 8 * q**5 * total_float
    m = int((q**5 + disc**0.5) / 2) + 2
    while not ok(m):
        m -= 1
    while ok(m + 1):
        m += 1
    return m


def upper_bound_table(q_min: int, q_max: int) -> list[tuple[int, int, Fraction]]:
    """Rows (q, B(q), B(q)/q^6) for q in [q_min, q_max]."""
    rows = []
    for q in range(q_min, q_max + 1):
        b = c8free_upper_bound(q)
        rows.append((q, b, Fraction(b, q**6)))
    return rows


def loglog_slope(points: Sequence[tuple[int, int]]) -> float:
    """Least-squares slope of log(y) against log(x)."""
    xs = [log(x) for x, _ in points]
    ys = [log(y) for _, y in points]
    n = len(xs)
    mx = sum(xs) / n
    my = sum(ys) / n
    num = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    den = sum((x - mx) ** 2 for x in xs)
    return num / den


# -- reports -------------------------------------------------------------


@dataclass(frozen=True)
class CertificateReport:
    """All counting checks for one subgraph, with exact bound values."""

    q: int
    m: int
    psi_degrees: int
    psi_planes: int
    lower_bound: Fraction
    kst_cap_total: Fraction
    max_aux_edges: int
    upper_bound: int
    verdicts: dict[str, bool] = dc_field(default_factory=dict)

    @property
    def verdict(self) -> bool:
        return all(self.verdicts.values())

    def csv_row(self) -> str:
        lb = self.lower_bound
        return (
            f"{self.q},{self.m},{self.psi_degrees},{lb.numerator},{lb.denominator},"
            f"{kst_cap_total_int(self.q)},{self.max_aux_edges},"
            f"{'pass' if self.verdict else 'fail'}"
        )


CSV_REPORT_HEADER = "q,m,psi,lower_bound_num,lower_bound_den,kst_cap_total,max_aux_edges,verdict"


def certificate_report(host: WengerGraph, mask: EdgeMask, expect_c8_free: bool = False) -> CertificateReport:
    """Run the full counting pipeline on one subgraph.

    The cap-based verdicts only have to hold for C8-free subgraphs; they
    are always computed, but only folded into the overall verdict when
    `expect_c8_free` is set.
    """
    q = host.q
    m = len(mask)
    psi_d = cherry_count_degrees(host, mask)
    psi_p, max_aux = _plane_survey(host, mask)
    lb = convexity_lower_bound(m, q)
    verdicts = {
        "psi_identity": psi_d == psi_p,
        "convexity_le_psi": lb <= psi_d,
    }
    if expect_c8_free:
        verdicts["aux_within_cap"] = aux_edges_within_cap(max_aux, q)
        verdicts["psi_within_total_cap"] = psi_within_total_cap(psi_d, q)
        verdicts["m_le_upper_bound"] = m <= c8free_upper_bound(q)
    return CertificateReport(
        q=q,
        m=m,
        psi_degrees=psi_d,
        psi_planes=psi_p,
        lower_bound=lb,
        kst_cap_total=kst_cap_total_value(q),
        max_aux_edges=max_aux,
        upper_bound=c8free_upper_bound(q),
        verdicts=verdicts,
    )


# -- the C4 -> C8 lift ----------------------------------------------------


def validate_c8_in_subgraph(host: WengerGraph, mask: EdgeMask, witness: Sequence[int]) -> bool:
    """Independent validator: witness is a simple 8-cycle surviving in mask."""
    if len(witness) != 8 or len(set(witness)) != 8:
        return False
    n_pts = host.n_points
    for idx, v in enumerate(witness):
        w = witness[(idx + 1) % 8]
        if (v < n_pts) == (w < n_pts):
            return False
        p, line = (v, w - n_pts) if v < n_pts else (w, v - n_pts)
        cls = host.line_class(line)
        if host.line_through_index(p, cls) != line:
            return False
        if not mask.contains(host.edge_index(p, cls)):
            return False
    return True


def lift_c4_to_c8(
    host: WengerGraph,
    mask: EdgeMask,
    i: int,
    j: int,
    plane: PlaneId,
    c4: Sequence[int],
) -> tuple[int, ...]:
    """Turn a C4 of the (i, j, plane) auxiliary graph into an 8-cycle witness.

    The two class-i lines and two class-j lines of the rectangle meet in
    four points, pairwise distinct because same-class lines are parallel
    and distinct; the eight incidences at those points are exactly the
    auxiliary edges of the rectangle, hence survive in the subgraph.
    Returns global vertex ids (points then host.n_points + line).
    """
    if i > j:
        i, j = j, i
    lefts = host.lines_in_plane(plane, i)
    rights = host.lines_in_plane(plane, j)
    q = host.q
    if len(c4) != 4 or not (c4[0] < q <= c4[1] and c4[2] < q <= c4[3]):
        raise ValueError(f"malformed auxiliary C4 witness {c4!r}")
    l_a, l_b = lefts[c4[0]], lefts[c4[2]]
    m_a, m_b = rights[c4[1] - q], rights[c4[3] - q]
    if l_a == l_b or m_a == m_b:
        raise ValueError("auxiliary C4 must use two distinct lines per class")

    def meet(la: int, lb: int) -> int:
        x = host.intersection_point(la, lb)
        assert x is not None  # coplanar lines from distinct classes
        return host.point_index(x)

    x_aa, x_ab = meet(l_a, m_a), meet(l_a, m_b)
    x_ba, x_bb = meet(l_b, m_a), meet(l_b, m_b)
    points = (x_aa, x_ab, x_ba, x_bb)
    if len(set(points)) != 4:
        raise ValueError("intersection points collapsed; input was not a rectangle")
    for x in points:
        for cls in (i, j):
            if not mask.contains(host.edge_index(x, cls)):
                raise ValueError("auxiliary C4 incidence missing from subgraph")
    off = host.n_points
    witness = (
        off + l_a,
        x_aa,
        off + m_a,
        x_ba,
        off + l_b,
        x_bb,
        off + m_b,
        x_ab,
    )
    if not validate_c8_in_subgraph(host, mask, witness):
        raise AssertionError("lifted witness failed independent validation")
    return witness


# -- extraction -----------------------------------------------------------


@dataclass(frozen=True)
class C8Extraction:
    """Result of hunting for an 8-cycle in a subgraph."""

    status: str
    witness: Optional[tuple[int, ...]]
    provenance: Optional[tuple] = None  # (i, j, plane rank, auxiliary C4)
    expansions: int = 0


def _aux_graph_from_cells(
    host: WengerGraph, mask: EdgeMask, i: int, j: int, cells
) -> BipartiteGraph:
    q = host.q
    contains = mask.contains
    edges = []
    for lp, rp, x in cells:
        base = x * q
        if contains(base + i) and contains(base + j):
            edges.append((lp, rp))
    return BipartiteGraph.from_edges(q, q, edges)


def extract_c8(
    host: WengerGraph,
    mask: EdgeMask,
    mode: str = MODE_AUX_THEN_GENERIC,
    generic_budget: Optional[int] = None,
) -> C8Extraction:
    """Locate an 8-cycle, auxiliary rectangles first, then a generic search.

    The auxiliary scan only sees 8-cycles whose lines split 2+2 across two
    classes, so a miss there is not a proof of C8-freeness; the generic
    fallback (when requested) settles the rest.  Scan order is class pairs
    lexicographic, planes by representative rank, so provenance is
    deterministic.
    """
    if mode not in (MODE_AUX_ONLY, MODE_AUX_THEN_GENERIC):
        raise ValueError(f"unknown mode {mode!r}")
    for i, j in host.class_pairs():
        table = host.crossing_table(i, j)
        for rank, (_, _, cells) in enumerate(table):
            aux = _aux_graph_from_cells(host, mask, i, j, cells)
            c4 = find_c4_small(aux)
            if c4 is not None:
                plane = host.plane_from_rank(i, j, rank)
                witness = lift_c4_to_c8(host, mask, i, j, plane, c4)
                return C8Extraction(EX_FOUND_AUX, witness, (i, j, rank, c4))
    if mode == MODE_AUX_ONLY:
        return C8Extraction(EX_NOT_FOUND_AUX, None)
    search = find_cycle_of_length(mask.to_bipartite(host), 8, budget=generic_budget)
    if search.status == FOUND:
        return C8Extraction(EX_FOUND_GENERIC, search.witness, None, search.expansions)
    if search.status == INCONCLUSIVE:
        return C8Extraction(EX_INCONCLUSIVE, None, None, search.expansions)
    return C8Extraction(EX_NOT_FOUND, None, None, search.expansions)


# -- C8-free construction and verification --------------------------------


@dataclass(frozen=True)
class C8FreeVerification:
    """Two-sided verdict on claimed C8-freeness."""

    aux_c4_free: bool
    violation: Optional[tuple] = None  # (i, j, plane rank, auxiliary C4)
    generic_status: str = NONE  # NONE / FOUND / INCONCLUSIVE / "skipped"
    generic_witness: Optional[tuple[int, ...]] = None

    @property
    def certified_free(self) -> bool:
        return self.aux_c4_free and self.generic_status == NONE


def verify_c8_free(
    host: WengerGraph,
    mask: EdgeMask,
    run_generic: bool = True,
    generic_budget: Optional[int] = None,
) -> C8FreeVerification:
    """Necessary-condition scan (auxiliary C4-freeness) plus generic search.

    Auxiliary C4-freeness is implied by C8-freeness but does not imply it;
    only the generic phase can fully certify.
    """
    for i, j in host.class_pairs():
        table = host.crossing_table(i, j)
        for rank, (_, _, cells) in enumerate(table):
            aux = _aux_graph_from_cells(host, mask, i, j, cells)
            c4 = find_c4_small(aux)
            if c4 is not None:
                return C8FreeVerification(False, (i, j, rank, c4), "skipped")
    if not run_generic:
        return C8FreeVerification(True, None, "skipped")
    search = find_cycle_of_length(mask.to_bipartite(host), 8, budget=generic_budget)
    return C8FreeVerification(True, None, search.status, search.witness)


ORDER_RANDOM = "random"
ORDER_CLASS_ROUND_ROBIN = "classRoundRobin"


@dataclass(frozen=True)
class GreedyResult:
    mask: EdgeMask
    report: CertificateReport
    rejected: int
    budget_rejections: int


def greedy_c8free_subgraph(
    host: WengerGraph,
    seed: int,
    order: str = ORDER_RANDOM,
    per_edge_budget: Optional[int] = None,
) -> GreedyResult:
    """Grow a certified C8-free subgraph by insert-only edge screening.

    An edge is accepted iff no simple 7-edge path already joins its
    endpoints; a blown per-edge search budget rejects conservatively, so
    the output stays certified C8-free either way.
    """
    q = host.q
    eids = list(range(host.n_edges))
    if order == ORDER_RANDOM:
        Stream(seed).shuffle(eids)
    elif order == ORDER_CLASS_ROUND_ROBIN:
        per_class: list[list[int]] = [[eid for eid in eids if eid % q == cls] for cls in range(q)]
        for cls, bucket in enumerate(per_class):
            Stream(derive_seed(seed, cls)).shuffle(bucket)
        eids = [
            bucket[r]
            for r in range(host.n_points)
            for bucket in per_class
        ]
    else:
        raise ValueError(f"unknown insertion order {order!r}")
    n_pts = host.n_points
    adj: list[list[int]] = [[] for _ in range(n_pts + host.n_lines)]
    mask = EdgeMask.empty(host)
    rejected = 0
    budget_rejections = 0
    for eid in eids:
        point, line = host.edge_endpoints(eid)
        u, v = point, n_pts + line
        status = exists_path_of_length(adj, u, v, 7, budget=per_edge_budget)
        if status == NONE:
            mask.add(eid)
            adj[u].append(v)
            adj[v].append(u)
        else:
            rejected += 1
            if status == INCONCLUSIVE:
                budget_rejections += 1
    report = certificate_report(host, mask, expect_c8_free=True)
    return GreedyResult(mask, report, rejected, budget_rejections)


# -- exact maximum C8-free subgraphs (tiny hosts) --------------------------


@dataclass(frozen=True)
class ExactMaxResult:
    value: int
    witness_edges: tuple[tuple[int, int], ...]
    method: str
    cycles_considered: int


def _edge_list(graph: BipartiteGraph) -> list[tuple[int, int]]:
    return list(graph.edges())


def exact_max_c8free(graph: BipartiteGraph, method: str = "hitting-set") -> ExactMaxResult:
    """Exact maximum edge count of a C8-free spanning subgraph.

    method "exhaustive": top-down subset sweep, each candidate checked by
    the generic cycle search (feasible to ~16 edges).
    method "hitting-set": enumerate all 8-cycles once, then branch and
    bound a minimum edge hitting set; the maximum is m minus that, since a
    subgraph's 8-cycles are exactly the host's surviving ones.
    The winning subgraph is re-verified C8-free before returning.
    """
    edges = _edge_list(graph)
    m = len(edges)
    if m > 40:
        raise ValueError(f"host has {m} edges, beyond the exact-search guard")
    if method == "exhaustive":
        if m > 16:
            raise ValueError("exhaustive sweep is guarded to 16 edges")
        result = _exact_max_exhaustive(graph, edges)
    elif method == "hitting-set":
        result = _exact_max_hitting(graph, edges)
    else:
        raise ValueError(f"unknown method {method!r}")
    check = find_cycle_of_length(
        BipartiteGraph.from_edges(graph.n_left, graph.n_right, result.witness_edges), 8
    )
    if check.status != NONE:
        raise AssertionError("claimed extremal subgraph contains an 8-cycle")
    return result


def _exact_max_exhaustive(graph: BipartiteGraph, edges: list[tuple[int, int]]) -> ExactMaxResult:
    m = len(edges)
    for size in range(m, -1, -1):
        for subset in combinations(range(m), size):
            sub = BipartiteGraph.from_edges(
                graph.n_left, graph.n_right, [edges[e] for e in subset]
            )
            if find_cycle_of_length(sub, 8).status == NONE:
                return ExactMaxResult(
                    size, tuple(edges[e] for e in subset), "exhaustive", 0
                )
    raise AssertionError("unreachable: the empty subgraph is C8-free")


def _exact_max_hitting(graph: BipartiteGraph, edges: list[tuple[int, int]]) -> ExactMaxResult:
    m = len(edges)
    index = {e: idx for idx, e in enumerate(edges)}
    cycles, status = enumerate_cycles_of_length(graph, 8)
    if status == INCONCLUSIVE:
        raise AssertionError("unbudgeted enumeration cannot be inconclusive")
    masks = []
    for cyc in cycles:
        bits = 0
        for idx, v in enumerate(cyc):
            w = cyc[(idx + 1) % len(cyc)]
            l, r = (v, w - graph.n_left) if graph.is_left(v) else (w, v - graph.n_left)
            bits |= 1 << index[(l, r)]
        masks.append(bits)
    best_size, best_removed = _min_hitting_set(masks, m)
    witness = tuple(e for idx, e in enumerate(edges) if not best_removed >> idx & 1)
    return ExactMaxResult(m - best_size, witness, "hitting-set", len(masks))


def _min_hitting_set(masks: list[int], n_edges: int) -> tuple[int, int]:
    """Minimum set of edge bits meeting every mask, by branch and bound."""
    if not masks:
        return 0, 0
    # greedy upper bound: repeatedly remove the most-covering edge
    removed = 0
    count = 0
    while True:
        uncovered = [cm for cm in masks if not cm & removed]
        if not uncovered:
            break
        scores = {}
        for cm in uncovered:
            bits = cm
            while bits:
                low = bits & -bits
                scores[low] = scores.get(low, 0) + 1
                bits ^= low
        pick = max(scores, key=lambda b: (scores[b], -b))
        removed |= pick
        count += 1
    best = [count, removed]

    def disjoint_lower_bound(removed_bits: int) -> int:
        taken = 0
        cnt = 0
        for cm in masks:
            if not cm & removed_bits and not cm & taken:
                cnt += 1
                taken |= cm
        return cnt

    def recurse(removed_bits: int, used: int, forbidden: int) -> None:
        target = None
        target_options = None
        for cm in masks:
            if cm & removed_bits:
                continue
            options = cm & ~forbidden
            if options == 0:
                return  # some cycle can no longer be hit on this branch
            nopts = options.bit_count()
            if target_options is None or nopts < target_options:
                target, target_options = options, nopts
                if nopts == 1:
                    break
        if target is None:
            if used < best[0]:
                best[0], best[1] = used, removed_bits
            return
        if used + disjoint_lower_bound(removed_bits) >= best[0]:
            return
        bits = target
        local_forbidden = forbidden
        while bits:
            low = bits & -bits
            recurse(removed_bits | low, used + 1, local_forbidden)
            local_forbidden |= low
            bits ^= low

    recurse(0, 0, 0)
    return best[0], best[1]


# -- exact Zarankiewicz reference (small sides only) -----------------------


def exact_c4free_max(n_left: int, n_right: int) -> int:
    """Exact maximum edges of a C4-free bipartite graph on given sides.

    Reference oracle, exponential: left neighborhoods are chosen as
    bitmasks over the right side with pairwise intersections of size at
    most one.  Keep the sides at 6 or below.
    """
    if n_left > 6 or n_right > 6:
        raise ValueError("reference search is guarded to sides of size 6")
    subsets = sorted(
        range(1 << n_right), key=lambda s: (-s.bit_count(), s)
    )
    sizes = [s.bit_count() for s in subsets]
    best = 0

    def recurse(slot: int, min_index: int, total: int, chosen: list[int]) -> None:
        nonlocal best
        if total > best:
            best = total
        if slot == n_left:
            return
        remaining = n_left - slot
        for idx in range(min_index, len(subsets)):
            cand = subsets[idx]
            size = sizes[idx]
            if total + remaining * size <= best:
                break  # sizes are non-increasing: no completion can win
            if any((cand & prev).bit_count() > 1 for prev in chosen):
                continue
            chosen.append(cand)
            recurse(slot + 1, idx, total + size, chosen)
            chosen.pop()

    recurse(0, 0, 0, [])
    return best


# -- witness serialization --------------------------------------------------


def witness_text(host: WengerGraph, witness: Sequence[int], label: str = "C8") -> str:
    """Serialize a cycle witness as `C8: P:<i> L:<a>:<b> ...`."""
    return f"{label}: " + " ".join(host.vertex_name(v) for v in witness)
