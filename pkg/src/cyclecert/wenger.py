"""Wenger incidence graphs and the affine line/plane geometry behind them.

W_k(q) is the bipartite incidence graph between the q^k points of F_q^k and
the union of q parallel classes of lines, where class a consists of all
lines with direction (1, a, a^2, ..., a^(k-1)).  Because every direction has
first coordinate 1, each line has a unique point with coordinate 0 equal to
zero; dropping that zero gives the canonical line representative, and the
analogous two-coordinate normalization gives canonical representatives for
the affine 2-planes spanned by a pair of direction classes.

Conventions fixed here and relied on everywhere else:

* point index  = sum coords[c] * q^c (coordinate 0 least significant);
* line index   = a * q^(k-1) + rank(base), base = coords 1..k-1 of the
  canonical point;
* edge index   = point_index * q + class, valid because every point lies on
  exactly one line per class;
* plane rep    = coords 2..k-1 of the unique plane point with coordinates
  0 and 1 both zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

from .bipartite import BipartiteGraph, write_graph
from .field import Field, moment_row, solve2
from .rng import keyed_unit

DEFAULT_EDGE_BUDGET = 4_000_000


def field_for_order(q: int) -> Field:
    """The canonical GF(q) for a prime power q."""
    if q < 2:
        raise ValueError(f"field order must be >= 2, got {q}")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    e = 0
    n = q
    while n % p == 0:
        n //= p
        e += 1
    if n != 1:
        raise ValueError(f"{q} is not a prime power")
    return Field(p, e)


@dataclass(frozen=True)
class PlaneId:
    """Canonical id of an affine 2-plane spanned by direction classes i < j."""

    i: int
    j: int
    rep: tuple[int, ...]


@dataclass(frozen=True)
class KqqReport:
    """Result of checking the class-pair intersection graph structure."""

    i: int
    j: int
    component_count: int
    all_components_kqq: bool
    components_match_planes: bool

    @property
    def ok(self) -> bool:
        return self.all_components_kqq and self.components_match_planes


class WengerGraph:
    """W_k(q) plus the line/plane geometry of its parallel classes."""

    def __init__(self, q: int, k: int = 5, max_edges: int = DEFAULT_EDGE_BUDGET):
        if k < 2:
            raise ValueError(f"need k >= 2, got {k}")
        if q**k * q > max_edges:
            raise ValueError(
                f"W_{k}({q}) has {q ** (k + 1)} edges, over the budget of {max_edges}"
            )
        self.q = q
        self.k = k
        self.field = field_for_order(q)
        self.n_points = q**k
        self.class_size = q ** (k - 1)
        self.n_lines = q * self.class_size
        self.n_planes_per_pair = q ** (k - 2)
        self._dirs = [moment_row(self.field, a, k) for a in range(q)]
        self._points = self._enumerate_points()
        self.graph = self._build_graph()
        self._crossings: dict[tuple[int, int], list] = {}

    # -- indexing -------------------------------------------------------

    def _enumerate_points(self) -> list[tuple[int, ...]]:
        q, k = self.q, self.k
        pts = []
        for idx in range(self.n_points):
            c = []
            r = idx
            for _ in range(k):
                c.append(r % q)
                r //= q
            pts.append(tuple(c))
        return pts

    def point_coords(self, idx: int) -> tuple[int, ...]:
        return self._points[idx]

    def point_index(self, coords: tuple[int, ...]) -> int:
        q = self.q
        idx = 0
        for c in reversed(coords):
            idx = idx * q + c
        return idx

    def _rank(self, digits: tuple[int, ...]) -> int:
        q = self.q
        r = 0
        for d in reversed(digits):
            r = r * q + d
        return r

    def _unrank(self, rank: int, length: int) -> tuple[int, ...]:
        q = self.q
        out = []
        for _ in range(length):
            out.append(rank % q)
            rank //= q
        return tuple(out)

    def line_class(self, line_idx: int) -> int:
        return line_idx // self.class_size

    def line_base(self, line_idx: int) -> tuple[int, ...]:
        return self._unrank(line_idx % self.class_size, self.k - 1)

    def edge_index(self, point_idx: int, cls: int) -> int:
        return point_idx * self.q + cls

    def edge_endpoints(self, eid: int) -> tuple[int, int]:
        """(point index, line index) of an edge id."""
        point_idx, cls = divmod(eid, self.q)
        return point_idx, self.line_through_index(point_idx, cls)

    @property
    def n_edges(self) -> int:
        return self.n_points * self.q

    # -- lines ------------------------------------------------------------

    def direction(self, a: int) -> tuple[int, ...]:
        return self._dirs[a]

    def line_through(self, coords: tuple[int, ...], a: int) -> int:
        """Index of the unique class-a line containing the point."""
        F = self.field
        d = self._dirs[a]
        t = coords[0]
        base_rank = 0
        q = self.q
        for c in range(self.k - 1, 0, -1):
            base_rank = base_rank * q + F.sub(coords[c], F.mul(t, d[c]))
        return a * self.class_size + base_rank

    def line_through_index(self, point_idx: int, a: int) -> int:
        return self.line_through(self._points[point_idx], a)

    def points_on_line(self, line_idx: int) -> list[int]:
        F = self.field
        a = self.line_class(line_idx)
        base = self.line_base(line_idx)
        d = self._dirs[a]
        out = []
        for t in range(self.q):
            coords = (t,) + tuple(F.add(base[c - 1], F.mul(t, d[c])) for c in range(1, self.k))
            out.append(self.point_index(coords))
        return out

    def _build_graph(self) -> BipartiteGraph:
        q = self.q
        adj_left: list[list[int]] = []
        adj_right: list[list[int]] = [[] for _ in range(self.n_lines)]
        for x_idx, coords in enumerate(self._points):
            row = [self.line_through(coords, a) for a in range(q)]
            adj_left.append(row)  # ascending in a, hence ascending line index
            for line in row:
                adj_right[line].append(x_idx)
        for lst in adj_right:
            lst.sort()
        return BipartiteGraph(self.n_points, self.n_lines, adj_left, adj_right, self.n_points * q)

    # -- intersections and planes ----------------------------------------

    def intersection_point(self, l1: int, l2: int) -> Optional[tuple[int, ...]]:
        """Common point of two lines from distinct classes, or None if skew.

        Solves the 2x2 system on coordinates {0, 1}, then verifies the
        remaining coordinates; distinct moment-curve directions make the
        system nonsingular, so failure can only mean the lines are skew.
        """
        F = self.field
        i, j = self.line_class(l1), self.line_class(l2)
        if i == j:
            raise ValueError("lines from the same parallel class never intersect uniquely")
        bi, bj = self.line_base(l1), self.line_base(l2)
        di, dj = self._dirs[i], self._dirs[j]
        sol = solve2(F, 1, F.neg(1), i, F.neg(j), 0, F.sub(bj[0], bi[0]))
        assert sol is not None  # distinct classes have independent directions
        s, t = sol
        coords = (s,) + tuple(F.add(bi[c - 1], F.mul(s, di[c])) for c in range(1, self.k))
        for c in range(2, self.k):
            if coords[c] != F.add(bj[c - 1], F.mul(t, dj[c])):
                return None
        return coords

    def plane_rep_through(self, coords: tuple[int, ...], i: int, j: int) -> tuple[int, ...]:
        """Plane representative (coords 2..k-1 of the {0,1}-normalized point)."""
        F = self.field
        di, dj = self._dirs[i], self._dirs[j]
        sol = solve2(F, 1, 1, i, j, F.neg(coords[0]), F.neg(coords[1]))
        assert sol is not None
        s, t = sol
        return tuple(
            F.add(coords[c], F.add(F.mul(s, di[c]), F.mul(t, dj[c])))
            for c in range(2, self.k)
        )

    def plane_of(self, l1: int, l2: int) -> PlaneId:
        """Canonical PlaneId of the unique 2-plane holding two meeting lines."""
        x = self.intersection_point(l1, l2)
        if x is None:
            raise ValueError("skew lines do not span an affine 2-plane here")
        i, j = self.line_class(l1), self.line_class(l2)
        if i > j:
            i, j = j, i
        return PlaneId(i, j, self.plane_rep_through(x, i, j))

    def plane_rank(self, plane: PlaneId) -> int:
        return self._rank(plane.rep)

    def plane_from_rank(self, i: int, j: int, rank: int) -> PlaneId:
        if not 0 <= i < j < self.q:
            raise ValueError("plane classes must satisfy 0 <= i < j < q")
        return PlaneId(i, j, self._unrank(rank, self.k - 2))

    def point_in_plane(self, coords: tuple[int, ...], plane: PlaneId) -> bool:
        return self.plane_rep_through(coords, plane.i, plane.j) == plane.rep

    def lines_in_plane(self, plane: PlaneId, cls: int) -> list[int]:
        """The q lines of one spanning class lying inside the plane.

        Walks the plane along the other class direction and takes the line
        of `cls` through each visited point; every returned line is then
        membership-checked point by point.
        """
        if cls == plane.i:
            other = plane.j
        elif cls == plane.j:
            other = plane.i
        else:
            raise ValueError(f"class {cls} does not span plane {plane}")
        F = self.field
        d = self._dirs[other]
        rep_point = (0, 0) + plane.rep
        lines = set()
        for t in range(self.q):
            coords = tuple(F.add(rep_point[c], F.mul(t, d[c])) for c in range(self.k))
            lines.add(self.line_through(coords, cls))
        out = sorted(lines)
        if len(out) != self.q:
            raise RuntimeError("plane walk produced a wrong number of lines")
        for line in out:
            for p_idx in self.points_on_line(line):
                if not self.point_in_plane(self._points[p_idx], plane):
                    raise RuntimeError(f"line {line} fails plane membership")
        return out

    # -- crossing tables ---------------------------------------------------

    def crossing_table(self, i: int, j: int) -> list:
        """Per-plane crossing data for the class pair i < j (cached).

        Entry at plane rank r is (left_lines, right_lines, cells) where
        cells holds (left position, right position, point index) for each of
        the q^2 line crossings inside that plane.  Built by a single sweep
        over all points, so it is independent of the pairwise
        intersection-solving route and can be checked against it.
        """
        if not 0 <= i < j < self.q:
            raise ValueError("need 0 <= i < j < q")
        key = (i, j)
        cached = self._crossings.get(key)
        if cached is not None:
            return cached
        buckets: list[list[tuple[int, int, int]]] = [[] for _ in range(self.n_planes_per_pair)]
        for x_idx, coords in enumerate(self._points):
            li = self.line_through(coords, i)
            lj = self.line_through(coords, j)
            rk = self._rank(self.plane_rep_through(coords, i, j))
            buckets[rk].append((li, lj, x_idx))
        table = []
        q2 = self.q * self.q
        for rk, bucket in enumerate(buckets):
            if len(bucket) != q2:
                raise RuntimeError(f"plane {rk} collected {len(bucket)} crossings, wanted {q2}")
            lefts = sorted({li for li, _, _ in bucket})
            rights = sorted({lj for _, lj, _ in bucket})
            lpos = {line: p for p, line in enumerate(lefts)}
            rpos = {line: p for p, line in enumerate(rights)}
            cells = [(lpos[li], rpos[lj], x) for li, lj, x in bucket]
            cells.sort()
            table.append((tuple(lefts), tuple(rights), cells))
        self._crossings[key] = table
        return table

    def class_pairs(self) -> Iterator[tuple[int, int]]:
        for i in range(self.q):
            for j in range(i + 1, self.q):
                yield i, j

    # -- subgraphs and auxiliary graphs -------------------------------------

    def auxiliary_graph(self, mask: "EdgeMask", i: int, j: int, plane: PlaneId) -> BipartiteGraph:
        """The q x q graph of surviving line crossings inside one plane.

        Left side: lines of class i in the plane (sorted by line index);
        right side: same for class j.  An edge means both incidences at the
        crossing point survive in the subgraph described by `mask`.
        """
        if (plane.i, plane.j) != (min(i, j), max(i, j)):
            raise ValueError("plane does not belong to this class pair")
        lefts = self.lines_in_plane(plane, i)
        rights = self.lines_in_plane(plane, j)
        q = self.q
        edges = []
        for lp, li in enumerate(lefts):
            for rp, lj in enumerate(rights):
                x = self.intersection_point(li, lj)
                assert x is not None  # coplanar non-parallel lines meet
                x_idx = self.point_index(x)
                if mask.contains(self.edge_index(x_idx, i)) and mask.contains(
                    self.edge_index(x_idx, j)
                ):
                    edges.append((lp, rp))
        return BipartiteGraph.from_edges(q, q, edges)

    def verify_kqq_decomposition(self, i: int, j: int) -> KqqReport:
        """Check that the class-pair intersection graph is q^3 disjoint K_{q,q}.

        Builds the intersection graph edge by edge with the pairwise solver,
        finds its connected components, and verifies each is a complete
        q-by-q bipartite block sitting inside a single distinct 2-plane.
        """
        if i == j:
            raise ValueError("need two distinct classes")
        if i > j:
            i, j = j, i
        size = self.class_size
        adjniu: list[list[int]] = [[] for _ in range(size)]
        adjvju: list[list[int]] = [[] for _ in range(size)]
        edge_plane: dict[tuple[int, int], int] = {}
        for bi in range(size):
            l1 = i * size + bi
            for bj in range(size):
                l2 = j * size + bj
                x = self.intersection_point(l1, l2)
                if x is not None:
                    adjniu[bi].append(bj)
                    adjvju[bj].append(bi)
                    edge_plane[(bi, bj)] = self._rank(self.plane_rep_through(x, i, j))
        seen_left = bytearray(size)
        component_count = 0
        all_kqq = True
        planes_ok = True
        used_planes: set[int] = set()
        for start in range(size):
            if seen_left[start] or not adjniu[start]:
                continue
            component_count += 1
            lefts = [start]
            seen_left[start] = 1
            rights: list[int] = []
            seen_right: set[int] = set()
            frontier = [start]
            while frontier:
                nxt = []
                for u in frontier:
                    for v in adjniu[u]:
                        if v not in seen_right:
                            seen_right.add(v)
                            rights.append(v)
                            for w in adjvju[v]:
                                if not seen_left[w]:
                                    seen_left[w] = 1
                                    lefts.append(w)
                                    nxt.append(w)
                frontier = nxt
            q = self.q
            if len(lefts) != q or len(rights) != q:
                all_kqq = False
                continue
            planes = {edge_plane.get((u, v)) for u in lefts for v in rights}
            if len(planes) != 1 or None in planes:
                all_kqq = False  # some cross pair is not even adjacent
                continue
            plane = planes.pop()
            if plane in used_planes:
                planes_ok = False
            used_planes.add(plane)
        isolated = sum(1 for lst in adjniu if not lst)
        if isolated:
            all_kqq = False
        if component_count != self.n_planes_per_pair:
            planes_ok = False
        return KqqReport(i, j, component_count, all_kqq, planes_ok)

    # -- naming and export ---------------------------------------------------

    def vertex_name(self, v: int) -> str:
        if v < self.n_points:
            return f"P:{v}"
        line = v - self.n_points
        return f"L:{self.line_class(line)}:{line % self.class_size}"

    def header_line(self) -> str:
        F = self.field
        mods = ",".join(str(c) for c in F.modulus)
        return f"# wenger k={self.k} q={self.q} p={F.p} e={F.e} modulus={mods}"

    def export(self, path) -> None:
        write_graph(self.graph, path, extra_header=(self.header_line(),))


def build_wenger(q: int, k: int = 5, max_edges: int = DEFAULT_EDGE_BUDGET) -> WengerGraph:
    """Construct W_k(q) together with its geometry helpers."""
    return WengerGraph(q, k, max_edges)


class EdgeMask:
    """Bitset over the edge ids of a host Wenger graph.

    Gives O(1) survival tests for incidences, which the auxiliary-graph
    scans hammer on.
    """

    __slots__ = ("n_edges", "bits", "count")

    def __init__(self, n_edges: int, bits: Optional[bytearray] = None, count: int = 0):
        self.n_edges = n_edges
        self.bits = bits if bits is not None else bytearray((n_edges + 7) // 8)
        self.count = count

    @classmethod
    def empty(cls, host: WengerGraph) -> "EdgeMask":
        return cls(host.n_edges)

    @classmethod
    def full(cls, host: WengerGraph) -> "EdgeMask":
        n = host.n_edges
        bits = bytearray(b"\xff" * ((n + 7) // 8))
        for eid in range(n, len(bits) * 8):
            bits[eid >> 3] &= ~(1 << (eid & 7)) & 0xFF
        return cls(n, bits, n)

    @classmethod
    def sample(cls, host: WengerGraph, keep: float, seed: int) -> "EdgeMask":
        """Keep each edge independently, keyed by (seed, edge id)."""
        if not 0.0 <= keep <= 1.0:
            raise ValueError(f"keep probability {keep} outside [0, 1]")
        mask = cls(host.n_edges)
        for eid in range(host.n_edges):
            if keyed_unit(seed, eid) < keep:
                mask.add(eid)
        return mask

    def contains(self, eid: int) -> bool:
        return bool(self.bits[eid >> 3] & (1 << (eid & 7)))

    def add(self, eid: int) -> None:
        byte = eid >> 3
        bit = 1 << (eid & 7)
        if not self.bits[byte] & bit:
            self.bits[byte] |= bit
            self.count += 1

    def remove(self, eid: int) -> None:
        byte = eid >> 3
        bit = 1 << (eid & 7)
        if self.bits[byte] & bit:
            self.bits[byte] &= ~bit & 0xFF
            self.count -= 1

    def __len__(self) -> int:
        return self.count

    def iter_edges(self) -> Iterator[int]:
        for eid in range(self.n_edges):
            if self.bits[eid >> 3] & (1 << (eid & 7)):
                yield eid

    def copy(self) -> "EdgeMask":
        return EdgeMask(self.n_edges, bytearray(self.bits), self.count)

    def to_bipartite(self, host: WengerGraph) -> BipartiteGraph:
        """Materialize the surviving edges on the host's vertex sets."""
        edges = []
        q = host.q
        for eid in self.iter_edges():
            point_idx, cls = divmod(eid, q)
            edges.append((point_idx, host.line_through_index(point_idx, cls)))
        return BipartiteGraph.from_edges(host.n_points, host.n_lines, edges)
