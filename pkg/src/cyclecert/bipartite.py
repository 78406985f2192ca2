"""Compact bipartite graphs and exact short-even-cycle machinery.

Vertices live in two indexed sides; "global" ids put the left side at
0..nLeft-1 and the right side at nLeft..nLeft+nRight-1.  All searches are
exact: they either answer definitively or report an explicit
"inconclusive" when an expansion budget runs out, never a silent guess.
"""

from __future__ import annotations

from bisect import bisect_left
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

from .rng import keyed_unit

FOUND = "found"
NONE = "none"
INCONCLUSIVE = "inconclusive"


class BipartiteGraph:
    """Adjacency-list bipartite graph with sorted neighbor lists."""

    __slots__ = ("n_left", "n_right", "adj_left", "adj_right", "m", "_global_adj")

    def __init__(self, n_left: int, n_right: int, adj_left: list[list[int]], adj_right: list[list[int]], m: int):
        self.n_left = n_left
        self.n_right = n_right
        self.adj_left = adj_left
        self.adj_right = adj_right
        self.m = m
        self._global_adj: Optional[list[tuple[int, ...]]] = None

    @classmethod
    def from_edges(cls, n_left: int, n_right: int, edges: Iterable[tuple[int, int]]) -> "BipartiteGraph":
        adj_left: list[list[int]] = [[] for _ in range(n_left)]
        adj_right: list[list[int]] = [[] for _ in range(n_right)]
        m = 0
        for l, r in edges:
            if not (0 <= l < n_left and 0 <= r < n_right):
                raise ValueError(f"edge ({l},{r}) out of range")
            adj_left[l].append(r)
            adj_right[r].append(l)
            m += 1
        for lst in adj_left:
            lst.sort()
            for a, b in zip(lst, lst[1:]):
                if a == b:
                    raise ValueError("duplicate edge")
        for lst in adj_right:
            lst.sort()
        return cls(n_left, n_right, adj_left, adj_right, m)

    @property
    def n_vertices(self) -> int:
        return self.n_left + self.n_right

    def edges(self) -> Iterator[tuple[int, int]]:
        """Edges in canonical ascending (left, right) order."""
        for l, nbrs in enumerate(self.adj_left):
            for r in nbrs:
                yield (l, r)

    def has_edge(self, l: int, r: int) -> bool:
        nbrs = self.adj_left[l]
        i = bisect_left(nbrs, r)
        return i < len(nbrs) and nbrs[i] == r

    def global_adjacency(self) -> list[tuple[int, ...]]:
        """Neighbor tuples in global-id space (cached)."""
        if self._global_adj is None:
            off = self.n_left
            adj: list[tuple[int, ...]] = [tuple(off + r for r in nbrs) for nbrs in self.adj_left]
            adj.extend(tuple(nbrs) for nbrs in self.adj_right)
            self._global_adj = adj
        return self._global_adj

    def is_left(self, v: int) -> bool:
        return v < self.n_left

    def __repr__(self) -> str:
        return f"BipartiteGraph(n_left={self.n_left}, n_right={self.n_right}, m={self.m})"


@dataclass(frozen=True)
class CycleSearch:
    """Outcome of a fixed-length cycle search."""

    status: str  # FOUND, NONE or INCONCLUSIVE
    witness: Optional[tuple[int, ...]]
    expansions: int


def is_simple_cycle(graph: BipartiteGraph, vertices: tuple[int, ...]) -> bool:
    """Independent witness validator: distinct, alternating, all edges present."""
    n = len(vertices)
    if n < 4 or n % 2:
        return False
    if len(set(vertices)) != n:
        return False
    for i, v in enumerate(vertices):
        w = vertices[(i + 1) % n]
        if graph.is_left(v) == graph.is_left(w):
            return False
        l, r = (v, w) if graph.is_left(v) else (w, v)
        if not graph.has_edge(l, r - graph.n_left):
            return False
    return True


def _bfs_limited(adj: list[tuple[int, ...]], start: int, cap: int, dist: bytearray) -> None:
    """Fill dist with BFS distances from start, capped at cap (255 = beyond)."""
    dist[start] = 0
    frontier = [start]
    d = 0
    while frontier and d < cap:
        d += 1
        nxt = []
        for u in frontier:
            for w in adj[u]:
                if dist[w] == 255:
                    dist[w] = d
                    nxt.append(w)
        frontier = nxt


def _cycle_dfs(
    graph: BipartiteGraph,
    length: int,
    budget: Optional[int],
    limit: Optional[int],
) -> tuple[list[tuple[int, ...]], str, int]:
    """Canonical DFS enumeration of simple cycles of exactly `length`.

    Canonical form: the cycle starts at its minimum-index vertex and the
    second vertex has a smaller index than the last, so each cycle is
    produced exactly once up to rotation and reflection.  A BFS distance
    bound from the start vertex prunes branches that can no longer close.
    """
    adj = graph.global_adjacency()
    n = len(adj)
    half = length // 2
    found: list[tuple[int, ...]] = []
    expansions = 0
    dist = bytearray(b"\xff" * n)
    for s in range(n):
        nbrs_s = adj[s]
        if len(nbrs_s) < 2:
            continue
        for i in range(n):
            dist[i] = 255
        _bfs_limited(adj, s, half, dist)
        adj_s = set(nbrs_s)
        visited = bytearray(n)
        visited[s] = 1
        path = [s]
        ptrs = [0]
        while path:
            j = len(path)  # index of the vertex being chosen next
            u = path[-1]
            if j == length - 1:
                v1 = path[1]
                for w in adj[u]:
                    if w > v1 and not visited[w] and w in adj_s:
                        found.append(tuple(path) + (w,))
                        if limit is not None and len(found) >= limit:
                            return found, FOUND, expansions
                last = path.pop()
                ptrs.pop()
                visited[last] = 0
                continue
            nu = adj[u]
            i = ptrs[-1]
            pushed = False
            while i < len(nu):
                w = nu[i]
                i += 1
                if w <= s or visited[w]:
                    continue
                if j >= half and dist[w] > length - j:
                    continue
                expansions += 1
                if budget is not None and expansions > budget:
                    return found, INCONCLUSIVE, expansions
                ptrs[-1] = i
                path.append(w)
                visited[w] = 1
                ptrs.append(0)
                pushed = True
                break
            if not pushed:
                last = path.pop()
                ptrs.pop()
                visited[last] = 0
    status = FOUND if found else NONE
    return found, status, expansions


def find_cycle_of_length(graph: BipartiteGraph, length: int, budget: Optional[int] = None) -> CycleSearch:
    """Search for one simple cycle of exactly `length` (in {4, 6, 8, 10})."""
    if length % 2 or not 4 <= length <= 10:
        raise ValueError(f"unsupported cycle length {length}")
    found, status, expansions = _cycle_dfs(graph, length, budget, limit=1)
    witness = found[0] if found else None
    return CycleSearch(status, witness, expansions)


def enumerate_cycles_of_length(
    graph: BipartiteGraph, length: int, budget: Optional[int] = None
) -> tuple[list[tuple[int, ...]], str]:
    """All simple cycles of exactly `length`, each once up to symmetry."""
    if length % 2 or not 4 <= length <= 10:
        raise ValueError(f"unsupported cycle length {length}")
    found, status, _ = _cycle_dfs(graph, length, budget, limit=None)
    if status == FOUND or status == NONE:
        status = NONE if not found else FOUND
    return found, status


def girth(graph: BipartiteGraph) -> Optional[int]:
    """Exact girth via BFS from every vertex; None when acyclic.

    Bipartite input means the result, if any, is even.
    """
    adj = graph.global_adjacency()
    n = len(adj)
    best: Optional[int] = None
    dist = [0] * n
    parent = [0] * n
    for s in range(n):
        if len(adj[s]) < 2:
            continue
        cap = n if best is None else best // 2
        for i in range(n):
            dist[i] = -1
        dist[s] = 0
        parent[s] = -1
        queue = deque([s])
        while queue:
            u = queue.popleft()
            du = dist[u]
            if du >= cap:
                break
            for w in adj[u]:
                if dist[w] == -1:
                    dist[w] = du + 1
                    parent[w] = u
                    queue.append(w)
                elif w != parent[u]:
                    cand = du + dist[w] + 1
                    if best is None or cand < best:
                        best = cand
                        cap = best // 2
        if best == 4:
            break
    return best


def find_c4_small(graph: BipartiteGraph) -> Optional[tuple[int, int, int, int]]:
    """First 4-cycle under canonical scan order via common-neighbor pigeonhole.

    Scans left vertices ascending and their sorted right-neighbor pairs;
    cost O(sum of squared left degrees).
    """
    seen: dict[tuple[int, int], int] = {}
    off = graph.n_left
    for u, nbrs in enumerate(graph.adj_left):
        ln = len(nbrs)
        for a in range(ln):
            ra = nbrs[a]
            for b in range(a + 1, ln):
                key = (ra, nbrs[b])
                prev = seen.get(key)
                if prev is not None:
                    return (prev, off + ra, u, off + nbrs[b])
                seen[key] = u
    return None


def random_edge_subgraph(graph: BipartiteGraph, keep: float, seed: int) -> BipartiteGraph:
    """Independent per-edge subsampling, keyed by (seed, canonical edge index)."""
    if not 0.0 <= keep <= 1.0:
        raise ValueError(f"keep probability {keep} outside [0, 1]")
    kept = [e for i, e in enumerate(graph.edges()) if keyed_unit(seed, i) < keep]
    return BipartiteGraph.from_edges(graph.n_left, graph.n_right, kept)


def iter_paths_of_length(adj: list, start: int, length: int) -> Iterator[tuple[int, ...]]:
    """Yield every simple path with `length` edges starting at `start`.

    `adj` is any indexable of neighbor sequences; paths are produced in
    DFS order following neighbor-list order.
    """
    n = len(adj)
    visited = bytearray(n)
    visited[start] = 1
    path = [start]
    ptrs = [0]
    while path:
        if len(path) == length + 1:
            yield tuple(path)
            last = path.pop()
            ptrs.pop()
            visited[last] = 0
            continue
        nu = adj[path[-1]]
        i = ptrs[-1]
        pushed = False
        while i < len(nu):
            w = nu[i]
            i += 1
            if visited[w]:
                continue
            ptrs[-1] = i
            path.append(w)
            visited[w] = 1
            ptrs.append(0)
            pushed = True
            break
        if not pushed:
            last = path.pop()
            ptrs.pop()
            visited[last] = 0


def exists_path_of_length(
    adj: list, u: int, v: int, length: int, budget: Optional[int] = None
) -> str:
    """Does a simple path with exactly `length` edges join u and v?

    Returns FOUND / NONE / INCONCLUSIVE.  Used as the incremental cycle
    check during greedy subgraph growth, so it must never silently
    under-report: a blown budget is reported, not swallowed.
    """
    n = len(adj)
    visited = bytearray(n)
    visited[u] = 1
    path_len = 0
    ptrs = [0]
    stack = [u]
    expansions = 0
    while stack:
        cur = stack[-1]
        if path_len == length:
            if cur == v:
                return FOUND
            last = stack.pop()
            ptrs.pop()
            visited[last] = 0
            path_len -= 1
            continue
        nu = adj[cur]
        i = ptrs[-1]
        pushed = False
        while i < len(nu):
            w = nu[i]
            i += 1
            if visited[w]:
                continue
            if w == v and path_len + 1 < length:
                continue  # v may only appear as the final vertex
            expansions += 1
            if budget is not None and expansions > budget:
                return INCONCLUSIVE
            ptrs[-1] = i
            stack.append(w)
            visited[w] = 1
            ptrs.append(0)
            path_len += 1
            pushed = True
            break
        if not pushed:
            last = stack.pop()
            ptrs.pop()
            visited[last] = 0
            path_len -= 1
    return NONE


# -- text format ------------------------------------------------------


def write_graph(graph: BipartiteGraph, path, extra_header: tuple[str, ...] = ()) -> None:
    """Write the text format; `extra_header` lines are emitted verbatim."""
    with open(path, "w", newline="\n") as fh:
        fh.write(f"# bipartite nLeft={graph.n_left} nRight={graph.n_right} m={graph.m}\n")
        for line in extra_header:
            if not line.startswith("#"):
                raise ValueError("extra header lines must start with '#'")
            fh.write(line.rstrip("\n") + "\n")
        for l, r in graph.edges():
            fh.write(f"L{l} R{r}\n")


def read_graph(path) -> tuple[BipartiteGraph, tuple[str, ...]]:
    """Read the text format back; returns (graph, extra header lines)."""
    extra: list[str] = []
    edges: list[tuple[int, int]] = []
    n_left = n_right = m = None
    with open(path, "r") as fh:
        for raw in fh:
            line = raw.rstrip("\n")
            if not line:
                continue
            if line.startswith("# bipartite "):
                fields = dict(part.split("=") for part in line[len("# bipartite ") :].split())
                n_left = int(fields["nLeft"])
                n_right = int(fields["nRight"])
                m = int(fields["m"])
            elif line.startswith("#"):
                extra.append(line)
            else:
                lpart, rpart = line.split()
                if lpart[0] != "L" or rpart[0] != "R":
                    raise ValueError(f"malformed edge line: {line!r}")
                edges.append((int(lpart[1:]), int(rpart[1:])))
    if n_left is None:
        raise ValueError("missing '# bipartite' header")
    graph = BipartiteGraph.from_edges(n_left, n_right, edges)
    if graph.m != m:
        raise ValueError(f"header claims m={m}, file has {graph.m} edges")
    return graph, tuple(extra)
