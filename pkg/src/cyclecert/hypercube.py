"""Hypercube layers, random basis-indexed layer subgraphs, and tiny exact
extremal numbers.

The layer between levels r-1 and r of Q_n is the containment graph between
(r-1)-subsets and r-subsets of the ground set.  The random construction
implemented here assigns a uniform nonzero vector of F_2^r to each ground
element, keeps an r-set when its vectors form a basis, keeps an (r-1)-set
when its vectors extend a fixed nonzero v0 to a basis, and takes the
induced subgraph between the kept levels.  Subsets are indexed by
colexicographic rank and stored as bitmasks.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, sqrt
from typing import Callable, Optional, Sequence

from .bipartite import (
    FOUND,
    INCONCLUSIVE,
    NONE,
    BipartiteGraph,
    find_cycle_of_length,
    iter_paths_of_length,
)
from .certificates import ExactMaxResult, exact_max_c8free
from .rng import derive_seed, keyed_word

LAYER_EDGE_GUARD = 2_000_000


# -- subset indexing ------------------------------------------------------


def subset_rank(mask: int) -> int:
    """Colexicographic rank of a subset given as a bitmask."""
    rank = 0
    i = 0
    bits = mask
    while bits:
        low = bits & -bits
        i += 1
        rank += comb(low.bit_length() - 1, i)
        bits ^= low
    return rank


def subset_unrank(rank: int, r: int) -> int:
    """Inverse of subset_rank for r-element subsets."""
    mask = 0
    for i in range(r, 0, -1):
        c = i - 1
        while comb(c + 1, i) <= rank:
            c += 1
        rank -= comb(c, i)
        mask |= 1 << c
    return mask


# -- layers ----------------------------------------------------------------


class LayerGraph:
    """The containment bipartite graph between levels r-1 and r of Q_n."""

    def __init__(self, n: int, r: int):
        if not 1 <= r <= n:
            raise ValueError(f"need 1 <= r <= n, got r={r}, n={n}")
        if r * comb(n, r) > LAYER_EDGE_GUARD:
            raise ValueError("layer too large for exhaustive machinery")
        self.n = n
        self.r = r
        self.n_left = comb(n, r - 1)
        self.n_right = comb(n, r)
        self.left_masks = [subset_unrank(i, r - 1) for i in range(self.n_left)]
        self.right_masks = [subset_unrank(i, r) for i in range(self.n_right)]
        edges = []
        for t_rank, t_mask in enumerate(self.right_masks):
            bits = t_mask
            while bits:
                low = bits & -bits
                edges.append((subset_rank(t_mask ^ low), t_rank))
                bits ^= low
        self.graph = BipartiteGraph.from_edges(self.n_left, self.n_right, edges)

    def ambient_adjacent(self, u: int, v: int) -> bool:
        """Containment adjacency in Q_n between two global vertex ids."""
        if (u < self.n_left) == (v < self.n_left):
            return False
        if u > v:
            u, v = v, u
        s_mask = self.left_masks[u]
        t_mask = self.right_masks[v - self.n_left]
        return s_mask & ~t_mask == 0


def build_layer(n: int, r: int) -> LayerGraph:
    return LayerGraph(n, r)


# -- GF(2) rank ------------------------------------------------------------


def gf2_rank(vectors: Sequence[int]) -> int:
    """Rank over F_2 of bitmask row vectors, by in-place elimination."""
    pivots: dict[int, int] = {}
    rank = 0
    for v in vectors:
        while v:
            high = v.bit_length() - 1
            if high in pivots:
                v ^= pivots[high]
            else:
                pivots[high] = v
                rank += 1
                break
    return rank


def is_basis(vectors: Sequence[int], r: int) -> bool:
    """Do the given r-bit vectors span all of F_2^r?"""
    for v in vectors:
        if v >> r:
            raise ValueError(f"vector {v:#x} does not fit in {r} bits")
    return gf2_rank(vectors) == r


# -- the random layer construction ------------------------------------------


@dataclass(frozen=True)
class BasisLayerParams:
    n: int
    r: int
    seed: int
    v0: int = 1  # any fixed nonzero vector works; the first unit vector is canonical

    def __post_init__(self):
        if self.r % 2 == 0 or self.r < 1:
            raise ValueError(f"level r must be odd and >= 1, got {self.r}")
        if self.r > self.n:
            raise ValueError(f"need r <= n, got r={self.r}, n={self.n}")
        if not 0 < self.v0 < 1 << self.r:
            raise ValueError("v0 must be a nonzero r-bit vector")


@dataclass(frozen=True)
class BasisLayerSample:
    params: BasisLayerParams
    vectors: tuple[int, ...]  # one nonzero r-bit vector per ground element
    kept_left: frozenset[int]  # (r-1)-subset ranks whose vectors plus v0 form a basis
    kept_right: frozenset[int]  # r-subset ranks whose vectors form a basis
    layer: LayerGraph
    subgraph: BipartiteGraph

    @property
    def density(self) -> float:
        return self.subgraph.m / self.layer.graph.m


def sample_basis_layer(params: BasisLayerParams) -> BasisLayerSample:
    """Draw the vectors and assemble the induced layer subgraph."""
    n, r, seed = params.n, params.r, params.seed
    space = (1 << r) - 1
    vectors = tuple(1 + keyed_word(seed, i) % space for i in range(n))
    layer = LayerGraph(n, r)

    def members(mask: int) -> list[int]:
        out = []
        bits = mask
        while bits:
            low = bits & -bits
            out.append(low.bit_length() - 1)
            bits ^= low
        return out

    kept_right = frozenset(
        rank
        for rank, mask in enumerate(layer.right_masks)
        if is_basis([vectors[i] for i in members(mask)], r)
    )
    kept_left = frozenset(
        rank
        for rank, mask in enumerate(layer.left_masks)
        if is_basis([params.v0] + [vectors[i] for i in members(mask)], r)
    )
    edges = [
        (l, t)
        for l, t in layer.graph.edges()
        if l in kept_left and t in kept_right
    ]
    subgraph = BipartiteGraph.from_edges(layer.n_left, layer.n_right, edges)
    return BasisLayerSample(params, vectors, kept_left, kept_right, layer, subgraph)


# -- C6 and C6-minus checks ---------------------------------------------------


def is_c6_free(graph: BipartiteGraph, budget: Optional[int] = None) -> bool:
    search = find_cycle_of_length(graph, 6, budget=budget)
    if search.status == INCONCLUSIVE:
        raise RuntimeError("C6 search ran out of budget; raise it for a verdict")
    return search.status == NONE


def find_c6_minus(
    graph: BipartiteGraph, ambient_adjacent: Callable[[int, int], bool]
) -> Optional[tuple[int, ...]]:
    """First simple 5-edge path whose endpoints are ambient-adjacent.

    The closing edge lives in the ambient graph and need not survive in
    `graph` itself.  Endpoint order is canonicalized (start < end) so each
    path is considered once.
    """
    adj = graph.global_adjacency()
    for start in range(len(adj)):
        if not adj[start]:
            continue
        for path in iter_paths_of_length(adj, start, 5):
            end = path[-1]
            if end > start and ambient_adjacent(start, end):
                return path
    return None


def is_c6_minus_free(
    graph: BipartiteGraph, ambient_adjacent: Callable[[int, int], bool]
) -> bool:
    return find_c6_minus(graph, ambient_adjacent) is None


# -- density statistics ------------------------------------------------------


@dataclass(frozen=True)
class DensityTrial:
    trial: int
    seed: int
    edges: int
    layer_edges: int
    density: float
    c6_free: bool
    c6_minus_free: bool


@dataclass(frozen=True)
class DensityStats:
    n: int
    r: int
    mean_density: float
    stdev_density: float  # sample standard deviation, 0.0 for a single trial
    trials: tuple[DensityTrial, ...]


def density_stats(n: int, r: int, trials: int, seed: int) -> DensityStats:
    """Sample `trials` layer subgraphs and report per-trial and aggregate stats."""
    records = []
    for t in range(trials):
        trial_seed = derive_seed(seed, t)
        sample = sample_basis_layer(BasisLayerParams(n, r, trial_seed))
        layer = sample.layer
        records.append(
            DensityTrial(
                trial=t,
                seed=trial_seed,
                edges=sample.subgraph.m,
                layer_edges=layer.graph.m,
                density=sample.density,
                c6_free=is_c6_free(sample.subgraph),
                c6_minus_free=is_c6_minus_free(sample.subgraph, layer.ambient_adjacent),
            )
        )
    densities = [rec.density for rec in records]
    mean = sum(densities) / len(densities)
    if len(densities) > 1:
        var = sum((d - mean) ** 2 for d in densities) / (len(densities) - 1)
    else:
        var = 0.0
    return DensityStats(n, r, mean, sqrt(var), tuple(records))


# -- the hypercube itself ------------------------------------------------------


class CubeGraph:
    """Q_n as a bipartite graph split by coordinate-sum parity."""

    def __init__(self, n: int):
        if n > 16:
            raise ValueError("cube guarded to n <= 16")
        self.n = n
        self.left_vertices = [v for v in range(1 << n) if bin(v).count("1") % 2 == 0]
        self.right_vertices = [v for v in range(1 << n) if bin(v).count("1") % 2 == 1]
        self._index = {}
        for idx, v in enumerate(self.left_vertices):
            self._index[v] = idx
        off = len(self.left_vertices)
        for idx, v in enumerate(self.right_vertices):
            self._index[v] = off + idx
        edges = []
        for v in self.left_vertices:
            li = self._index[v]
            for b in range(n):
                edges.append((li, self._index[v ^ (1 << b)] - off))
        self.graph = BipartiteGraph.from_edges(
            len(self.left_vertices), len(self.right_vertices), edges
        )

    def global_id(self, vertex_mask: int) -> int:
        return self._index[vertex_mask]

    def vertex_mask(self, global_id: int) -> int:
        n_left = len(self.left_vertices)
        if global_id < n_left:
            return self.left_vertices[global_id]
        return self.right_vertices[global_id - n_left]

    def ambient_adjacent(self, u: int, v: int) -> bool:
        return bin(self.vertex_mask(u) ^ self.vertex_mask(v)).count("1") == 1


def build_hypercube(n: int) -> CubeGraph:
    return CubeGraph(n)


# -- exact extremal numbers at desk scale ---------------------------------------


@dataclass(frozen=True)
class CubeExtremal:
    n: int
    value: int
    cube_edges: int
    results: tuple[ExactMaxResult, ...]

    @property
    def ratio(self) -> float:
        return self.value / self.cube_edges


def exact_ex_qn_c8(n: int) -> CubeExtremal:
    """Exact maximum edges of a C8-free subgraph of Q_n, n in {3, 4}.

    For n = 3 the answer is computed twice, by exhaustive subset sweep and
    by the hitting-set branch and bound, and the two must agree; Q_4 is
    beyond the sweep, so only the hitting-set route runs there.
    """
    if n == 3:
        cube = CubeGraph(3)
        a = exact_max_c8free(cube.graph, "exhaustive")
        b = exact_max_c8free(cube.graph, "hitting-set")
        if a.value != b.value:
            raise AssertionError(
                f"method disagreement on Q_3: exhaustive {a.value}, hitting-set {b.value}"
            )
        return CubeExtremal(3, a.value, cube.graph.m, (a, b))
    if n == 4:
        cube = CubeGraph(4)
        res = exact_max_c8free(cube.graph, "hitting-set")
        return CubeExtremal(4, res.value, cube.graph.m, (res,))
    raise ValueError("exact cube extremal numbers are guarded to n in {3, 4}")


# -- exploratory union-of-layers probe -------------------------------------------


@dataclass(frozen=True)
class LayerContribution:
    r: int
    kept_edges: int
    layer_edges: int
    density: float


@dataclass(frozen=True)
class ProbeReport:
    n: int
    seed: int
    layers: tuple[LayerContribution, ...]
    union_edges: int
    cube_edges: int
    c10_status: str
    c10_witness: Optional[tuple[int, ...]]

    @property
    def union_density(self) -> float:
        return self.union_edges / self.cube_edges


def union_layers_c10_probe(n: int, seed: int, budget: Optional[int] = 2_000_000) -> ProbeReport:
    """Union the sampled odd layers inside Q_n and look for a 10-cycle.

    Purely exploratory: layers are sampled independently and nothing is
    claimed about the union beyond what the bounded search reports.
    """
    if n > 8:
        raise ValueError("probe guarded to n <= 8")
    cube = CubeGraph(n)
    n_left = len(cube.left_vertices)
    edges: set[tuple[int, int]] = set()
    layers = []
    for r in range(1, n + 1, 2):
        sample = sample_basis_layer(BasisLayerParams(n, r, derive_seed(seed, r)))
        layer = sample.layer
        for l, t in sample.subgraph.edges():
            s_mask = layer.left_masks[l]
            t_mask = layer.right_masks[t]
            u = cube.global_id(s_mask)
            v = cube.global_id(t_mask)
            if u < n_left:
                edges.add((u, v - n_left))
            else:
                edges.add((v, u - n_left))
        layers.append(
            LayerContribution(r, sample.subgraph.m, layer.graph.m, sample.density)
        )
    union = BipartiteGraph.from_edges(n_left, len(cube.right_vertices), sorted(edges))
    search = find_cycle_of_length(union, 10, budget=budget)
    return ProbeReport(
        n=n,
        seed=seed,
        layers=tuple(layers),
        union_edges=union.m,
        cube_edges=cube.graph.m,
        c10_status=search.status,
        c10_witness=search.witness,
    )
