"""The acceptance suite: every top-level claim as one executable criterion.

Each criterion returns a pass/fail verdict with a short detail string; the
CLI `accept` subcommand and the pytest acceptance module both run these.
Expected values marked as pinned were computed by independent oracles
(exhaustive enumeration, dual algorithms, closed forms) before being
frozen here.
"""

from __future__ import annotations

import contextlib
import io
import os
import tempfile
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Callable, Optional

from .bipartite import FOUND, NONE, find_cycle_of_length, girth
from .certificates import (
    EX_FOUND_AUX,
    EX_FOUND_GENERIC,
    c8free_upper_bound,
    cherry_count_degrees,
    cherry_count_planes,
    convexity_lower_bound,
    extract_c8,
    greedy_c8free_subgraph,
    lift_c4_to_c8,
    psi_within_total_cap,
    upper_bound_table,
    validate_c8_in_subgraph,
    verify_c8_free,
    loglog_slope,
)
from .hypercube import (
    BasisLayerParams,
    density_stats,
    exact_ex_qn_c8,
    is_basis,
    sample_basis_layer,
)
from .rng import Stream, derive_seed
from .wenger import EdgeMask, WengerGraph, build_wenger

TIERS = ("quick", "standard", "full")

# deterministic experiment seeds, one namespace per criterion
SEED_PSI = 0xC4
SEED_EXTRACT = 1234
SEED_LIFT = 0x11F7
SEED_GREEDY = 1
SEED_GM = 0x6D5

# pinned after computation; see tests for the oracle derivations
GIRTH_PIN = 8
EX_Q3_PIN = 10
EX_Q4_PIN = 22
BASIS_TRIPLES_R3_PIN = 168
DENSITY_MEAN_PINS = {
    (6, 3): 0.27,
    (8, 3): 0.2589285714285714,
    (10, 3): 0.3061111111111111,
    (10, 5): 0.18722222222222223,
}

_WENGER_CACHE: dict[int, WengerGraph] = {}


def _wenger(q: int) -> WengerGraph:
    if q not in _WENGER_CACHE:
        _WENGER_CACHE[q] = build_wenger(q)
    return _WENGER_CACHE[q]


@dataclass(frozen=True)
class CriterionResult:
    number: int
    name: str
    tier: str
    passed: bool
    details: str


def _result(number: int, name: str, tier: str, passed: bool, details: str) -> CriterionResult:
    return CriterionResult(number, name, tier, passed, details)


# -- criteria -----------------------------------------------------------------


def criterion_01_construction_counts() -> CriterionResult:
    """Vertex/class/edge counts of W_5(q) and the N^(6/5) edge relation."""
    problems = []
    for q in (2, 3, 4, 5):
        host = _wenger(q)
        class_sizes = {a: 0 for a in range(q)}
        for line in range(host.n_lines):
            class_sizes[host.line_class(line)] += 1
        if host.n_points != q**5:
            problems.append(f"q={q}: {host.n_points} points")
        if host.n_lines != q**5 or set(class_sizes.values()) != {q**4}:
            problems.append(f"q={q}: line classes wrong")
        if host.graph.m != q**6:
            problems.append(f"q={q}: {host.graph.m} edges")
        n_side = q**5
        if (n_side**6) != (q**6) ** 5:  # m = N^(6/5) exactly, in integers
            problems.append(f"q={q}: edge exponent relation fails")
    return _result(
        1,
        "construction-counts",
        "quick",
        not problems,
        "; ".join(problems) or "q in {2,3,4,5}: q^5 points, q classes of q^4 lines, q^6 = N^(6/5) edges",
    )


def criterion_02_kqq_decomposition() -> CriterionResult:
    """Every class-pair intersection graph is q^3 disjoint K_{q,q} blocks."""
    problems = []
    for q in (2, 3, 4):
        host = _wenger(q)
        for i, j in host.class_pairs():
            rep = host.verify_kqq_decomposition(i, j)
            if not (rep.ok and rep.component_count == q**3):
                problems.append(f"q={q} pair ({i},{j}): {rep}")
    return _result(
        2,
        "kqq-decomposition",
        "standard",
        not problems,
        "; ".join(problems) or "q in {2,3,4}: all pairs decompose into q^3 K_qq blocks matching planes",
    )


def criterion_03_freeness() -> CriterionResult:
    """Girth 8 by two routes, plus exhaustive C10 absence, for q in {3, 4}."""
    problems = []
    for q in (3, 4):
        host = _wenger(q)
        g = girth(host.graph)
        if g != GIRTH_PIN:
            problems.append(f"q={q}: girth {g}")
        for length, expect in ((4, NONE), (6, NONE), (8, FOUND), (10, NONE)):
            res = find_cycle_of_length(host.graph, length)
            if res.status != expect:
                problems.append(f"q={q}: C{length} search gave {res.status}")
    return _result(
        3,
        "wenger-freeness",
        "standard",
        not problems,
        "; ".join(problems)
        or "W_5(3), W_5(4): girth 8 (BFS and DFS routes agree), C8 present, C4/C6/C10 absent exhaustively",
    )


def criterion_04_psi_identity() -> CriterionResult:
    """Cherry counts agree both ways, full graph and 50 random subgraphs."""
    problems = []
    for q in (3, 4, 5):
        host = _wenger(q)
        full = EdgeMask.full(host)
        want = q**5 * (q * (q - 1) // 2)
        a, b = cherry_count_degrees(host, full), cherry_count_planes(host, full)
        if not (a == b == want):
            problems.append(f"q={q} full: degrees {a}, planes {b}, want {want}")
        for t in range(50):
            mask = EdgeMask.sample(host, 0.5, derive_seed(SEED_PSI + q, t))
            da, db = cherry_count_degrees(host, mask), cherry_count_planes(host, mask)
            if da != db:
                problems.append(f"q={q} trial {t}: {da} != {db}")
                break
    return _result(
        4,
        "psi-identity",
        "standard",
        not problems,
        "; ".join(problems) or "q in {3,4,5}: psi by degrees == psi by planes on full graph and 50 subgraphs each",
    )


def criterion_05_bound_pipeline() -> CriterionResult:
    """Exact B(q) boundary, decreasing density ratio, and log-log slope cap."""
    problems = []
    rows = upper_bound_table(4, 64)
    for q, b, _ in rows:
        lb_b = convexity_lower_bound(b, q)
        lb_next = convexity_lower_bound(b + 1, q)
        c = q * (q - 1) // 2 * q**4
        within = lambda lb: (lb - c) <= 0 or (lb - c) ** 2 <= c * c * q
        if not within(lb_b) or within(lb_next):
            problems.append(f"q={q}: B(q)={b} is not the exact threshold")
    ratios = [(q, ratio) for q, _, ratio in rows]
    crossover = next(q for q, ratio in ratios if ratio < 1)
    tail = [r for q, r in ratios if q >= crossover]
    if not all(a > b for a, b in zip(tail, tail[1:])):
        problems.append("B(q)/q^6 is not strictly decreasing past the crossover")
    slope = loglog_slope([(q, b) for q, b, _ in rows if 16 <= q <= 64])
    if slope > 5.9:
        problems.append(f"log-log slope {slope:.3f} exceeds 5.9")
    return _result(
        5,
        "bound-pipeline",
        "quick",
        not problems,
        "; ".join(problems)
        or f"q in 4..64: exact thresholds verified, ratio decreasing from q={crossover}, slope {slope:.3f} <= 5.9",
    )


def criterion_06_extraction() -> CriterionResult:
    """Dense random subgraphs at q in {5,7,8} yield validated C8 witnesses."""
    problems = []
    for q in (5, 7, 8):
        host = _wenger(q)
        found = 0
        validated = 0
        returned = 0
        for t in range(20):
            mask = EdgeMask.sample(host, 0.5, derive_seed(SEED_EXTRACT, 100 * q + t))
            res = extract_c8(host, mask)
            if res.status in (EX_FOUND_AUX, EX_FOUND_GENERIC):
                found += 1
            if res.witness is not None:
                returned += 1
                if validate_c8_in_subgraph(host, mask, res.witness):
                    validated += 1
        if found < 19:
            problems.append(f"q={q}: only {found}/20 trials found a C8")
        if validated != returned:
            problems.append(f"q={q}: {validated}/{returned} witnesses validated")
    return _result(
        6,
        "dense-extraction",
        "full",
        not problems,
        "; ".join(problems) or "q in {5,7,8}, keep 0.5: >= 19/20 found per q; all returned witnesses validate",
    )


def criterion_07_lift_property() -> CriterionResult:
    """100 planted rectangles lift to verified two-class 8-cycles."""
    host = _wenger(3)
    q = host.q
    problems = []
    checked = 0
    instance = 0
    stream = Stream(SEED_LIFT)
    while checked < 100 and not problems:
        instance += 1
        i = stream.randrange(q)
        j = stream.randrange(q)
        la, lb = stream.randrange(q), stream.randrange(q)
        ra, rb = stream.randrange(q), stream.randrange(q)
        if i == j or la == lb or ra == rb:
            continue
        i, j = min(i, j), max(i, j)
        la, lb = min(la, lb), max(la, lb)
        ra, rb = min(ra, rb), max(ra, rb)
        plane = host.plane_from_rank(i, j, stream.randrange(host.n_planes_per_pair))
        lefts = host.lines_in_plane(plane, i)
        rights = host.lines_in_plane(plane, j)
        mask = EdgeMask.sample(host, 0.3, derive_seed(SEED_LIFT, instance))
        for left in (lefts[la], lefts[lb]):
            for right in (rights[ra], rights[rb]):
                x = host.intersection_point(left, right)
                x_idx = host.point_index(x)
                mask.add(host.edge_index(x_idx, i))
                mask.add(host.edge_index(x_idx, j))
        c4 = (la, q + ra, lb, q + rb)
        witness = lift_c4_to_c8(host, mask, i, j, plane, c4)
        if not validate_c8_in_subgraph(host, mask, witness):
            problems.append(f"instance {instance}: invalid lifted witness")
            continue
        lines = [v - host.n_points for v in witness if v >= host.n_points]
        points = [v for v in witness if v < host.n_points]
        classes = sorted(host.line_class(line) for line in lines)
        if len(set(points)) != 4 or len(set(lines)) != 4 or classes != [i, i, j, j]:
            problems.append(f"instance {instance}: wrong witness shape")
            continue
        checked += 1
    return _result(
        7,
        "rectangle-lift",
        "standard",
        not problems,
        "; ".join(problems) or f"{checked} planted rectangles lifted to validated 2+2-class 8-cycles",
    )


def criterion_08_c8free_certification() -> CriterionResult:
    """Greedy outputs at q in {2,3,4} pass both freeness routes and m <= B(q)."""
    problems = []
    summary = []
    for q in (2, 3, 4):
        host = _wenger(q)
        res = greedy_c8free_subgraph(host, SEED_GREEDY)
        verification = verify_c8_free(host, res.mask, run_generic=True)
        m = len(res.mask)
        if not verification.aux_c4_free:
            problems.append(f"q={q}: auxiliary C4 found")
        if verification.generic_status != NONE:
            problems.append(f"q={q}: generic search says {verification.generic_status}")
        if m > c8free_upper_bound(q):
            problems.append(f"q={q}: m={m} exceeds B(q)")
        if not res.report.verdict:
            problems.append(f"q={q}: report verdicts {res.report.verdicts}")
        summary.append(f"q={q}: m={m} <= B={c8free_upper_bound(q)}")
    return _result(
        8,
        "c8free-certification",
        "full",
        not problems,
        "; ".join(problems) or "; ".join(summary),
    )


def criterion_09_layer_construction() -> CriterionResult:
    """Sampled layer subgraphs are C6- and C6minus-free; densities reproduce."""
    problems = []
    triples = sum(1 for trip in product(range(1, 8), repeat=3) if is_basis(list(trip), 3))
    if triples != BASIS_TRIPLES_R3_PIN:
        problems.append(f"basis triple count {triples} != {BASIS_TRIPLES_R3_PIN}")
    r1 = density_stats(6, 1, 5, SEED_GM)
    if any(rec.density != 1.0 for rec in r1.trials):
        problems.append("r=1 density not exactly 1")
    for (n, r), pin in DENSITY_MEAN_PINS.items():
        stats = density_stats(n, r, 10, SEED_GM + n * 100 + r)
        for rec in stats.trials:
            if not (rec.c6_free and rec.c6_minus_free):
                problems.append(f"(n={n},r={r}) trial {rec.trial}: freeness violated")
        if abs(stats.mean_density - pin) > 1e-12:
            problems.append(f"(n={n},r={r}): mean {stats.mean_density!r} drifted from pin {pin!r}")
        if not stats.mean_density < triples / 343 + 0.05:
            problems.append(f"(n={n},r={r}): mean above the basis-fraction sanity band")
    return _result(
        9,
        "layer-construction",
        "full",
        not problems,
        "; ".join(problems)
        or "4 configs x 10 seeds C6/C6minus-free; r=1 density 1; 168/343 basis fraction; means on pins",
    )


def criterion_10_cube_extremal() -> CriterionResult:
    """Exact tiny-cube extremal numbers by dual methods, decreasing ratio."""
    problems = []
    r3 = exact_ex_qn_c8(3)
    if r3.value != EX_Q3_PIN or len({res.value for res in r3.results}) != 1:
        problems.append(f"Q3: value {r3.value}, methods {[res.value for res in r3.results]}")
    r4 = exact_ex_qn_c8(4)
    if r4.value != EX_Q4_PIN:
        problems.append(f"Q4: value {r4.value} != {EX_Q4_PIN}")
    if not r4.ratio < r3.ratio:
        problems.append("extremal ratio did not decrease from n=3 to n=4")
    return _result(
        10,
        "cube-extremal",
        "standard",
        not problems,
        "; ".join(problems)
        or f"ex(Q3,C8)={r3.value} (dual agreement), ex(Q4,C8)={r4.value} (verified witness), ratios {r3.ratio:.3f} > {r4.ratio:.3f}",
    )


def criterion_11_reproducibility() -> CriterionResult:
    """Re-running every CLI command with the same config is byte-identical."""
    from .cli import main as cli_main

    commands = [
        ["build-wenger", "--q", "2"],
        ["verify-kqq", "--q", "2"],
        ["psi-identity", "--q", "3", "--trials", "3", "--seed", "5"],
        ["bound-table", "--qmin", "4", "--qmax", "12"],
        ["extract-c8", "--q", "3", "--keep", "0.6", "--trials", "3", "--seed", "9"],
        ["greedy-c8free", "--q", "2", "--seed", "3"],
        ["exact-ex", "--n", "3"],
        ["gm-sample", "--n", "6", "--r", "3", "--seed", "4"],
        ["gm-density", "--n", "6", "--r", "3", "--trials", "3", "--seed", "4"],
        ["c10-probe", "--n", "4", "--seed", "2"],
    ]
    problems = []
    sink = io.StringIO()
    with tempfile.TemporaryDirectory() as tmp:
        for idx, argv in enumerate(commands):
            paths = []
            for run in (0, 1):
                out = os.path.join(tmp, f"{idx}_{run}.csv")
                with contextlib.redirect_stdout(sink):
                    code = cli_main(argv + ["--out", out])
                if code not in (0,):
                    problems.append(f"{argv[0]}: exit {code}")
                paths.append(out)
            with open(paths[0], "rb") as fa, open(paths[1], "rb") as fb:
                if fa.read() != fb.read():
                    problems.append(f"{argv[0]}: outputs differ between runs")
    return _result(
        11,
        "reproducibility",
        "standard",
        not problems,
        "; ".join(problems) or f"{len(commands)} commands re-run byte-identically",
    )


CRITERIA: list[tuple[int, str, Callable[[], CriterionResult]]] = [
    (1, "quick", criterion_01_construction_counts),
    (2, "standard", criterion_02_kqq_decomposition),
    (3, "standard", criterion_03_freeness),
    (4, "standard", criterion_04_psi_identity),
    (5, "quick", criterion_05_bound_pipeline),
    (6, "full", criterion_06_extraction),
    (7, "standard", criterion_07_lift_property),
    (8, "full", criterion_08_c8free_certification),
    (9, "full", criterion_09_layer_construction),
    (10, "standard", criterion_10_cube_extremal),
    (11, "standard", criterion_11_reproducibility),
]


def run_criteria(tier: str = "full", numbers: Optional[set[int]] = None) -> list[CriterionResult]:
    """Run the criteria at or below the requested tier, in order."""
    if tier not in TIERS:
        raise ValueError(f"unknown tier {tier!r}")
    level = TIERS.index(tier)
    results = []
    for number, crit_tier, fn in CRITERIA:
        if numbers is not None and number not in numbers:
            continue
        if TIERS.index(crit_tier) > level:
            continue
        results.append(fn())
    return results
