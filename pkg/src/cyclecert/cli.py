"""Command-line surface: experiments, CSV artifacts, and the acceptance runner.

Every artifact starts with comment lines embedding the tool version and the
fully resolved configuration, and contains nothing time- or path-dependent,
so re-running a command with the same configuration reproduces the output
byte for byte.

Exit codes: 0 all requested checks passed; 1 a check failed; 2 usage error;
3 a bounded search gave up before reaching a verdict.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import __version__
from .bipartite import INCONCLUSIVE, NONE, read_graph, write_graph
from .certificates import (
    CSV_REPORT_HEADER,
    EX_FOUND_AUX,
    EX_FOUND_GENERIC,
    EX_INCONCLUSIVE,
    MODE_AUX_ONLY,
    MODE_AUX_THEN_GENERIC,
    ORDER_CLASS_ROUND_ROBIN,
    ORDER_RANDOM,
    cherry_count_degrees,
    cherry_count_planes,
    extract_c8,
    greedy_c8free_subgraph,
    upper_bound_table,
    validate_c8_in_subgraph,
    verify_c8_free,
    witness_text,
)
from .hypercube import (
    BasisLayerParams,
    density_stats,
    exact_ex_qn_c8,
    sample_basis_layer,
    union_layers_c10_probe,
)
from .rng import derive_seed
from .wenger import EdgeMask, build_wenger

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3

_WENGER_CACHE: dict[tuple[int, int], object] = {}


def _wenger(q: int, k: int = 5):
    key = (q, k)
    if key not in _WENGER_CACHE:
        _WENGER_CACHE[key] = build_wenger(q, k)
    return _WENGER_CACHE[key]


def _header(command: str, config: dict) -> list[str]:
    pairs = " ".join(f"{k}={config[k]}" for k in sorted(config))
    return [f"# cyclecert {__version__}", f"# command={command} {pairs}"]


def _emit(path: Optional[str], lines: list[str]) -> None:
    text = "\n".join(lines) + "\n"
    if path:
        with open(path, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _svg_polyline(path: str, points: list[tuple[float, float]], title: str) -> None:
    """Minimal fixed-style line chart; data only, deterministic output."""
    width, height, pad = 640, 400, 48
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    xr = (x1 - x0) or 1.0
    yr = (y1 - y0) or 1.0

    def sx(x: float) -> float:
        return pad + (x - x0) / xr * (width - 2 * pad)

    def sy(y: float) -> float:
        return height - pad - (y - y0) / yr * (height - 2 * pad)

    pts = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in points)
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<text x="{pad}" y="24" font-family="monospace" font-size="14">{title}</text>',
        f'<polyline points="{pts}" fill="none" stroke="black" stroke-width="1.5"/>',
        f'<text x="{pad}" y="{height - 12}" font-family="monospace" font-size="11">x: {x0:g} .. {x1:g}</text>',
        f'<text x="{width // 2}" y="{height - 12}" font-family="monospace" font-size="11">y: {y0:g} .. {y1:g}</text>',
        "</svg>",
    ]
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


# -- subcommand implementations ----------------------------------------------


def _cmd_build_wenger(args) -> int:
    host = _wenger(args.q, args.k)
    if args.out:
        write_graph(host.graph, args.out, extra_header=(host.header_line(),))
        print(f"wrote {host.graph.m} edges to {args.out}")
    else:
        print(host.header_line())
        print(f"points={host.n_points} lines={host.n_lines} edges={host.graph.m}")
    return EXIT_OK


def _cmd_verify_kqq(args) -> int:
    host = _wenger(args.q, args.k)
    lines = _header("verify-kqq", {"q": args.q, "k": args.k})
    lines.append("i,j,components,all_kqq,planes_matched,ok")
    all_ok = True
    for i, j in host.class_pairs():
        rep = host.verify_kqq_decomposition(i, j)
        all_ok = all_ok and rep.ok and rep.component_count == host.n_planes_per_pair
        lines.append(
            f"{i},{j},{rep.component_count},{rep.all_components_kqq},"
            f"{rep.components_match_planes},{rep.ok}"
        )
    _emit(args.out, lines)
    return EXIT_OK if all_ok else EXIT_CHECK_FAILED


def _cmd_psi_identity(args) -> int:
    host = _wenger(args.q, args.k)
    config = {"q": args.q, "k": args.k, "trials": args.trials, "seed": args.seed, "keep": args.keep}
    lines = _header("psi-identity", config)
    lines.append("trial,seed,m,psi_degrees,psi_planes,equal")
    ok = True
    for t in range(args.trials):
        trial_seed = derive_seed(args.seed, t)
        mask = EdgeMask.sample(host, args.keep, trial_seed)
        a = cherry_count_degrees(host, mask)
        b = cherry_count_planes(host, mask)
        ok = ok and a == b
        lines.append(f"{t},{trial_seed},{len(mask)},{a},{b},{a == b}")
    _emit(args.out, lines)
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def _cmd_bound_table(args) -> int:
    rows = upper_bound_table(args.qmin, args.qmax)
    lines = _header("bound-table", {"qmin": args.qmin, "qmax": args.qmax})
    lines.append("q,upper_bound,ratio_num,ratio_den,ratio")
    for q, b, ratio in rows:
        lines.append(f"{q},{b},{ratio.numerator},{ratio.denominator},{float(ratio)!r}")
    _emit(args.out, lines)
    if args.svg_out:
        _svg_polyline(
            args.svg_out,
            [(q, float(r)) for q, _, r in rows],
            "C8-free upper bound over host edges",
        )
    return EXIT_OK


def _cmd_extract_c8(args) -> int:
    host = _wenger(args.q, args.k)
    config = {
        "q": args.q,
        "k": args.k,
        "keep": args.keep,
        "trials": args.trials,
        "seed": args.seed,
        "mode": args.mode,
    }
    lines = _header("extract-c8", config)
    lines.append("trial,seed,m,status,validated,witness")
    bad = False
    budget_hit = False
    for t in range(args.trials):
        trial_seed = derive_seed(args.seed, t)
        mask = EdgeMask.sample(host, args.keep, trial_seed)
        result = extract_c8(host, mask, mode=args.mode, generic_budget=args.budget)
        validated = ""
        witness = ""
        if result.witness is not None:
            valid = validate_c8_in_subgraph(host, mask, result.witness)
            validated = str(valid)
            witness = ";".join(host.vertex_name(v) for v in result.witness)
            bad = bad or not valid
        if result.status == EX_INCONCLUSIVE:
            budget_hit = True
        lines.append(f"{t},{trial_seed},{len(mask)},{result.status},{validated},{witness}")
    _emit(args.out, lines)
    if bad:
        return EXIT_CHECK_FAILED
    if budget_hit:
        return EXIT_BUDGET
    return EXIT_OK


def _cmd_greedy_c8free(args) -> int:
    host = _wenger(args.q, args.k)
    config = {"q": args.q, "k": args.k, "seed": args.seed, "order": args.order}
    result = greedy_c8free_subgraph(host, args.seed, order=args.order)
    run_generic = host.q <= 4 if args.full_verify is None else args.full_verify
    verification = verify_c8_free(host, result.mask, run_generic=run_generic)
    lines = _header("greedy-c8free", config)
    lines.append(CSV_REPORT_HEADER)
    lines.append(result.report.csv_row())
    lines.append(
        "# verification aux_c4_free=%s generic=%s"
        % (verification.aux_c4_free, verification.generic_status)
    )
    _emit(args.out, lines)
    if args.graph_out:
        sub = result.mask.to_bipartite(host)
        write_graph(sub, args.graph_out, extra_header=(host.header_line(),))
    ok = result.report.verdict and verification.aux_c4_free
    if run_generic and verification.generic_status != NONE:
        ok = False
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def _cmd_exact_ex(args) -> int:
    res = exact_ex_qn_c8(args.n)
    lines = _header("exact-ex", {"n": args.n})
    lines.append("n,value,cube_edges,ratio,methods")
    methods = ";".join(r.method for r in res.results)
    ratio = Fraction(res.value, res.cube_edges)
    lines.append(f"{args.n},{res.value},{res.cube_edges},{ratio.numerator}/{ratio.denominator},{methods}")
    _emit(args.out, lines)
    return EXIT_OK


def _cmd_gm_sample(args) -> int:
    params = BasisLayerParams(args.n, args.r, args.seed)
    sample = sample_basis_layer(params)
    header = f"# gm n={args.n} r={args.r} seed={args.seed}"
    if args.out:
        write_graph(sample.subgraph, args.out, extra_header=(header,))
    print(header)
    print(
        f"kept_left={len(sample.kept_left)} kept_right={len(sample.kept_right)} "
        f"edges={sample.subgraph.m} layer_edges={sample.layer.graph.m} "
        f"density={sample.density!r}"
    )
    return EXIT_OK


def _cmd_gm_density(args) -> int:
    stats = density_stats(args.n, args.r, args.trials, args.seed)
    config = {"n": args.n, "r": args.r, "trials": args.trials, "seed": args.seed}
    lines = _header("gm-density", config)
    lines.append("n,r,trial,seed,edges,layer_edges,density,c6_free,c6_minus_free")
    ok = True
    for rec in stats.trials:
        ok = ok and rec.c6_free and rec.c6_minus_free
        lines.append(
            f"{args.n},{args.r},{rec.trial},{rec.seed},{rec.edges},{rec.layer_edges},"
            f"{rec.density!r},{rec.c6_free},{rec.c6_minus_free}"
        )
    lines.append(f"# mean_density={stats.mean_density!r} stdev={stats.stdev_density!r}")
    _emit(args.out, lines)
    if args.svg_out:
        _svg_polyline(
            args.svg_out,
            [(rec.trial, rec.density) for rec in stats.trials],
            f"layer subgraph density, n={args.n} r={args.r}",
        )
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def _cmd_c10_probe(args) -> int:
    report = union_layers_c10_probe(args.n, args.seed, budget=args.budget)
    lines = _header("c10-probe", {"n": args.n, "seed": args.seed})
    lines.append("kind,r,edges,total_edges,density,c10_status")
    for layer in report.layers:
        lines.append(f"layer,{layer.r},{layer.kept_edges},{layer.layer_edges},{layer.density!r},")
    lines.append(
        f"union,,{report.union_edges},{report.cube_edges},{report.union_density!r},{report.c10_status}"
    )
    _emit(args.out, lines)
    return EXIT_BUDGET if report.c10_status == INCONCLUSIVE else EXIT_OK


def _cmd_accept(args) -> int:
    from .acceptance import run_criteria

    results = run_criteria(tier=args.tier)
    lines = _header("accept", {"tier": args.tier})
    for res in results:
        status = "PASS" if res.passed else "FAIL"
        lines.append(f"{status} {res.number:02d} {res.name}: {res.details}")
    all_pass = all(r.passed for r in results)
    lines.append(f"# {sum(1 for r in results if r.passed)}/{len(results)} criteria passed")
    _emit(args.out, lines)
    return EXIT_OK if all_pass else EXIT_CHECK_FAILED


# -- argument plumbing ---------------------------------------------------------


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="JSON file with default parameter values; flags win")
    parser.add_argument("--out", help="output file (default: stdout)")


REQUIRED = object()  # sentinel: parameter has no default and must be supplied


def _resolve(args: argparse.Namespace, parser: argparse.ArgumentParser, defaults: dict) -> None:
    """Fill argument gaps from the config file, then from hard defaults."""
    file_cfg = {}
    if getattr(args, "config", None):
        with open(args.config) as fh:
            file_cfg = json.load(fh)
        if not isinstance(file_cfg, dict):
            parser.error("--config must hold a JSON object")
    for key, hard in defaults.items():
        if getattr(args, key, None) is None:
            value = file_cfg.get(key, hard)
            if value is REQUIRED:
                parser.error(f"missing required parameter: --{key.replace('_', '-')}")
            setattr(args, key, value)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cyclecert",
        description="Exact even-cycle constructions and certificates",
    )
    parser.add_argument("--version", action="version", version=f"cyclecert {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build-wenger", help="construct W_k(q) and export it")
    p.add_argument("--q", type=int)
    p.add_argument("--k", type=int)
    _add_common(p)
    p.set_defaults(func=_cmd_build_wenger, defaults={"q": REQUIRED, "k": 5})

    p = sub.add_parser("verify-kqq", help="check the class-pair intersection structure")
    p.add_argument("--q", type=int)
    p.add_argument("--k", type=int)
    _add_common(p)
    p.set_defaults(func=_cmd_verify_kqq, defaults={"q": REQUIRED, "k": 5})

    p = sub.add_parser("psi-identity", help="cherry counts both ways on random subgraphs")
    p.add_argument("--q", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--keep", type=float)
    _add_common(p)
    p.set_defaults(
        func=_cmd_psi_identity,
        defaults={"q": REQUIRED, "k": 5, "trials": 20, "seed": 0, "keep": 0.5},
    )

    p = sub.add_parser("bound-table", help="B(q) and B(q)/q^6 over a range of q")
    p.add_argument("--qmin", type=int)
    p.add_argument("--qmax", type=int)
    p.add_argument("--svg-out", dest="svg_out")
    _add_common(p)
    p.set_defaults(func=_cmd_bound_table, defaults={"qmin": 4, "qmax": 64})

    p = sub.add_parser("extract-c8", help="hunt 8-cycles in random dense subgraphs")
    p.add_argument("--q", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--keep", type=float)
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--mode", choices=[MODE_AUX_ONLY, MODE_AUX_THEN_GENERIC])
    p.add_argument("--budget", type=int)
    _add_common(p)
    p.set_defaults(
        func=_cmd_extract_c8,
        defaults={
            "q": REQUIRED,
            "k": 5,
            "keep": 0.5,
            "trials": 20,
            "seed": 0,
            "mode": MODE_AUX_THEN_GENERIC,
            "budget": None,
        },
    )

    p = sub.add_parser("greedy-c8free", help="grow and certify a C8-free subgraph")
    p.add_argument("--q", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--order", choices=[ORDER_RANDOM, ORDER_CLASS_ROUND_ROBIN])
    p.add_argument("--graph-out", dest="graph_out")
    p.add_argument(
        "--full-verify",
        dest="full_verify",
        action="store_true",
        default=None,
        help="force the generic C8 search (default: only for q <= 4)",
    )
    _add_common(p)
    p.set_defaults(
        func=_cmd_greedy_c8free,
        defaults={"q": REQUIRED, "k": 5, "seed": 0, "order": ORDER_RANDOM},
    )

    p = sub.add_parser("exact-ex", help="exact ex(Q_n, C8) for n in {3, 4}")
    p.add_argument("--n", type=int)
    _add_common(p)
    p.set_defaults(func=_cmd_exact_ex, defaults={"n": REQUIRED})

    p = sub.add_parser("gm-sample", help="sample one basis-indexed layer subgraph")
    p.add_argument("--n", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--seed", type=int)
    _add_common(p)
    p.set_defaults(func=_cmd_gm_sample, defaults={"n": REQUIRED, "r": REQUIRED, "seed": 0})

    p = sub.add_parser("gm-density", help="density and freeness stats over seeded trials")
    p.add_argument("--n", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--svg-out", dest="svg_out")
    _add_common(p)
    p.set_defaults(
        func=_cmd_gm_density, defaults={"n": REQUIRED, "r": REQUIRED, "trials": 10, "seed": 0}
    )

    p = sub.add_parser("c10-probe", help="union sampled odd layers, search for a 10-cycle")
    p.add_argument("--n", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--budget", type=int)
    _add_common(p)
    p.set_defaults(func=_cmd_c10_probe, defaults={"n": REQUIRED, "seed": 0, "budget": 2_000_000})

    p = sub.add_parser("accept", help="run the acceptance criteria")
    p.add_argument("--tier", choices=["quick", "standard", "full"])
    _add_common(p)
    p.set_defaults(func=_cmd_accept, defaults={"tier": "full"})

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _resolve(args, parser, args.defaults)
    try:
        return args.func(args)
    except ValueError as exc:
        parser.error(str(exc))
        return EXIT_USAGE  # unreachable; parser.error exits


if __name__ == "__main__":
    sys.exit(main())
