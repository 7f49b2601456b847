"""Command-line entry point: ``lllcolor <subcommand> ...``.

Exit codes: 0 success, 2 failed check or unsuccessful solve, 1 usage or I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor

from . import bounds, lll, solver
from .coloring import Coloring, ColoringError, target_of
from .graph import ACYCLIC, EnumerationCapError, GraphError, generate, girth, parse_dimacs, subdivide, write_dimacs
from .verify import VerifyError, verify

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_FAIL = 2

COLOR_VARIANTS = solver.SOLVER_VARIANTS + ("delta-plus-2",)
GRAPH_KINDS = ("complete", "cycle", "path", "star", "complete-bipartite", "petersen", "hypercube", "random-regular", "gnp")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _formatter(prog):
    return argparse.HelpFormatter(prog, width=80, max_help_position=30)


def _int_range(text: str) -> list[int]:
    """``"3"`` or ``"3..10"`` (inclusive) to a list of integers."""
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            lo, hi = int(a), int(b)
            if hi < lo:
                raise ValueError
            return list(range(lo, hi + 1))
        return [int(text)]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N or A..B, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="lllcolor", description="Graph coloring bounds, local-lemma certificates and resampling solvers.", formatter_class=_formatter)
    sub = p.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    gen = sub.add_parser("gen", help="generate a graph in DIMACS format", formatter_class=_formatter)
    gen.add_argument("--kind", required=True, choices=GRAPH_KINDS, metavar="KIND", help=f"one of: {', '.join(GRAPH_KINDS)}")
    gen.add_argument("--n", type=int, help="vertex count (or leaves for star, dimension for hypercube)")
    gen.add_argument("--m", type=int, help="second part size for complete-bipartite")
    gen.add_argument("--d", type=int, help="degree for random-regular")
    gen.add_argument("--p", type=float, help="edge probability for gnp")
    gen.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    gen.add_argument("--subdivide", type=int, default=0, metavar="K", help="replace each edge by a path of K+1 edges")
    gen.add_argument("-o", "--output", help="output file (default stdout)")

    bnd = sub.add_parser("bounds", help="print color-count bounds", formatter_class=_formatter)
    bnd.add_argument("--variant", action="append", choices=bounds.VARIANTS, metavar="VARIANT", help=f"repeatable, default all: {', '.join(bounds.VARIANTS)}")
    bnd.add_argument("--delta", type=_int_range, default=[3], help="max degree, N or A..B (default 3)")
    bnd.add_argument("--girth", type=int, default=5, help="girth for the girth variant (default 5)")
    bnd.add_argument("--eta", type=int, default=2, help="stage multiplicity for the girth variant (default 2)")
    bnd.add_argument("--beta", type=int, default=2, help="frugality (default 2)")
    bnd.add_argument("--no-cap", action="store_true", help="use Delta/(Delta-1) instead of 3/2 in the girth variant")
    bnd.add_argument("--format", choices=("text", "json"), default="text", help="output format (default text)")

    chk = sub.add_parser("lll-check", help="check the local-lemma condition on a dependency graph", formatter_class=_formatter)
    chk.add_argument("input", help="dependency-graph JSON file, or - for stdin")
    chk.add_argument("--mode", choices=lll.MODES, default=lll.IMPROVED_CLIQUE, help="normalizer (default improved-clique)")
    chk.add_argument("--format", choices=("text", "json"), default="json", help="output format (default json)")

    col = sub.add_parser("color", help="find a coloring by resampling", formatter_class=_formatter)
    col.add_argument("input", help="DIMACS graph file, or - for stdin")
    col.add_argument("--variant", required=True, choices=COLOR_VARIANTS, metavar="VARIANT", help=f"one of: {', '.join(COLOR_VARIANTS)}")
    col.add_argument("--colors", type=int, help="palette size (default: the bound for the graph's max degree)")
    seeds = col.add_mutually_exclusive_group()
    seeds.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    seeds.add_argument("--seeds", type=str, help="seed range A..B, run concurrently")
    col.add_argument("--max-resamples", type=int, default=solver.DEFAULT_MAX_RESAMPLES, help="resample budget per run (default 1000000)")
    col.add_argument("--max-restarts", type=int, default=20, help="restarts for delta-plus-2 (default 20)")
    col.add_argument("--eta", type=int, default=2, help="stage multiplicity for eta-stage (default 2)")
    col.add_argument("--beta", type=int, default=2, help="frugality (default 2)")
    col.add_argument("--expand", action="store_true", help="eta-stage only: output the expanded acyclic edge coloring")
    col.add_argument("--jobs", type=int, default=None, help="worker processes for --seeds")
    col.add_argument("-o", "--output", help="output file (default stdout)")

    ver = sub.add_parser("verify", help="check a coloring against its property", formatter_class=_formatter)
    ver.add_argument("graph", help="DIMACS graph file")
    ver.add_argument("report", help="solve-report JSON file, or - for stdin")
    ver.add_argument("--variant", choices=COLOR_VARIANTS, metavar="VARIANT", help="override the report's variant")
    ver.add_argument("--eta", type=int, help="override eta")
    ver.add_argument("--beta", type=int, help="override beta")
    ver.add_argument("--format", choices=("text", "json"), default="text", help="output format (default text)")
    return p


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _write(text: str, path: str | None):
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


# -- subcommands ----------------------------------------------------------------


def _cmd_gen(args) -> int:
    params = {}
    kind = args.kind
    if kind in ("complete", "cycle", "path"):
        params = {"n": args.n}
    elif kind == "star":
        params = {"leaves": args.n}
    elif kind == "hypercube":
        params = {"d": args.n}
    elif kind == "complete-bipartite":
        params = {"a": args.n, "b": args.m}
    elif kind == "random-regular":
        params = {"n": args.n, "d": args.d, "seed": args.seed}
    elif kind == "gnp":
        params = {"n": args.n, "p": args.p, "seed": args.seed}
    missing = [k for k, v in params.items() if v is None]
    if missing:
        raise UsageError(f"gen --kind {kind} needs {', '.join('--' + {'leaves': 'n', 'a': 'n', 'b': 'm'}.get(k, k) for k in missing)}")
    g = generate(kind, **params)
    if args.subdivide:
        g = subdivide(g, args.subdivide)
    desc = " ".join([kind] + [f"{k}={v}" for k, v in params.items()] + ([f"subdivide={args.subdivide}"] if args.subdivide else []))
    _write(write_dimacs(g, desc), args.output)
    return EXIT_OK


def _cmd_bounds(args) -> int:
    variants = args.variant or list(bounds.VARIANTS)
    results = []
    for variant in variants:
        for delta in args.delta:
            results.append(bounds.compute(variant, delta, girth=args.girth, eta=args.eta, beta=args.beta, cap_ratio=not args.no_cap))
    if args.format == "json":
        sys.stdout.write(json.dumps([r.to_dict() for r in results], indent=2) + "\n")
    else:
        sys.stdout.write(bounds.format_table(results))
    return EXIT_OK


def _cmd_lll_check(args) -> int:
    dep = lll.loads(_read(args.input))
    report = lll.check_condition(dep, args.mode)
    if args.format == "json":
        sys.stdout.write(json.dumps(report.to_dict(), indent=2) + "\n")
    else:
        for e in report.events:
            sys.stdout.write(f"event {e.index}: p={e.p:.10g} bound={e.bound:.10g} {'ok' if e.passed else 'FAIL'}\n")
        sys.stdout.write(f"{args.mode}: {'pass' if report.passed else 'fail'}\n")
    return EXIT_OK if report.passed else EXIT_FAIL


def default_colors(g, variant: str, eta: int = 2, beta: int = 2) -> int:
    """Palette size guaranteed by the bounds for the graph's max degree (at least 3)."""
    delta = max(g.max_degree, 3)
    if variant in ("proper-edge", "proper-vertex"):
        return g.max_degree + 1
    if variant == "acyclic-edge":
        return bounds.bound_acyclic_edge(delta).colors
    if variant == "eta-stage":
        gl = girth(g)
        gl = 5 if gl == ACYCLIC else gl
        if gl < 5:
            raise UsageError("eta-stage needs girth at least 5; pass --colors to override")
        return bounds.bound_girth_acyclic_edge(delta, gl, max(eta, 2)).extra["stage_colors"]
    if variant == "acyclic-vertex":
        return bounds.bound_acyclic_vertex(delta).colors
    if variant == "star":
        return bounds.bound_star(delta).colors
    if variant == "frugal":
        return bounds.bound_frugal(delta, beta).colors
    return g.max_degree + 2


def _solve_one(job):
    g, variant, colors, seed, opts = job
    if variant == "delta-plus-2":
        return solver.recolor_delta_plus_2(g, seed=seed, max_restarts=opts["max_restarts"], max_resamples=opts["max_resamples"]).to_json()
    report = solver.resample_solve(g, variant, colors, seed=seed, max_resamples=opts["max_resamples"], eta=opts["eta"], beta=opts["beta"])
    if opts["expand"] and report.success:
        expanded = solver.expand_eta_coloring(g, report.coloring, opts["eta"])
        report = solver.SolveReport(
            "acyclic-edge",
            report.n,
            report.m,
            expanded,
            report.seed,
            report.resamples,
            True,
            verify(g, expanded, "acyclic-edge") is None,
            {"eta": opts["eta"], "stage_colors": colors},
        )
    return report.to_json()


def _cmd_color(args) -> int:
    g = parse_dimacs(_read(args.input))
    if args.expand and args.variant != "eta-stage":
        raise UsageError("--expand applies to eta-stage only")
    colors = args.colors if args.colors is not None else default_colors(g, args.variant, args.eta, args.beta)
    if colors < 1:
        raise UsageError("--colors must be positive")
    if args.max_resamples < 0:
        raise UsageError("--max-resamples must be non-negative")
    seeds = _int_range(args.seeds) if args.seeds else [args.seed]
    opts = {"max_resamples": args.max_resamples, "max_restarts": args.max_restarts, "eta": args.eta, "beta": args.beta, "expand": args.expand}
    jobs = [(g, args.variant, colors, s, opts) for s in seeds]
    if len(jobs) > 1 and args.jobs != 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            lines = list(pool.map(_solve_one, jobs))
    else:
        lines = [_solve_one(j) for j in jobs]
    _write("".join(line + "\n" for line in lines), args.output)
    return EXIT_OK if all(json.loads(line)["valid"] for line in lines) else EXIT_FAIL


def _cmd_verify(args) -> int:
    g = parse_dimacs(_read(args.graph))
    text = _read(args.report).strip()
    try:
        report = json.loads(text.splitlines()[0]) if text else None
    except json.JSONDecodeError as exc:
        raise UsageError(f"invalid report JSON: {exc}") from None
    if not isinstance(report, dict) or "assignment" not in report:
        raise UsageError("report needs an 'assignment' field")
    variant = args.variant or report.get("variant")
    if variant is None:
        raise UsageError("report has no variant; pass --variant")
    eta = args.eta if args.eta is not None else report.get("eta", 2)
    beta = args.beta if args.beta is not None else report.get("beta", 2)
    coloring = Coloring.of(target_of(variant), report["assignment"])
    result = verify(g, coloring, variant, eta=eta, beta=beta)
    if args.format == "json":
        out = {"variant": variant, "valid": result is None, "violation": None if result is None else result.to_dict()}
        sys.stdout.write(json.dumps(out) + "\n")
    elif result is None:
        sys.stdout.write(f"ok: valid {variant} coloring with {coloring.used} colors\n")
    else:
        sys.stdout.write(f"violation ({result.kind.label}): {result.description}\n")
    return EXIT_OK if result is None else EXIT_FAIL


_COMMANDS = {"gen": _cmd_gen, "bounds": _cmd_bounds, "lll-check": _cmd_lll_check, "color": _cmd_color, "verify": _cmd_verify}


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_ERROR
    except (OSError, GraphError, lll.DependencyGraphError, bounds.BoundDomainError, ColoringError, VerifyError, solver.SolverError, EnumerationCapError) as exc:
        print(f"lllcolor: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
