"""Command line interface: remove / metrics / render / bench."""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import metrics as layout_metrics
from .baselines import scaling_baseline
from .errors import LayoutError, SolverError
from .layout_io import load_layout, serialize_layout, write_trace_csv
from .metrics import evaluate
from .model import LayoutInstance
from .scan import find_overlaps
from .sgd import ScheduleParams
from .solver import SolverConfig, SolverResult, Variant, solve
from .stress import StressParams
from .svg import render_svg

ALGORITHMS = ("forbid", "forbid-prime", "scaling")

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INPUT = 2
EXIT_SOLVER = 3

BENCH_HEADER = (
    "graph,n,edges,overlaps,algorithm,"
    "oo_nni,sp_ch_a,gs_bb_iar,nm_dm_imse,el_rsdd,time_ms,final_scale"
)


def _add_format(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--format",
        choices=("native", "agora"),
        default="native",
        help="layout file format (default: native)",
    )


def _add_solver_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--k", type=float, default=1.0, help="overlap weight factor")
    p.add_argument("--alpha", type=float, default=-2.0, help="weight exponent (< 0)")
    p.add_argument("--scale-step", type=float, default=0.1, help="scale search precision")
    p.add_argument("--max-iter", type=int, default=30, help="iterations per pass")
    p.add_argument("--seed", type=int, default=42, help="RNG seed")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="forbid",
        description="Node overlap removal for graph layouts, with quality "
        "metrics, SVG rendering, and a benchmark harness.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("remove", help="remove overlaps from a layout file")
    p.add_argument("--in", dest="infile", required=True, help="input layout JSON")
    p.add_argument("--out", dest="outfile", required=True, help="output layout JSON")
    p.add_argument("--algorithm", choices=ALGORITHMS, default="forbid")
    _add_solver_flags(p)
    p.add_argument("--trace", help="write per-iteration convergence CSV here")
    p.add_argument("--report", help="write a JSON run summary here")
    _add_format(p)

    p = sub.add_parser("metrics", help="compare two layouts on the five metrics")
    p.add_argument("--initial", required=True)
    p.add_argument("--final", required=True)
    p.add_argument("--out", help="write the report JSON here (default: stdout)")
    _add_format(p)

    p = sub.add_parser("render", help="render a layout to SVG")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", dest="outfile", required=True, help="output .svg path")
    _add_format(p)

    p = sub.add_parser("bench", help="run algorithms over a directory of layouts")
    p.add_argument("--dir", required=True, help="directory of layout .json files")
    p.add_argument("--out", dest="outfile", required=True, help="output CSV path")
    p.add_argument(
        "--algorithms",
        default="forbid,forbid-prime,scaling",
        help="comma-separated subset of: " + ",".join(ALGORITHMS),
    )
    _add_solver_flags(p)
    _add_format(p)

    return parser


def _solver_config(args: argparse.Namespace, algorithm: str) -> SolverConfig:
    return SolverConfig(
        variant=Variant.from_name(algorithm),
        scale_step=args.scale_step,
        stress_params=StressParams(alpha=args.alpha, k=args.k),
        schedule=ScheduleParams(max_iterations=args.max_iter),
        seed=args.seed,
    )


def _run_algorithm(
    layout: LayoutInstance, algorithm: str, args: argparse.Namespace
) -> SolverResult:
    if algorithm == "scaling":
        return scaling_baseline(layout)
    return solve(layout, _solver_config(args, algorithm))


def _cmd_remove(args: argparse.Namespace) -> int:
    layout = load_layout(args.infile, args.format)
    initial_overlaps = len(find_overlaps(layout))
    result = _run_algorithm(layout, args.algorithm, args)
    Path(args.outfile).write_bytes(serialize_layout(result.layout))
    if args.trace:
        Path(args.trace).write_bytes(write_trace_csv(result.trace))
    if args.report:
        report = {
            "algorithm": args.algorithm,
            "seed": args.seed,
            "k": args.k,
            "alpha": args.alpha,
            "scale_step": args.scale_step,
            "max_iterations": args.max_iter,
            "final_scale": result.final_scale,
            "passes": result.passes,
            "iterations": len(result.trace),
            "initial_overlaps": initial_overlaps,
            "final_overlaps": len(find_overlaps(result.layout)),
        }
        Path(args.report).write_text(json.dumps(report, indent=2) + "\n")
    return EXIT_OK


def _cmd_metrics(args: argparse.Namespace) -> int:
    initial = load_layout(args.initial, args.format)
    final = load_layout(args.final, args.format)
    report = evaluate(initial, final)
    text = json.dumps(report.as_dict(), indent=2) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_render(args: argparse.Namespace) -> int:
    layout = load_layout(args.infile, args.format)
    Path(args.outfile).write_bytes(render_svg(layout, find_overlaps(layout)))
    return EXIT_OK


def _cmd_bench(args: argparse.Namespace) -> int:
    algorithms = [a.strip() for a in args.algorithms.split(",") if a.strip()]
    for a in algorithms:
        if a not in ALGORITHMS:
            raise LayoutError(f"unknown algorithm {a!r}")
    directory = Path(args.dir)
    files = sorted(directory.glob("*.json"))
    if not files:
        raise LayoutError(f"no .json layout files in {directory}")

    rows = [BENCH_HEADER]
    for path in files:
        layout = load_layout(path, args.format)
        n_overlaps = len(find_overlaps(layout))
        for algorithm in algorithms:
            t0 = time.perf_counter()
            result = _run_algorithm(layout, algorithm, args)
            elapsed_ms = (time.perf_counter() - t0) * 1000.0
            cells = _metric_cells(layout, result.layout)
            rows.append(
                f"{path.stem},{layout.n},{len(layout.edges)},{n_overlaps},"
                f"{algorithm},{cells},{elapsed_ms:.3f},{result.final_scale!r}"
            )
    Path(args.outfile).write_text("\n".join(rows) + "\n")
    return EXIT_OK


def _metric_cells(initial: LayoutInstance, final: LayoutInstance) -> str:
    values = []
    for fn in ("oo_nni", "sp_ch_a", "gs_bb_iar", "nm_dm_imse", "el_rsdd"):
        try:
            values.append(repr(getattr(layout_metrics, fn)(initial, final)))
        except ValueError:
            values.append("nan")
    return ",".join(values)


_COMMANDS = {
    "remove": _cmd_remove,
    "metrics": _cmd_metrics,
    "render": _cmd_render,
    "bench": _cmd_bench,
}


def cli_main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return EXIT_OK if err.code == 0 else EXIT_USAGE
    try:
        return _COMMANDS[args.command](args)
    except (LayoutError, FileNotFoundError, IsADirectoryError, PermissionError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT
    except SolverError as err:
        print(f"solver error: {err}", file=sys.stderr)
        return EXIT_SOLVER
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(cli_main(sys.argv[1:]))


if __name__ == "__main__":
    main()
