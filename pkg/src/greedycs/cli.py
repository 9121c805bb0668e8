"""Command-line front end.

Subcommands:
  recover  one-shot sparse recovery: matrix + measurements in, estimate out
  rip      isometry-constant report for a matrix (exact or sampled)
  bounds   guarantee-constant table under a power-law delta model
  bench    run the recovery or decay benchmark from a config file
  plot     render a summary CSV metric as an SVG

Exit code 0 on success; failures print one `error: <Kind>: <message>` line
to stderr and exit nonzero. Worker count for `bench` comes from --workers,
falling back to the GREEDYCS_WORKERS environment variable, then 1.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import bench, bounds, plotting, rip
from .errors import GreedycsError
from .io import (
    emit_csv,
    fmt_float,
    read_matrix_csv,
    read_vector_csv,
    write_vector_csv,
)

WORKERS_ENV = "GREEDYCS_WORKERS"


def _cmd_recover(args) -> int:
    phi = read_matrix_csv(args.matrix)
    y = read_vector_csv(args.measurements)
    spec = bench.parse_algorithm(args.algorithm)
    result = spec.run(phi, y, args.sparsity)
    write_vector_csv(args.out, result.estimate)
    support = ",".join(str(i) for i in result.support)
    print(
        f"recovered {args.sparsity}-term estimate with {result.support.size} "
        f"atoms [{support}]; residual norm "
        f"{fmt_float(float(np.linalg.norm(result.residual)))}; wrote {args.out}"
    )
    return 0


def _cmd_rip(args) -> int:
    phi = read_matrix_csv(args.matrix)
    n = phi.shape[1]
    if args.samples is not None:
        delta = rip.rip_constant_lower_bound(
            phi, args.order, args.samples, args.seed
        )
        method = "monte_carlo_lower_bound"
        subsets = min(args.samples, math.comb(n, args.order))
    else:
        delta = rip.rip_constant_exact(phi, args.order)
        method = "exact_enumeration"
        subsets = math.comb(n, args.order)
    lines = ["order,delta,method,subsets",
             f"{args.order},{fmt_float(delta)},{method},{subsets}"]
    text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_bounds(args) -> int:
    model = bounds.DeltaModel.power_law(args.delta2, args.beta)
    table = bounds.compare_omp_komp(model, args.T, range(1, args.kmax + 1))
    lines = ["K,constant,comparison_value,defined,crossover"]
    for row in table.rows:
        constant = fmt_float(row.constant) if row.constant is not None else ""
        compare = (
            fmt_float(row.comparison_value)
            if row.comparison_value is not None else ""
        )
        lines.append(
            f"{row.k},{constant},{compare},"
            f"{'true' if row.defined else 'false'},"
            f"{'true' if row.crossover else 'false'}"
        )
    text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    if args.svg:
        plotting.emit_bound_plot(table, args.svg)
        print(f"wrote {args.svg}", file=sys.stderr)
    return 0


def _cmd_bench(args) -> int:
    if args.config:
        cfg = bench.parse_config(args.config)
        expected = f"{args.experiment}_sweep"
        if cfg.experiment != expected:
            raise ValueError(
                f"config declares {cfg.experiment!r}, but the command line "
                f"asked for {expected!r}"
            )
    else:
        cfg = bench.ExperimentConfig(experiment=f"{args.experiment}_sweep")
    workers = args.workers or int(os.environ.get(WORKERS_ENV, "1"))
    if args.experiment == "recovery":
        records, summaries = bench.run_recovery_sweep(cfg, workers=workers)
    else:
        records, summaries = bench.run_decay_sweep(cfg, workers=workers)
    paths = bench.write_run_outputs(args.out, cfg, records, summaries)
    for name in ("records", "summary", "timings", "timing_summary", "config"):
        print(f"wrote {paths[name]}")
    return 0


def _cmd_plot(args) -> int:
    lines = Path(args.csv).read_text().splitlines()
    if not lines:
        raise ValueError(f"{args.csv} is empty")
    header = lines[0].split(",")
    needed = ("algorithm", "t", args.metric)
    for col in needed:
        if col not in header:
            raise ValueError(f"{args.csv} lacks a {col!r} column")
    idx = {col: header.index(col) for col in needed}
    series: dict[str, list[tuple[float, float]]] = {}
    for line in lines[1:]:
        cells = line.split(",")
        series.setdefault(cells[idx["algorithm"]], []).append(
            (float(cells[idx["t"]]), float(cells[idx[args.metric]]))
        )
    if not series:
        raise ValueError(f"{args.csv} holds no data rows")
    plotting.render_series_svg(
        series, args.out, x_label="T", y_label=args.metric,
        log_y=args.metric == "mean_relative_error",
    )
    print(f"wrote {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="greedycs",
        description="Greedy sparse recovery toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("recover", help="one-shot sparse recovery")
    p.add_argument("--matrix", required=True, help="measurement matrix CSV")
    p.add_argument("--measurements", required=True, help="observation CSV")
    p.add_argument("--sparsity", type=int, required=True, metavar="T")
    p.add_argument("--algorithm", default="omp",
                   help="omp | komp(K) | hybrid(a) | cosamp(T|2T) | iht")
    p.add_argument("--out", required=True, help="estimate CSV path")
    p.set_defaults(func=_cmd_recover)

    p = sub.add_parser("rip", help="isometry-constant report")
    p.add_argument("--matrix", required=True)
    p.add_argument("--order", type=int, required=True, metavar="T")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true", default=True)
    mode.add_argument("--samples", type=int, default=None,
                      help="sampled lower bound instead of enumeration")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None, help="CSV path (default stdout)")
    p.set_defaults(func=_cmd_rip)

    p = sub.add_parser("bounds", help="guarantee-constant comparison table")
    p.add_argument("--model", choices=["power_law"], default="power_law")
    p.add_argument("--delta2", type=float, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--T", type=int, required=True)
    p.add_argument("--kmax", type=int, default=20)
    p.add_argument("--out", default=None, help="CSV path (default stdout)")
    p.add_argument("--svg", default=None, help="optional comparison SVG")
    p.set_defaults(func=_cmd_bounds)

    p = sub.add_parser("bench", help="run a benchmark sweep")
    p.add_argument("experiment", choices=["recovery", "decay"])
    p.add_argument("--config", default=None, help="flat key=value config file")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--workers", type=int, default=None,
                   help=f"worker processes (default ${WORKERS_ENV} or 1)")
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser("plot", help="render a summary CSV metric as SVG")
    p.add_argument("--csv", required=True)
    p.add_argument("--metric", required=True,
                   choices=["success_probability", "mean_relative_error",
                            "mean_runtime"])
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_plot)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (GreedycsError, ValueError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
