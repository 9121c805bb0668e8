"""Standalone SVG emission for benchmark summaries and bound tables.

The files are self-contained XML: one <polyline> per series (its id is the
algorithm tag), circle markers on the data points, axis ticks, and a text
legend. Error metrics get a log10 y-axis; probabilities and runtimes stay
linear. No plotting library is involved, which keeps the output stable
and byte-deterministic for identical inputs.
"""

from __future__ import annotations

import math
from pathlib import Path

WIDTH, HEIGHT = 720, 480
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 64, 160, 24, 48

PALETTE = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
    "#8c564b", "#17becf", "#7f7f7f", "#bcbd22", "#e377c2",
]

LOG_FLOOR = 1e-17


def _fmt(x: float) -> str:
    return f"{x:.6g}"


def _svg_header() -> list[str]:
    return [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" '
        f'height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
    ]


def _ticks(lo: float, hi: float, count: int = 6) -> list[float]:
    if hi <= lo:
        hi = lo + 1.0
    return [lo + (hi - lo) * i / (count - 1) for i in range(count)]


def render_series_svg(
    series: dict[str, list[tuple[float, float]]],
    path,
    x_label: str = "T",
    y_label: str = "",
    log_y: bool = False,
) -> None:
    """Write one polyline per series; series maps tag -> [(x, y), ...]."""
    if not series or all(len(pts) == 0 for pts in series.values()):
        raise ValueError("nothing to plot")
    tags = sorted(series)
    xs = [p[0] for pts in series.values() for p in pts]
    ys = [p[1] for pts in series.values() for p in pts]
    if log_y:
        ys = [math.log10(max(y, LOG_FLOOR)) for y in ys]
    x_lo, x_hi = min(xs), max(xs)
    y_lo, y_hi = min(ys), max(ys)
    if x_hi == x_lo:
        x_lo, x_hi = x_lo - 1, x_hi + 1
    if y_hi == y_lo:
        y_lo, y_hi = y_lo - 1, y_hi + 1
    plot_w = WIDTH - MARGIN_L - MARGIN_R
    plot_h = HEIGHT - MARGIN_T - MARGIN_B

    def sx(x: float) -> float:
        return MARGIN_L + (x - x_lo) / (x_hi - x_lo) * plot_w

    def sy(y: float) -> float:
        if log_y:
            y = math.log10(max(y, LOG_FLOOR))
        return MARGIN_T + (y_hi - y) / (y_hi - y_lo) * plot_h

    out = _svg_header()
    # axes
    out.append(
        f'<line x1="{MARGIN_L}" y1="{MARGIN_T}" x2="{MARGIN_L}" '
        f'y2="{HEIGHT - MARGIN_B}" stroke="black"/>'
    )
    out.append(
        f'<line x1="{MARGIN_L}" y1="{HEIGHT - MARGIN_B}" '
        f'x2="{WIDTH - MARGIN_R}" y2="{HEIGHT - MARGIN_B}" stroke="black"/>'
    )
    for xv in _ticks(x_lo, x_hi):
        px = sx(xv)
        out.append(
            f'<line x1="{_fmt(px)}" y1="{HEIGHT - MARGIN_B}" '
            f'x2="{_fmt(px)}" y2="{HEIGHT - MARGIN_B + 5}" stroke="black"/>'
        )
        out.append(
            f'<text x="{_fmt(px)}" y="{HEIGHT - MARGIN_B + 20}" '
            f'font-size="11" text-anchor="middle">{_fmt(xv)}</text>'
        )
    for yv in _ticks(y_lo, y_hi):
        py = MARGIN_T + (y_hi - yv) / (y_hi - y_lo) * plot_h
        label = f"1e{_fmt(yv)}" if log_y else _fmt(yv)
        out.append(
            f'<line x1="{MARGIN_L - 5}" y1="{_fmt(py)}" x2="{MARGIN_L}" '
            f'y2="{_fmt(py)}" stroke="black"/>'
        )
        out.append(
            f'<text x="{MARGIN_L - 8}" y="{_fmt(py + 4)}" font-size="11" '
            f'text-anchor="end">{label}</text>'
        )
    out.append(
        f'<text x="{MARGIN_L + plot_w / 2}" y="{HEIGHT - 8}" font-size="13" '
        f'text-anchor="middle">{x_label}</text>'
    )
    out.append(
        f'<text x="16" y="{MARGIN_T + plot_h / 2}" font-size="13" '
        f'text-anchor="middle" transform="rotate(-90 16 '
        f'{MARGIN_T + plot_h / 2})">{y_label}</text>'
    )
    # series
    for i, tag in enumerate(tags):
        pts = sorted(series[tag])
        color = PALETTE[i % len(PALETTE)]
        coords = " ".join(f"{_fmt(sx(x))},{_fmt(sy(y))}" for x, y in pts)
        out.append(
            f'<polyline id="{tag}" fill="none" stroke="{color}" '
            f'stroke-width="1.5" points="{coords}"/>'
        )
        for x, y in pts:
            out.append(
                f'<circle cx="{_fmt(sx(x))}" cy="{_fmt(sy(y))}" r="2.5" '
                f'fill="{color}"/>'
            )
        ly = MARGIN_T + 14 + 16 * i
        lx = WIDTH - MARGIN_R + 12
        out.append(
            f'<line x1="{lx}" y1="{ly - 4}" x2="{lx + 18}" y2="{ly - 4}" '
            f'stroke="{color}" stroke-width="1.5"/>'
        )
        out.append(
            f'<text x="{lx + 24}" y="{ly}" font-size="12">{tag}</text>'
        )
    out.append("</svg>")
    Path(path).write_text("\n".join(out) + "\n")


def emit_plot(summaries, metric: str, path) -> None:
    """Plot one summary metric against the sparsity level, one polyline per
    algorithm. `metric` is success_probability, mean_relative_error, or
    mean_runtime; errors are drawn on a log axis."""
    allowed = ("success_probability", "mean_relative_error", "mean_runtime")
    if metric not in allowed:
        raise ValueError(f"metric must be one of {allowed}")
    if not summaries:
        raise ValueError("no summary rows to plot")
    series: dict[str, list[tuple[float, float]]] = {}
    for row in summaries:
        series.setdefault(row.algorithm, []).append(
            (float(row.t), float(getattr(row, metric)))
        )
    render_series_svg(
        series, path, x_label="T", y_label=metric,
        log_y=metric == "mean_relative_error",
    )


def emit_bound_plot(table, path) -> None:
    """Figure-style comparison of the shifted guarantee constants: the flat
    OMP line C1 + 2 against the per-K curve 2 C_K + 2."""
    c1 = next((r.constant for r in table.rows if r.k == 1 and r.defined), None)
    ks = [r.k for r in table.rows if r.k > 1 and r.defined]
    if not ks:
        raise ValueError("no defined K rows to plot")
    series = {
        "komp_truncated_guarantee": [
            (float(r.k), float(r.comparison_value))
            for r in table.rows if r.k > 1 and r.defined
        ],
    }
    if c1 is not None:
        series["omp_guarantee"] = [
            (float(min(ks)), c1 + 2.0), (float(max(ks)), c1 + 2.0)
        ]
    render_series_svg(
        series, path, x_label="K", y_label="guarantee constant", log_y=False
    )
