#!/usr/bin/env python3
"""Render sweep CSVs as line figures (one SVG + one PNG per job).

Reads the CSV files written by the ``optoring`` sweep/figure commands and
plots one measure column against the sweep axis, one curve per family
value.  Empty cells (unstable points) become gaps: no line segment ever
spans a missing value.

Usage:
    render.py --csv FILE --y COLUMN --out STEM
    render.py --all DIR           # render every known preset CSV in DIR
"""

from __future__ import annotations

import argparse
import csv
import math
import os
import sys

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

DELTA_LABEL = r"$\Delta/\Omega_M$"
TEMP_LABEL = r"$T$ (K)"

LAMBDA_SERIES = r"$\lambda/\Omega_M = {value:g}$"
POWER_SERIES = r"$P_L = {mw:g}$ mW"

# preset name -> (y column, x label, y label, series label template)
PRESET_JOBS = {
    "fig1a": ("E_M1M2", DELTA_LABEL, r"$E_{M1M2}$", LAMBDA_SERIES),
    "fig1b": ("E_M1M2", TEMP_LABEL, r"$E_{M1M2}$", LAMBDA_SERIES),
    "fig2a": ("E_CM1", DELTA_LABEL, r"$E_{CM1}$", POWER_SERIES),
    "fig2b": ("E_CM1", TEMP_LABEL, r"$E_{CM1}$", POWER_SERIES),
    "fig3a": ("E_CM2", DELTA_LABEL, r"$E_{CM2}$", POWER_SERIES),
    "fig3b": ("E_CM2", TEMP_LABEL, r"$E_{CM2}$", POWER_SERIES),
    "fig4a": ("R_min", DELTA_LABEL, r"$R_{min}$", LAMBDA_SERIES),
    "fig4b": ("R_min", TEMP_LABEL, r"$R_{min}$", LAMBDA_SERIES),
    "fig5a": ("R_min", DELTA_LABEL, r"$R_{min}$", POWER_SERIES),
    "fig5b": ("R_min", TEMP_LABEL, r"$R_{min}$", POWER_SERIES),
}


class RenderError(Exception):
    pass


def load_sweep_csv(path):
    """Parse a sweep CSV into (columns, rows); empty cells become NaN."""
    columns = None
    rows = []
    with open(path, "r", encoding="utf-8", newline="") as fh:
        for record in csv.reader(line for line in fh if not line.startswith("#")):
            if not record:
                continue
            if columns is None:
                columns = record
                continue
            row = {}
            for key, cell in zip(columns, record):
                row[key] = float(cell) if cell != "" else math.nan
            rows.append(row)
    if columns is None:
        raise RenderError(f"{path}: no header row")
    return columns, rows


def build_series(rows, y_column):
    """Group rows by family value, each series sorted along the axis.

    Returns a list of (family_value_or_None, xs, ys); gaps stay as NaN.
    """
    groups = {}
    for row in rows:
        fam = row.get("family_value", math.nan)
        key = None if math.isnan(fam) else fam
        groups.setdefault(key, []).append(row)
    series = []
    for key in sorted(groups, key=lambda v: (v is not None, v)):
        pts = sorted(groups[key], key=lambda r: r["axis_value"])
        xs = [r["axis_value"] for r in pts]
        ys = [r[y_column] for r in pts]
        series.append((key, xs, ys))
    return series


def _series_label(template, value):
    if value is None:
        return None
    if template is None:
        return f"family = {value:g}"
    return template.format(value=value, mw=value * 1e3)


def render(csv_path, y_column, out_stem, x_label=None, y_label=None,
           label_template=None):
    """Render one CSV column to ``out_stem``.svg and ``out_stem``.png."""
    columns, rows = load_sweep_csv(csv_path)
    if y_column not in columns:
        raise RenderError(f"{csv_path}: no column named {y_column!r}")

    series = build_series(rows, y_column)
    drawable = sum(1 for _, _, ys in series
                   if any(not math.isnan(v) for v in ys))

    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    for key, xs, ys in series:
        ax.plot(xs, ys, label=_series_label(label_template, key))
    ax.set_xlabel(x_label or "axis_value")
    ax.set_ylabel(y_label or y_column)
    ax.margins(0.05)
    if any(key is not None for key, _, _ in series):
        ax.legend()
    fig.tight_layout()
    outputs = (f"{out_stem}.svg", f"{out_stem}.png")
    for path in outputs:
        fig.savefig(path)
    plt.close(fig)

    if drawable == 0:
        print(f"warning: {csv_path}: every point is unstable or missing; "
              f"rendered empty axes", file=sys.stderr)
    return outputs


def render_all(directory):
    """Render every preset CSV found in ``directory``."""
    rendered = []
    for name, (y_column, x_label, y_label, template) in PRESET_JOBS.items():
        csv_path = os.path.join(directory, f"{name}.csv")
        if not os.path.exists(csv_path):
            continue
        stem = os.path.join(directory, name)
        rendered.extend(render(csv_path, y_column, stem, x_label, y_label, template))
    if not rendered:
        raise RenderError(f"no preset CSVs found in {directory!r}")
    return rendered


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--csv", help="sweep CSV file to plot")
    parser.add_argument("--y", help="measure column to plot")
    parser.add_argument("--out", help="output stem (writes STEM.svg and STEM.png)")
    parser.add_argument("--all", metavar="DIR",
                        help="render every preset CSV in DIR with built-in jobs")
    args = parser.parse_args(argv)

    try:
        if args.all:
            for path in render_all(args.all):
                print(path)
            return 0
        if not (args.csv and args.y and args.out):
            parser.error("either --all DIR or all of --csv/--y/--out are required")
        for path in render(args.csv, args.y, args.out):
            print(path)
        return 0
    except (RenderError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
