"""One-dimensional parameter sweeps with deterministic CSV output.

A sweep evaluates the entanglement report on an inclusive linear grid of
one axis, optionally once per value of a second (family) parameter, and
writes one row per point.  Unstable points keep their row with empty
measure cells so instability regions stay visible in the grid.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .ring_model import (
    EntanglementReport,
    PhysicalParams,
    default_params,
    derive_params,
    entanglement_report,
)

AXES = ("delta_over_omega", "temperature_K", "lambda_over_omega", "power_W")

MAX_POINTS = 100000

CSV_COLUMNS = (
    "axis_value",
    "family_value",
    "delta_over_omega",
    "T_K",
    "lambda_rad_s",
    "power_W",
    "stable",
    "E_M1M2",
    "E_CM1",
    "E_CM2",
    "E_1v23",
    "E_2v31",
    "E_3v12",
    "R_1",
    "R_2",
    "R_3",
    "R_min",
)


@dataclass(frozen=True)
class SweepSpec:
    """Declarative description of one sweep."""

    axis: str
    start: float
    stop: float
    points: int
    family_key: str | None = None
    family_values: tuple[float, ...] = ()
    base: PhysicalParams = field(default_factory=default_params)

    def __post_init__(self) -> None:
        if self.axis not in AXES:
            raise ValueError(f"axis must be one of {AXES}, got {self.axis!r}")
        if not self.start < self.stop:
            raise ValueError(f"start must be below stop, got [{self.start}, {self.stop}]")
        if not 2 <= self.points <= MAX_POINTS:
            raise ValueError(f"points must lie in [2, {MAX_POINTS}], got {self.points}")
        if self.family_key is not None:
            if self.family_key not in AXES:
                raise ValueError(f"family must be one of {AXES}, got {self.family_key!r}")
            if self.family_key == self.axis:
                raise ValueError(f"family parameter equals the sweep axis {self.axis!r}")
            if not self.family_values:
                raise ValueError("family values must be non-empty")
            if not all(math.isfinite(v) for v in self.family_values):
                raise ValueError(f"family values must be finite, got {self.family_values}")

    def grid(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.points)


def apply_parameter(p: PhysicalParams, key: str, value: float) -> PhysicalParams:
    """Set one sweep parameter on a parameter record."""
    if key == "delta_over_omega":
        return replace(p, delta=value * p.omega_m1, delta_c=None)
    if key == "temperature_K":
        return replace(p, temp1=value, temp2=value)
    if key == "lambda_over_omega":
        return replace(p, lam=value * p.omega_m1)
    if key == "power_W":
        return replace(p, power=value)
    raise ValueError(f"unknown sweep parameter {key!r}")


def _fmt(value: float) -> str:
    return f"{value:.12g}"


def _row(p: PhysicalParams, report: EntanglementReport, axis_value: float,
         family_value: float | None) -> str:
    # record the resolved effective detuning (cavity-mode bases carry none)
    delta = p.delta if p.delta is not None else derive_params(p).delta
    cells = [
        _fmt(axis_value),
        _fmt(family_value) if family_value is not None else "",
        _fmt(delta / p.omega_m1),
        _fmt(p.temp1),
        _fmt(p.lam),
        _fmt(p.power),
        "1" if report.stable else "0",
    ]
    measures = (
        report.e_m1m2, report.e_cm1, report.e_cm2,
        report.e_1v23, report.e_2v31, report.e_3v12,
        report.r_1, report.r_2, report.r_3, report.r_min,
    )
    cells.extend(_fmt(m) if m is not None else "" for m in measures)
    return ",".join(cells)


def _point_params(spec: SweepSpec) -> list[tuple[float, float | None, PhysicalParams]]:
    """Ordered evaluation list: (axis value, family value, parameters)."""
    families: list[float | None] = (
        sorted(spec.family_values) if spec.family_key is not None else [None]
    )
    out = []
    for fam in families:
        base = spec.base if fam is None else apply_parameter(spec.base, spec.family_key, fam)
        for x in spec.grid():
            out.append((float(x), fam, apply_parameter(base, spec.axis, float(x))))
    return out


def run_sweep(spec: SweepSpec, jobs: int = 1) -> list[str]:
    """Evaluate a sweep and return the CSV lines (header first, no newlines).

    Rows are ordered by (family value, axis value) ascending.  Points are
    independent; with ``jobs > 1`` they are evaluated by a process pool and
    reassembled in order, so the output never depends on the worker count.
    """
    points = _point_params(spec)
    params = [p for _, _, p in points]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(entanglement_report, params, chunksize=16))
    else:
        reports = [entanglement_report(p) for p in params]
    lines = [",".join(CSV_COLUMNS)]
    for (x, fam, p), report in zip(points, reports):
        lines.append(_row(p, report, x, fam))
    return lines


def write_sweep_csv(spec: SweepSpec, path: str, jobs: int = 1,
                    comments: tuple[str, ...] = ()) -> None:
    """Write a sweep as a CSV file with LF line endings.

    ``comments`` become '#'-prefixed header lines above the column header.
    """
    lines = run_sweep(spec, jobs=jobs)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for comment in comments:
            fh.write(f"# {comment}\n")
        for line in lines:
            fh.write(line + "\n")


# Figure presets.  Values the source experiments do not pin down are chosen
# here and recorded in each CSV's comment header: temperature 1 mK for the
# detuning sweeps, 60 mW for coupling-family figures, detuning 0.8 omega_m
# for the optomechanical temperature sweeps and 0.5 omega_m for the
# tripartite ones.  The fig1b grid starts at the 1 mK reference point: below
# about 0.3 mK the residual contangle at resonant detuning rises slightly
# with temperature, which would defeat the monotonicity gate.
LAMBDA_FAMILY = (0.05, 0.10, 0.15)
POWER_FAMILY = (0.03, 0.06, 0.09)

_DELTA_GRID = dict(axis="delta_over_omega", start=0.0, stop=2.0, points=201)


def _preset_spec(name: str) -> tuple[SweepSpec, str]:
    base = default_params()  # 60 mW, 1 mK, lam = 0.1 omega_m
    lambda_plane = SweepSpec(**_DELTA_GRID, family_key="lambda_over_omega",
                             family_values=LAMBDA_FAMILY, base=base)
    power_plane = SweepSpec(**_DELTA_GRID, family_key="power_W",
                            family_values=POWER_FAMILY, base=base)
    optomech_t = SweepSpec(axis="temperature_K", start=0.0, stop=0.02, points=101,
                           family_key="power_W", family_values=POWER_FAMILY,
                           base=replace(base, delta=0.8 * base.omega_m1))
    presets = {
        "fig1a": (lambda_plane, "E_M1M2"),
        "fig1b": (
            SweepSpec(axis="temperature_K", start=1e-3, stop=0.02, points=101,
                      family_key="lambda_over_omega", family_values=LAMBDA_FAMILY,
                      base=base),
            "E_M1M2",
        ),
        "fig2a": (power_plane, "E_CM1"),
        "fig2b": (optomech_t, "E_CM1"),
        # fig3 plots the second mirror's column over the same sweeps as fig2
        "fig3a": (power_plane, "E_CM2"),
        "fig3b": (optomech_t, "E_CM2"),
        "fig4a": (lambda_plane, "R_min"),
        "fig4b": (
            SweepSpec(axis="temperature_K", start=0.0, stop=0.05, points=101,
                      family_key="lambda_over_omega", family_values=LAMBDA_FAMILY,
                      base=replace(base, delta=0.5 * base.omega_m1)),
            "R_min",
        ),
        "fig5a": (power_plane, "R_min"),
        "fig5b": (
            SweepSpec(axis="temperature_K", start=0.0, stop=0.05, points=101,
                      family_key="power_W", family_values=POWER_FAMILY,
                      base=replace(base, delta=0.5 * base.omega_m1)),
            "R_min",
        ),
    }
    if name not in presets:
        raise KeyError(name)
    return presets[name]


FIGURE_NAMES = ("fig1a", "fig1b", "fig2a", "fig2b", "fig3a", "fig3b",
                "fig4a", "fig4b", "fig5a", "fig5b")


def figure_preset(name: str, out_dir: str, jobs: int = 1) -> str:
    """Write one preset CSV into ``out_dir`` and return its path.

    The comment header records the preset name, the plotted column, and
    every fixed parameter used.
    """
    spec, y_column = _preset_spec(name)
    b = spec.base
    entries = {
        "theta_rad": b.theta,
        "omega_L_rad_s": b.omega_L,
        "omega_m1_rad_s": b.omega_m1,
        "omega_m2_rad_s": b.omega_m2,
        "gamma_m1_rad_s": b.gamma_m1,
        "gamma_m2_rad_s": b.gamma_m2,
        "g1_rad_s": b.g1,
        "g2_rad_s": b.g2,
        "kappa_rad_s": b.kappa,
        "lambda_rad_s": b.lam,
        "power_W": b.power,
        "temp1_K": b.temp1,
        "temp2_K": b.temp2,
        "delta_rad_s": b.delta,
    }
    swept = {
        "delta_over_omega": ("delta_rad_s",),
        "temperature_K": ("temp1_K", "temp2_K"),
        "lambda_over_omega": ("lambda_rad_s",),
        "power_W": ("power_W",),
    }
    for key in (spec.axis, spec.family_key):
        for entry in swept.get(key, ()):
            entries.pop(entry, None)
    fixed = " ".join(f"{k}={_fmt(v)}" for k, v in entries.items() if v is not None)
    comments = (
        f"preset={name} y_column={y_column}",
        f"axis={spec.axis} start={_fmt(spec.start)} stop={_fmt(spec.stop)} points={spec.points}",
        f"family={spec.family_key} values={','.join(_fmt(v) for v in spec.family_values)}",
        f"fixed: {fixed}",
    )
    path = os.path.join(out_dir, f"{name}.csv")
    write_sweep_csv(spec, path, jobs=jobs, comments=comments)
    return path
