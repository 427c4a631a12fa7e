"""Command-line interface: single-point reports, sweeps, figure presets.

Configuration is a flat JSON object of SI-unit parameters; angular
frequencies are accepted as either ``<name>_rad_s`` or
``<name>_over_2pi_Hz`` (mutually exclusive per parameter) so values quoted
as 2*pi*Hz can be entered verbatim.  CLI ``--set key=value`` assignments
and the dedicated flags override file values.

Exit codes: 0 success, 1 usage/config error, 2 point-mode instability.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import replace

from .ring_model import PhysicalParams, default_params, derive_params, entanglement_report
from .sweep import AXES, FIGURE_NAMES, SweepSpec, figure_preset, write_sweep_csv

_TWO_PI = 2.0 * math.pi

# canonical field -> accepted spellings (suffix _over_2pi_Hz scales by 2*pi)
_ANGULAR = ("omega_L", "omega_m1", "omega_m2", "gamma_m1", "gamma_m2",
            "g1", "g2", "kappa", "lambda")
_DETUNING_KEYS = ("delta_rad_s", "delta_over_2pi_Hz", "delta_over_omega",
                  "delta_c_rad_s", "delta_c_over_2pi_Hz")
_TEMP_KEYS = ("temp_K", "temp1_K", "temp2_K")


def _known_keys() -> set[str]:
    keys = {"theta_rad", "power_W", "lambda_over_omega"}
    keys.update(_TEMP_KEYS)
    keys.update(_DETUNING_KEYS)
    for name in _ANGULAR:
        keys.add(f"{name}_rad_s")
        keys.add(f"{name}_over_2pi_Hz")
    return keys


KNOWN_KEYS = _known_keys()


class ConfigError(ValueError):
    pass


def _canonical(key: str) -> str:
    """Group key under the parameter it assigns, for exclusivity checks."""
    if key in _DETUNING_KEYS:
        return "detuning"
    if key in _TEMP_KEYS:
        return "temperature"
    for name in _ANGULAR:
        if key in (f"{name}_rad_s", f"{name}_over_2pi_Hz"):
            return name
    return key


def _check_key(key: str) -> None:
    if key not in KNOWN_KEYS:
        raise ConfigError(f"unknown config key {key!r}")


def _as_float(key: str, value) -> float:
    try:
        return float(value)
    except (TypeError, ValueError):
        raise ConfigError(f"value for {key!r} is not a number: {value!r}") from None


def load_config_file(path: str) -> list[tuple[str, float]]:
    """Read a JSON config file into an assignment list, rejecting unknown
    keys and conflicting spellings of the same parameter."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path!r}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file {path!r} is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError(f"config file {path!r} must hold a JSON object")
    seen: dict[str, str] = {}
    assignments = []
    for key, value in raw.items():
        _check_key(key)
        canon = _canonical(key)
        if canon == "temperature":
            if key == "temp_K" and ("temp1_K" in raw or "temp2_K" in raw):
                raise ConfigError("temp_K is exclusive with temp1_K/temp2_K")
        elif canon in seen:
            raise ConfigError(f"keys {seen[canon]!r} and {key!r} set the same parameter")
        seen[canon] = key
        assignments.append((key, _as_float(key, value)))
    return assignments


def parse_set_option(text: str) -> tuple[str, float]:
    key, sep, value = text.partition("=")
    if not sep:
        raise ConfigError(f"--set expects key=value, got {text!r}")
    _check_key(key)
    return key, _as_float(key, value)


def resolve_params(assignments: list[tuple[str, float]]) -> PhysicalParams:
    """Apply assignments over the default parameter set, later ones winning."""
    values: dict[str, tuple[str, float]] = {}
    for key, value in assignments:
        values[_canonical(key)] = (key, value)

    base = default_params()
    fields = {}
    for name in _ANGULAR:
        if name in values:
            key, v = values[name]
            fields["lam" if name == "lambda" else name] = (
                v * _TWO_PI if key.endswith("_over_2pi_Hz") else v
            )
    if "theta_rad" in values:
        fields["theta"] = values["theta_rad"][1]
    if "power_W" in values:
        fields["power"] = values["power_W"][1]
    omega_m1 = fields.get("omega_m1", base.omega_m1)
    if "lambda_over_omega" in values:
        fields["lam"] = values["lambda_over_omega"][1] * omega_m1
    if "temperature" in values:
        key, v = values["temperature"]
        if key == "temp_K":
            fields["temp1"] = fields["temp2"] = v
        else:
            fields["temp1" if key == "temp1_K" else "temp2"] = v
    if "detuning" in values:
        key, v = values["detuning"]
        if key == "delta_over_omega":
            fields["delta"], fields["delta_c"] = v * omega_m1, None
        elif key.startswith("delta_c"):
            scale = _TWO_PI if key.endswith("_over_2pi_Hz") else 1.0
            fields["delta"], fields["delta_c"] = None, v * scale
        else:
            scale = _TWO_PI if key.endswith("_over_2pi_Hz") else 1.0
            fields["delta"], fields["delta_c"] = v * scale, None
    return replace(base, **fields)


def _gather_params(args) -> PhysicalParams:
    assignments: list[tuple[str, float]] = []
    if args.config:
        assignments.extend(load_config_file(args.config))
    for item in args.set or ():
        assignments.append(parse_set_option(item))
    if getattr(args, "power", None) is not None:
        assignments.append(("power_W", args.power))
    if getattr(args, "temp", None) is not None:
        assignments.append(("temp_K", args.temp))
    if getattr(args, "delta_over_omega", None) is not None:
        assignments.append(("delta_over_omega", args.delta_over_omega))
    if getattr(args, "lambda_over_omega", None) is not None:
        assignments.append(("lambda_over_omega", args.lambda_over_omega))
    return resolve_params(assignments)


def _fmt(v: float) -> str:
    return f"{v:.12g}"


def cmd_point(args) -> int:
    params = _gather_params(args)
    d = derive_params(params)
    report = entanglement_report(params)
    lines = [
        ("eta1_rad_s", _fmt(d.eta1)),
        ("eta2_rad_s", _fmt(d.eta2)),
        ("eps_L_per_s", _fmt(d.eps_L)),
        ("a_s", _fmt(d.a_s)),
        ("G1_rad_s", _fmt(d.G1)),
        ("G2_rad_s", _fmt(d.G2)),
        ("n_th1", _fmt(d.n_th1)),
        ("n_th2", _fmt(d.n_th2)),
        ("delta_rad_s", _fmt(d.delta)),
        ("delta_over_omega", _fmt(d.delta / params.omega_m1)),
        ("q1_s", _fmt(d.q1_s)),
        ("q2_s", _fmt(d.q2_s)),
        ("stable", "1" if report.stable else "0"),
        ("stability_margin_rad_s", _fmt(report.stability_margin)),
    ]
    measures = (
        ("E_M1M2", report.e_m1m2), ("E_CM1", report.e_cm1), ("E_CM2", report.e_cm2),
        ("E_1v23", report.e_1v23), ("E_2v31", report.e_2v31), ("E_3v12", report.e_3v12),
        ("R_1", report.r_1), ("R_2", report.r_2), ("R_3", report.r_3),
        ("R_min", report.r_min),
    )
    lines.extend((name, _fmt(v) if v is not None else "") for name, v in measures)
    for name, value in lines:
        print(f"{name}={value}")
    return 0 if report.stable else 2


def cmd_sweep(args) -> int:
    base = _gather_params(args)
    family_key = None
    family_values: tuple[float, ...] = ()
    if args.family:
        key, sep, tail = args.family.partition("=")
        if not sep:
            raise ConfigError(f"--family expects key=v1,v2,..., got {args.family!r}")
        try:
            family_values = tuple(float(t) for t in tail.split(","))
        except ValueError:
            raise ConfigError(f"--family values must be numbers, got {tail!r}") from None
        family_key = key
    spec = SweepSpec(axis=args.axis, start=args.start, stop=args.stop, points=args.points,
                     family_key=family_key, family_values=family_values, base=base)
    try:
        write_sweep_csv(spec, args.out, jobs=args.jobs)
    except OSError as exc:
        print(f"error: cannot write {args.out!r}: {exc}", file=sys.stderr)
        return 1
    return 0


def cmd_figure(args) -> int:
    try:
        path = figure_preset(args.name, args.out_dir, jobs=args.jobs)
    except OSError as exc:
        print(f"error: cannot write into {args.out_dir!r}: {exc}", file=sys.stderr)
        return 1
    print(path)
    return 0


class _Parser(argparse.ArgumentParser):
    # spec reserves exit code 2 for point-mode instability
    def error(self, message):
        self.exit(1, f"{self.prog}: error: {message}\n")


def _add_param_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="JSON config file of named parameters")
    parser.add_argument("--set", action="append", metavar="KEY=VALUE",
                        help="override one parameter (repeatable)")
    parser.add_argument("--power", type=float, help="laser power in W")
    parser.add_argument("--temp", type=float, help="bath temperature in K (both mirrors)")
    parser.add_argument("--delta-over-omega", type=float,
                        help="effective detuning in units of omega_m1")
    parser.add_argument("--lambda-over-omega", type=float, dest="lambda_over_omega",
                        help="mirror-mirror coupling in units of omega_m1")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="optoring",
                     description="Stationary entanglement of a ring-cavity optomechanical system")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p_point = sub.add_parser("point", help="evaluate one parameter point")
    _add_param_options(p_point)
    p_point.set_defaults(func=cmd_point)

    p_sweep = sub.add_parser("sweep", help="run a one-dimensional sweep to CSV")
    p_sweep.add_argument("--axis", required=True, choices=AXES)
    p_sweep.add_argument("--start", required=True, type=float)
    p_sweep.add_argument("--stop", required=True, type=float)
    p_sweep.add_argument("--points", required=True, type=int)
    p_sweep.add_argument("--family", metavar="KEY=V1,V2,...",
                         help="second parameter producing one series per value")
    p_sweep.add_argument("--out", default="sweep.csv")
    p_sweep.add_argument("--jobs", type=int, default=1)
    _add_param_options(p_sweep)
    p_sweep.set_defaults(func=cmd_sweep)

    p_fig = sub.add_parser("figure", help="write one figure-preset CSV")
    p_fig.add_argument("name", choices=FIGURE_NAMES)
    p_fig.add_argument("--out-dir", default=".")
    p_fig.add_argument("--jobs", type=int, default=1)
    p_fig.set_defaults(func=cmd_figure)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
