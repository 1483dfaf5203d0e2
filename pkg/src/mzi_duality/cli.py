"""Command-line front end: single-point reports, parameter sweeps, bundled
figure presets, and the randomized verification suites.

Exit codes: 0 success, 1 verification failure, 2 invalid input or I/O error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import re
import sys
from dataclasses import dataclass

import numpy as np

from .duality import (
    complementarity_residual,
    distinguishability_closed,
    distinguishability_trace_norm,
    duality_report,
    path_weights,
    visibility_closed,
    visibility_scan,
)
from .errors import DualityError, InvalidInputError
from .interferometer import BeamSplitterAngle, BlochState, DetectorConfig
from .verify import RunConfig, all_passed, run_verification

SWEEP_HEADER = "param,V_closed,V_scan,D_closed,D_trace,residual,omega_a,omega_b"
FIGURE_POINTS = 501

_ANGLE_RE = re.compile(
    r"^\s*(?P<mult>[+-]?(?:\d+\.?\d*|\.\d+)?)\s*pi\s*(?:/\s*(?P<div>\d+\.?\d*|\.\d+))?\s*$",
    re.IGNORECASE,
)


def parse_angle(text: str) -> float:
    """Angle in raw radians or as a multiple of pi ('pi/2', '3pi/4', '-pi')."""
    try:
        return float(text)
    except ValueError:
        pass
    match = _ANGLE_RE.match(text)
    if match is None:
        raise InvalidInputError(f"cannot parse angle {text!r}")
    mult_text = match.group("mult")
    if mult_text in ("", "+"):
        mult = 1.0
    elif mult_text == "-":
        mult = -1.0
    else:
        mult = float(mult_text)
    value = mult * math.pi
    if match.group("div") is not None:
        value /= float(match.group("div"))
    return value


def _fmt(value: float) -> str:
    # 17 significant digits round-trip any double exactly.
    return format(value, ".17g")


@dataclass(frozen=True)
class SweepSpec:
    """One-parameter sweep: either s_x at fixed beta, or beta at fixed s_x.

    The total Bloch length lam is held fixed along the sweep; its share not
    carried by s_x goes to (s_y, s_z) along the direction set by yz_angle
    (s_z = r*cos, s_y = r*sin). Duality measures do not depend on that split.
    """

    swept: str
    lo: float
    hi: float
    steps: int
    lam: float
    a_overlap: float
    beta: float | None = None
    s_x: float | None = None
    gamma: float = 0.0
    delta: float = 0.0
    yz_angle: float = 0.0
    scan_grid: int = 4096

    def __post_init__(self):
        if self.swept not in ("s_x", "beta"):
            raise InvalidInputError("swept parameter must be 's_x' or 'beta'")
        if self.steps < 2:
            raise InvalidInputError("steps must be at least 2")
        if not self.lo < self.hi:
            raise InvalidInputError("sweep range must satisfy lo < hi")
        if not 0.0 <= self.lam <= 1.0 + 1e-12:
            raise InvalidInputError(f"lam must lie in [0, 1], got {self.lam!r}")
        if not 0.0 <= self.a_overlap <= 1.0:
            raise InvalidInputError(f"a_overlap must lie in [0, 1], got {self.a_overlap!r}")
        if self.swept == "s_x":
            if self.beta is None:
                raise InvalidInputError("sweeping s_x requires a fixed beta")
            BeamSplitterAngle(self.beta)
            edge = max(self.lo * self.lo, self.hi * self.hi)
            if edge > self.lam + 1e-12:
                raise InvalidInputError("s_x range must stay within +-sqrt(lam)")
        else:
            if self.s_x is None:
                raise InvalidInputError("sweeping beta requires a fixed s_x")
            if self.s_x * self.s_x > self.lam + 1e-12:
                raise InvalidInputError("fixed s_x must satisfy s_x^2 <= lam")
            if self.lo < 0.0 or self.hi > math.pi:
                raise InvalidInputError("beta range must stay within [0, pi]")

    def grid(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.steps)


def _state_at(lam: float, s_x: float, yz_angle: float) -> BlochState:
    r = math.sqrt(max(lam - s_x * s_x, 0.0))
    return BlochState(s_x, r * math.sin(yz_angle), r * math.cos(yz_angle))


def _sweep_row(spec: SweepSpec, value: float) -> list[float]:
    if spec.swept == "s_x":
        s_x, beta = float(value), BeamSplitterAngle(spec.beta)
    else:
        s_x, beta = spec.s_x, BeamSplitterAngle(float(value))
    state = _state_at(spec.lam, s_x, spec.yz_angle)
    det = DetectorConfig(spec.a_overlap, spec.gamma, spec.delta)
    weights = path_weights(s_x, beta)
    return [
        visibility_closed(state, spec.a_overlap, beta),
        visibility_scan(state, det, beta, grid_size=spec.scan_grid),
        distinguishability_closed(s_x, beta, spec.a_overlap),
        distinguishability_trace_norm(det, weights),
        complementarity_residual(state, spec.a_overlap, beta),
        weights.omega_a,
        weights.omega_b,
    ]


def run_sweep(spec: SweepSpec) -> list[str]:
    """CSV lines (header first) for the sweep; degenerate points get empty fields."""
    lines = [SWEEP_HEADER]
    for value in spec.grid():
        try:
            fields = [_fmt(v) for v in _sweep_row(spec, float(value))]
        except DualityError as exc:
            print(
                f"warning: {spec.swept}={_fmt(float(value))} is degenerate ({exc})",
                file=sys.stderr,
            )
            fields = [""] * 7
        lines.append(",".join([_fmt(float(value))] + fields))
    return lines


# --- figure presets -----------------------------------------------------------

_BETA_CURVES = (("beta=pi/4", math.pi / 4), ("beta=pi/2", math.pi / 2), ("beta=3pi/4", 3 * math.pi / 4))
_SX_CURVES = (("sx=-0.5", -0.5), ("sx=0", 0.0), ("sx=0.5", 0.5))


def _visibility_sx_table(lam: float, a_overlap: float) -> list[str]:
    lines = ["curve,param,V_closed"]
    lo = math.sqrt(lam)
    grid = np.linspace(-lo, lo, FIGURE_POINTS)
    for label, beta_value in _BETA_CURVES:
        beta = BeamSplitterAngle(beta_value)
        for s_x in grid:
            state = _state_at(lam, float(s_x), 0.0)
            v = visibility_closed(state, a_overlap, beta)
            lines.append(f"{label},{_fmt(float(s_x))},{_fmt(v)}")
    return lines


def _visibility_beta_table(lam: float, a_overlap: float) -> list[str]:
    lines = ["curve,param,V_closed"]
    grid = np.linspace(0.0, math.pi, FIGURE_POINTS)
    for label, s_x in _SX_CURVES:
        state = _state_at(lam, s_x, 0.0)
        for beta_value in grid:
            v = visibility_closed(state, a_overlap, BeamSplitterAngle(float(beta_value)))
            lines.append(f"{label},{_fmt(float(beta_value))},{_fmt(v)}")
    return lines


def _distinguishability_sx_table(a_overlap: float) -> list[str]:
    lines = ["curve,param,D_closed"]
    grid = np.linspace(-1.0, 1.0, FIGURE_POINTS)
    for label, beta_value in _BETA_CURVES:
        beta = BeamSplitterAngle(beta_value)
        for s_x in grid:
            d = distinguishability_closed(float(s_x), beta, a_overlap)
            lines.append(f"{label},{_fmt(float(s_x))},{_fmt(d)}")
    return lines


def _distinguishability_beta_table(a_overlap: float) -> list[str]:
    lines = ["curve,param,D_closed"]
    grid = np.linspace(0.0, math.pi, FIGURE_POINTS)
    for label, s_x in _SX_CURVES:
        for beta_value in grid:
            d = distinguishability_closed(s_x, BeamSplitterAngle(float(beta_value)), a_overlap)
            lines.append(f"{label},{_fmt(float(beta_value))},{_fmt(d)}")
    return lines


def figure_tables() -> dict[str, list[str]]:
    """The eight bundled preset curve families, keyed by file stem."""
    third = 1.0 / 3.0
    return {
        "fig2a": _visibility_sx_table(lam=9.0 / 25.0, a_overlap=third),
        "fig2b": _visibility_beta_table(lam=9.0 / 25.0, a_overlap=third),
        "fig2c": _visibility_sx_table(lam=1.0, a_overlap=third),
        "fig2d": _visibility_beta_table(lam=1.0, a_overlap=third),
        "fig3a": _distinguishability_sx_table(a_overlap=third),
        "fig3b": _distinguishability_beta_table(a_overlap=third),
        "fig3c": _distinguishability_sx_table(a_overlap=0.8),
        "fig3d": _distinguishability_beta_table(a_overlap=0.8),
    }


def _write_lines(path, lines: list[str]) -> None:
    with open(path, "w", encoding="ascii", newline="") as handle:
        handle.write("\n".join(lines) + "\n")


# --- subcommand handlers --------------------------------------------------------


def _cmd_report(args) -> int:
    state = BlochState(args.sx, args.sy, args.sz)
    det = DetectorConfig(args.a_overlap, args.gamma, args.delta)
    beta = BeamSplitterAngle(args.beta)
    report = duality_report(state, det, beta)
    weights = path_weights(args.sx, beta)
    payload = {
        "visibility": report.visibility,
        "distinguishability": report.distinguishability,
        "v2_plus_d2": report.visibility**2 + report.distinguishability**2,
        "residual": report.residual,
        "omega_a": weights.omega_a,
        "omega_b": weights.omega_b,
    }
    print(json.dumps(payload))
    return 0


def _cmd_sweep(args) -> int:
    fixed = {"beta": args.beta, "s_x": args.sx}
    spec = SweepSpec(
        swept=args.param,
        lo=args.lo,
        hi=args.hi,
        steps=args.steps,
        lam=args.lam,
        a_overlap=args.a_overlap,
        beta=fixed["beta"],
        s_x=fixed["s_x"],
        gamma=args.gamma,
        delta=args.delta,
        yz_angle=args.yz_angle,
        scan_grid=args.scan_grid,
    )
    _write_lines(args.out, run_sweep(spec))
    return 0


def _cmd_figures(args) -> int:
    os.makedirs(args.out_dir, exist_ok=True)
    for stem, lines in figure_tables().items():
        _write_lines(os.path.join(args.out_dir, f"{stem}.csv"), lines)
    return 0


def _cmd_verify(args) -> int:
    settings: dict = {}
    if args.config is not None:
        with open(args.config, "r", encoding="utf-8") as handle:
            try:
                settings = json.load(handle)
            except json.JSONDecodeError as exc:
                raise InvalidInputError(f"config file is not valid JSON: {exc}") from exc
        unknown = set(settings) - {"seed", "draws", "tolerances"}
        if unknown:
            raise InvalidInputError(f"unknown config keys: {sorted(unknown)}")
    tolerances = dict(settings.get("tolerances", {}))
    for item in args.tolerance:
        name, _, value = item.partition("=")
        if not value:
            raise InvalidInputError(f"tolerance override must look like name=value: {item!r}")
        tolerances[name] = float(value)
    config = RunConfig(
        seed=args.seed if args.seed is not None else int(settings.get("seed", 42)),
        draws=args.draws if args.draws is not None else int(settings.get("draws", 1000)),
        tolerances=tolerances,
    )
    summary = run_verification(config)
    print(json.dumps(summary, indent=2, sort_keys=True))
    return 0 if all_passed(summary) else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mzi-duality",
        description=(
            "Fringe visibility, which-path distinguishability, and their "
            "complementarity in a two-path interferometer with an asymmetric "
            "output beam splitter. Angle options accept radians or pi "
            "notation such as pi/2 and 3pi/4."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    report = sub.add_parser("report", help="duality report for one parameter point")
    report.add_argument("--sx", type=float, default=0.0, help="Bloch s_x")
    report.add_argument("--sy", type=float, default=0.0, help="Bloch s_y")
    report.add_argument("--sz", type=float, default=0.0, help="Bloch s_z")
    report.add_argument("--A", dest="a_overlap", type=float, default=1.0,
                        help="detector overlap magnitude |<r|U|r>|")
    report.add_argument("--gamma", type=parse_angle, default=0.0, help="overlap phase")
    report.add_argument("--delta", type=parse_angle, default=0.0,
                        help="free off-diagonal phase of the marking unitary")
    report.add_argument("--beta", type=parse_angle, default=math.pi / 2,
                        help="recombining beam-splitter angle")
    report.set_defaults(handler=_cmd_report)

    sweep = sub.add_parser("sweep", help="one-parameter sweep written as CSV")
    sweep.add_argument("--param", choices=["s_x", "sx", "beta"], required=True,
                       help="which parameter to sweep")
    sweep.add_argument("--lo", type=parse_angle, required=True)
    sweep.add_argument("--hi", type=parse_angle, required=True)
    sweep.add_argument("--steps", type=int, required=True)
    sweep.add_argument("--lam", type=float, required=True,
                       help="squared Bloch length, held fixed along the sweep")
    sweep.add_argument("--A", dest="a_overlap", type=float, required=True)
    sweep.add_argument("--beta", type=parse_angle, default=None,
                       help="fixed beta (required when sweeping s_x)")
    sweep.add_argument("--sx", type=float, default=None,
                       help="fixed s_x (required when sweeping beta)")
    sweep.add_argument("--gamma", type=parse_angle, default=0.0)
    sweep.add_argument("--delta", type=parse_angle, default=0.0)
    sweep.add_argument("--yz-angle", dest="yz_angle", type=parse_angle, default=0.0,
                       help="direction of the (s_y, s_z) share of lam")
    sweep.add_argument("--scan-grid", dest="scan_grid", type=int, default=4096,
                       help="phase-grid size of the visibility scan oracle")
    sweep.add_argument("--out", required=True, help="output CSV path")
    sweep.set_defaults(handler=_cmd_sweep)

    figures = sub.add_parser("figures", help="write the eight bundled preset CSVs")
    figures.add_argument("--out-dir", dest="out_dir", required=True)
    figures.set_defaults(handler=_cmd_figures)

    verify = sub.add_parser("verify", help="run the randomized verification suites")
    verify.add_argument("--seed", type=int, default=None)
    verify.add_argument("--draws", type=int, default=None)
    verify.add_argument("--config", default=None, help="JSON file with seed/draws/tolerances")
    verify.add_argument("--tolerance", action="append", default=[],
                        metavar="NAME=VALUE", help="per-suite tolerance override")
    verify.set_defaults(handler=_cmd_verify)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    if getattr(args, "param", None) == "sx":
        args.param = "s_x"
    try:
        return args.handler(args)
    except DualityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
