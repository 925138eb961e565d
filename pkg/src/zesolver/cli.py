"""Scenario runner: config-driven timeline, profile, compare, general modes.

Config files are flat INI key/value sections:

    [mixture]            # problem instance (required except for `general`)
    mu1 = 5
    mu2 = 8
    q1 = 2
    q2 = 10
    x1 = -1
    x2 = 1

    [output]
    times = 0.01, 0.0125     # isochrone times
    samples = 1024           # samples per profile
    format = csv             # csv | json (timeline only)

    [fv]                     # compare mode
    cells = 1000, 2000, 4000 # one run per entry
    cfl = 0.45
    x_min = -3
    x_max = 7

    [general]                # general-Cauchy mode
    breakpoints = -1, 1
    r1_values = 5, 2, 5
    r2_values = 8, 10, 8
    domain = -21, 21
    window = -2, 6

Command-line flags override the matching config keys.  Exit codes:
0 success, 2 parameter/config validation failure, 3 solver failure.
"""

from __future__ import annotations

import argparse
import configparser
import json
import sys
from pathlib import Path

import numpy as np

from . import fv_reference
from .cauchy_general import PiecewiseInitialData, general_profile
from .errors import OrderingViolation, SolverError
from .invariants import MixtureParams, validate_params
from .isochrone import ScenarioSolver
from .svgplot import SvgPlot


def _parse_floats(text):
    return [float(v) for v in str(text).replace(",", " ").split()]


def _parse_ints(text):
    return [int(v) for v in str(text).replace(",", " ").split()]


class ScenarioConfig:
    """Parsed configuration with CLI overrides applied."""

    def __init__(self, path=None):
        self.cp = configparser.ConfigParser()
        if path is not None:
            read = self.cp.read(path)
            if not read:
                raise FileNotFoundError(f"config file not found: {path}")

    def mixture(self) -> MixtureParams:
        sec = self.cp["mixture"]
        return MixtureParams(
            mu1=sec.getfloat("mu1"), mu2=sec.getfloat("mu2"),
            q1=sec.getfloat("q1"), q2=sec.getfloat("q2"),
            x1=sec.getfloat("x1"), x2=sec.getfloat("x2"),
        )

    def get(self, section, key, fallback=None):
        if self.cp.has_option(section, key):
            return self.cp.get(section, key)
        return fallback

    def general_data(self) -> PiecewiseInitialData:
        sec = self.cp["general"]
        domain = _parse_floats(sec.get("domain"))
        return PiecewiseInitialData(
            breakpoints=tuple(_parse_floats(sec.get("breakpoints", ""))),
            r1_values=tuple(_parse_floats(sec.get("r1_values"))),
            r2_values=tuple(_parse_floats(sec.get("r2_values"))),
            domain=(domain[0], domain[1]),
        )


def _time_tag(t):
    return f"{t:.6f}"


def write_profile_csv(profile, path):
    with open(path, "w", encoding="utf-8") as fh:
        for row in profile.csv_rows():
            fh.write(row + "\n")


def _profile_svg(profile, boundaries, path, title):
    plot = SvgPlot(title=title, xlabel="x", ylabel="u")
    plot.add_series("u1", profile.x, profile.u1)
    plot.add_series("u2", profile.x, profile.u2)
    for x, label in boundaries:
        plot.add_vline(x, label)
    plot.write(path)


def _zone_boundaries(solver, profile):
    """(x, curve label) pairs marking zone edges inside the profile span."""
    marks = []
    runs = profile.zone_runs()
    for (za, sa), (zb, sb) in zip(runs, runs[1:]):
        marks.append((profile.x[sb.start], f"{za}|{zb}"))
    return marks


def cmd_timeline(cfg: ScenarioConfig, out_dir: Path, fmt: str) -> int:
    params = validate_params(cfg.mixture())
    solver = ScenarioSolver(params)
    tl = solver.timeline
    out_dir.mkdir(parents=True, exist_ok=True)
    if fmt == "json":
        path = out_dir / "timeline.json"
        path.write_text(json.dumps(tl.to_dict(), indent=2, sort_keys=True) + "\n")
    else:
        path = out_dir / "timeline.txt"
        path.write_text("\n".join(tl.report_lines()) + "\n")
    for e in tl.events:
        print(f"{e.label}: T={e.T!r} X={e.X!r}")
    print(f"wrote {path}")
    return 0


def cmd_profile(cfg: ScenarioConfig, out_dir: Path, times, samples) -> int:
    params = validate_params(cfg.mixture())
    solver = ScenarioSolver(params)
    out_dir.mkdir(parents=True, exist_ok=True)
    for t in times:
        profile = solver.profile_at(t, n=samples)
        tag = _time_tag(t)
        write_profile_csv(profile, out_dir / f"profile_t{tag}.csv")
        _profile_svg(
            profile,
            _zone_boundaries(solver, profile),
            out_dir / f"profile_t{tag}.svg",
            title=f"concentrations at t = {tag}",
        )
        print(f"wrote profile_t{tag}.csv / .svg")
    return 0


def _analytic_shocks(solver, t):
    """Positions of the two strong discontinuities at time t."""
    T = solver.timeline.times
    if t < T["T_9"]:
        x1 = solver.timeline.curves["xs1"].x(t)
    else:
        x1 = solver.shock_boundary(1, t * (1 + 1e-9)).X_at(t)
    if t < T["T_10"]:
        x2 = solver.timeline.curves["xs2"].x(t)
    else:
        x2 = solver.shock_boundary(2, t * (1 + 1e-9)).X_at(t)
    return x1, x2


def cmd_compare(cfg: ScenarioConfig, out_dir: Path, times, cells_list, cfl) -> int:
    params = validate_params(cfg.mixture())
    solver = ScenarioSolver(params)
    out_dir.mkdir(parents=True, exist_ok=True)
    x_min = float(cfg.get("fv", "x_min", -3.0))
    x_max = float(cfg.get("fv", "x_max", 7.0))
    summary = {}
    for t in times:
        profile = solver.profile_at(t, n=8192, window=(x_min - 1.0, x_max + 1.0))
        xs1, xs2 = _analytic_shocks(solver, t)
        runs = []
        for cells in cells_list:
            grid = fv_reference.Grid1D(x_min, x_max, cells, cfl)
            result = fv_reference.fv_run(params, grid, t)
            e1, e2 = fv_reference.l1_error(result, profile)
            d1 = abs(fv_reference.steepest_gradient_x(result, 1) - xs1) / grid.dx
            d2 = abs(fv_reference.steepest_gradient_x(result, 2) - xs2) / grid.dx
            runs.append(
                {
                    "cells": cells,
                    "l1_u1": e1,
                    "l1_u2": e2,
                    "shock1_dev_cells": d1,
                    "shock2_dev_cells": d2,
                }
            )
            print(
                f"t={t}: cells={cells} L1=({e1:.4g}, {e2:.4g}) "
                f"shock dev=({d1:.2f}, {d2:.2f}) cells"
            )
        summary[_time_tag(t)] = runs

        result = fv_reference.fv_run(
            params, fv_reference.Grid1D(x_min, x_max, cells_list[-1], cfl), t
        )
        ua1, ua2 = profile.interp(result.x)
        tag = _time_tag(t)
        R1, R2 = fv_reference.invariants_field(params, result.u1, result.u2)
        with open(out_dir / f"fv_t{tag}.csv", "w", encoding="utf-8") as fh:
            fh.write("x,R1,R2,u1,u2,zone\n")
            for i in range(result.x.size):
                fh.write(
                    f"{float(result.x[i])!r},{float(R1[i])!r},{float(R2[i])!r},"
                    f"{float(result.u1[i])!r},{float(result.u2[i])!r},fv\n"
                )
        with open(out_dir / f"compare_t{tag}.csv", "w", encoding="utf-8") as fh:
            fh.write("x,u1_fv,u2_fv,u1_exact,u2_exact\n")
            for i in range(result.x.size):
                fh.write(
                    f"{float(result.x[i])!r},{float(result.u1[i])!r},"
                    f"{float(result.u2[i])!r},{float(ua1[i])!r},{float(ua2[i])!r}\n"
                )
        plot = SvgPlot(title=f"exact vs finite-volume, t = {tag}", xlabel="x")
        plot.add_series("u1 exact", profile.x, profile.u1)
        plot.add_series("u2 exact", profile.x, profile.u2)
        plot.add_series("u1 fv", result.x, result.u1, dashed=True)
        plot.add_series("u2 fv", result.x, result.u2, dashed=True)
        plot.write(out_dir / f"compare_t{tag}.svg")
    (out_dir / "errors.json").write_text(
        json.dumps(summary, indent=2, sort_keys=True) + "\n"
    )
    print(f"wrote {out_dir / 'errors.json'}")
    return 0


def cmd_general(cfg: ScenarioConfig, out_dir: Path, times) -> int:
    data = cfg.general_data()
    window = _parse_floats(cfg.get("general", "window", "-10 10"))
    mobilities = None
    if cfg.cp.has_section("mixture"):
        p = cfg.mixture()
        mobilities = (p.mu1, p.mu2)
    out_dir.mkdir(parents=True, exist_ok=True)
    for t in times:
        result = general_profile(
            data, t, (window[0], window[1]), mobilities=mobilities
        )
        tag = _time_tag(t)
        path = out_dir / f"general_t{tag}.csv"
        u1 = getattr(result, "u1", np.full_like(result.x, np.nan))
        u2 = getattr(result, "u2", np.full_like(result.x, np.nan))
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("x,R1,R2,u1,u2,zone\n")
            for i in range(result.x.size):
                fh.write(
                    f"{float(result.x[i])!r},{float(result.R1[i])!r},"
                    f"{float(result.R2[i])!r},{float(u1[i])!r},{float(u2[i])!r},general\n"
                )
        print(
            f"wrote {path.name} (status {result.status}, "
            f"max drift {result.max_drift:.3g})"
        )
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="zesolver",
        description="Exact two-component zone-electrophoresis solver",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("timeline", "profile", "compare", "general"):
        sp = sub.add_parser(name)
        sp.add_argument("--config", required=True, help="INI config path")
        sp.add_argument("--out", default="out", help="output directory")
        sp.add_argument("--times", default=None, help="comma list of times")
        sp.add_argument("--samples", type=int, default=None)
        sp.add_argument("--cells", default=None, help="comma list of cell counts")
        sp.add_argument("--cfl", type=float, default=None)
        sp.add_argument("--format", default=None, choices=("csv", "json"))
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = ScenarioConfig(args.config)
        out_dir = Path(args.out)
        times = _parse_floats(
            args.times
            if args.times is not None
            else cfg.get("output", "times", "0.01")
        )
        if any(t <= 0 for t in times) or sorted(times) != times:
            raise OrderingViolation("output times must be positive and sorted")
        samples = (
            args.samples
            if args.samples is not None
            else int(cfg.get("output", "samples", 1024))
        )
        fmt = args.format or cfg.get("output", "format", "csv")

        if args.command == "timeline":
            return cmd_timeline(cfg, out_dir, fmt)
        if args.command == "profile":
            return cmd_profile(cfg, out_dir, times, samples)
        if args.command == "compare":
            cells = _parse_ints(
                args.cells if args.cells is not None else cfg.get("fv", "cells", "1000")
            )
            cfl = args.cfl if args.cfl is not None else float(
                cfg.get("fv", "cfl", 0.45)
            )
            return cmd_compare(cfg, out_dir, times, cells, cfl)
        if args.command == "general":
            return cmd_general(cfg, out_dir, times)
        raise ValueError(f"unknown command {args.command}")
    except (OrderingViolation, FileNotFoundError, KeyError, configparser.Error) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SolverError as exc:
        print(f"solver error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
