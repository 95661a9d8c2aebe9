"""Batch command-line front door.

    bolab <command> [--config cfg.json] [--out dir] [--seed n] [overrides...]

Config files hold {"command": ..., "parameters": {...}, "output_dir": ...,
"seed": ...}; explicit flags override file values.  Every run writes
manifest.json (config echo, versions, wall time) next to its CSV/JSON
outputs.  Exit status: 0 pass-verdict, 2 fail-verdict, 1 error.  CSV bodies
are byte-identical across runs with the same seed.
"""

from __future__ import annotations

import argparse
import json
import math
import re
import sys
import time
from pathlib import Path

import jsonschema
import numpy as np

from . import __version__
from .bourgain import WindowedField, free_wave_window, strichartz_ratio
from .counting import max_ratio_sweep, modulation_pair_count
from .errors import BolabError, ConfigError
from .evolution import EvolutionConfig, evolve
from .experiments import (
    ExperimentReport,
    IllposednessConfig,
    free_approximation_check,
    galilean_symmetry_check,
    nonuniform_continuity_demo,
    scaling_symmetry_check,
)
from .gauge import (
    build_gauge,
    f_equation_residual,
    high_mode_part,
    reconstruct_high_modes,
    reconstruct_u,
    w_equation_residual,
)
from .invariants import drift
from .io import save_trajectory, trajectory_rows
from .reports import validate_against_schema, write_csv, write_json, write_report
from .rng import SplitMix64, random_real_field
from .spectral import PeriodicGrid, from_harmonics, to_spectral

COMMANDS = ("evolve", "gauge-check", "illposed", "approx", "strichartz",
            "counting", "scaling", "galilean", "drift")

_TERM_RE = re.compile(
    r"^([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*\*?\s*(cos|sin)?\s*(?:\((\d+)\))?$")


def parse_field_spec(grid, text, seed=0):
    """Initial-data DSL: "cos", "sin(3)", "cos+0.3*cos(2)", "2+sin", or
    "random:band=8,amp=1.0" (seeded band-limited noise)."""
    text = text.strip()
    if text.startswith("random"):
        opts = {}
        if ":" in text:
            for kv in text.split(":", 1)[1].split(","):
                k, v = kv.split("=")
                opts[k.strip()] = float(v)
        return random_real_field(
            grid, SplitMix64(seed),
            max_mode=int(opts.get("band", 8)),
            amplitude=opts.get("amp", 1.0),
            mean_zero=opts.get("mean", 0.0) == 0.0)
    cos, sin, constant = {}, {}, 0.0
    for piece in text.replace("-", "+-").split("+"):
        piece = piece.strip()
        if not piece or piece == "-":
            continue
        m = _TERM_RE.match(piece)
        if not m:
            raise ConfigError(f"cannot parse initial-data term {piece!r}")
        coef = float(m.group(1)) if m.group(1) not in (None, "", "+", "-") else (
            -1.0 if m.group(1) == "-" else 1.0)
        kind, kstr = m.group(2), m.group(3)
        if kind is None:
            constant += coef
        else:
            k = int(kstr) if kstr else 1
            target = cos if kind == "cos" else sin
            target[k] = target.get(k, 0.0) + coef
    return from_harmonics(grid, cos=cos, sin=sin, constant=constant)


def _evolution_config(p):
    grid = PeriodicGrid(p["lam"], p["N"])
    return grid, EvolutionConfig(
        grid=grid, dt=p["dt"], t_final=p["T"], alpha=p["alpha"],
        integrator=p["integrator"], snapshot_stride=p["stride"],
        conservative=bool(p["conservative"]))


def _drift_rows(traj, quantities, cubic_sign, s):
    rows = []
    reports = {}
    for q in quantities:
        rep = drift(traj, q, cubic_sign=cubic_sign, s=s)
        reports[q] = rep
        for t, v, base in zip(rep.times, rep.values, [rep.values[0]] * len(rep.values)):
            scale = abs(base) if abs(base) > 1e-8 else 1.0
            rows.append({"quantity": q, "t": float(t), "value": float(v),
                         "relative_drift": abs(v - base) / scale})
    return rows, reports


def _cmd_evolve(p, out, seed):
    grid, cfg = _evolution_config(p)
    u0 = parse_field_spec(grid, p["u0"], seed)
    traj = evolve(u0, cfg)
    header, rows = trajectory_rows(traj)
    write_csv(out / "trajectory.csv", header,
              [dict(zip(header, r)) for r in rows])
    save_trajectory(out / "snapshots.bin", traj)
    drift_rows, reports = _drift_rows(
        traj, ("mean", "momentum", "energy", "h_norm"), p["cubic_sign"], p["s"])
    write_csv(out / "drift.csv", ("quantity", "t", "value", "relative_drift"), drift_rows)
    mean_ok = reports["mean"].max_relative_drift <= 1e-10
    report = ExperimentReport(
        name="evolve",
        config=p,
        rows=[{"quantity": q, "max_relative_drift": r.max_relative_drift}
              for q, r in reports.items()],
        verdict=bool(mean_ok),
        summary={"snapshots": len(traj.states), "t_final": float(traj.times[-1])})
    write_report(report, out)
    return report.verdict, ["trajectory.csv", "snapshots.bin", "drift.csv",
                            "evolve.csv", "evolve.json"]


def _cmd_drift(p, out, seed):
    grid, cfg = _evolution_config(p)
    u0 = parse_field_spec(grid, p["u0"], seed)
    traj = evolve(u0, cfg)
    quantities = tuple(q.strip() for q in p["quantity"].split(",")) \
        if p["quantity"] != "all" else ("mean", "momentum", "energy", "h_norm")
    rows, reports = _drift_rows(traj, quantities, p["cubic_sign"], p["s"])
    report = ExperimentReport(
        name="drift", config=p, rows=rows, verdict=True,
        summary={q: r.max_relative_drift for q, r in reports.items()})
    write_report(report, out,
                 csv_fields=("quantity", "t", "value", "relative_drift"))
    return True, ["drift.csv", "drift.json"]


def _cmd_gauge_check(p, out, seed):
    grid, cfg = _evolution_config(p)
    u0 = parse_field_spec(grid, p["u0"], seed)
    from .spectral import project
    u0 = u0 - project(u0, "zero")
    traj = evolve(u0, cfg)

    residual_rows, maxima = [], {}
    for mode in p["modes"].split(","):
        mode = mode.strip()
        for series in (f_equation_residual(traj, mode), w_equation_residual(traj, mode)):
            maxima[f"{series.equation}_{mode}"] = float(series.values.max())
            for t, v in zip(series.times, series.values):
                residual_rows.append({"equation": series.equation, "mode": mode,
                                      "t": float(t), "residual_l2": float(v)})
    write_csv(out / "residuals.csv", ("equation", "mode", "t", "residual_l2"),
              residual_rows)

    recon_rows = []
    for t, state in zip(traj.times, traj.states):
        gs = build_gauge(state)
        scale = max(state.l2_norm(), 1e-300)  # field scale; P_{>1}u may vanish
        full = (reconstruct_u(gs) - state).l2_norm() / scale
        target = high_mode_part(state)
        high = (reconstruct_high_modes(gs) - target).l2_norm() / scale
        recon_rows.append({"t": float(t), "full_rel_l2": full, "high_rel_l2": high,
                           "w_identity_residual": gs.w_identity_residual})
    write_csv(out / "reconstruction.csv",
              ("t", "full_rel_l2", "high_rel_l2", "w_identity_residual"), recon_rows)

    exact_ok = all(v <= p["residual_tol"] for k, v in maxima.items() if "exact" in k)
    recon_ok = all(r["full_rel_l2"] <= p["recon_tol"] and r["high_rel_l2"] <= p["recon_tol"]
                   for r in recon_rows)
    report = ExperimentReport(
        name="gauge-check", config=p,
        rows=[{"check": k, "max_residual": v} for k, v in sorted(maxima.items())],
        verdict=bool(exact_ok and recon_ok),
        summary={"residual_maxima": maxima,
                 "max_full_rel": max(r["full_rel_l2"] for r in recon_rows),
                 "max_high_rel": max(r["high_rel_l2"] for r in recon_rows)})
    write_report(report, out)
    return report.verdict, ["residuals.csv", "reconstruction.csv",
                            "gauge-check.csv", "gauge-check.json"]


def _cmd_illposed(p, out, seed):
    cfg = IllposednessConfig(
        s=p["s"], alpha=p["alpha"], lambda_list=tuple(p["lambdas"]),
        delta=p["delta"], cross_check=bool(p["crosscheck"]))
    report = nonuniform_continuity_demo(cfg)
    write_report(report, out)
    return report.verdict, ["illposed.csv", "illposed.json"]


def _cmd_approx(p, out, seed):
    cfg = IllposednessConfig(
        s=p["s"], alpha=p["alpha"], lambda_list=tuple(p["lambdas"]), delta=p["delta"])
    report = free_approximation_check(cfg, slope_tol=p["slope_tol"])
    write_report(report, out)
    return report.verdict, ["approx.csv", "approx.json"]


def survey_time_samples(n_modes, t_window, lam=1.0):
    """Even time-sample count resolving the fastest dispersive phase."""
    xi_max = n_modes / (2 * lam)
    need = t_window * xi_max**2 / math.pi
    n = 64
    while n < 1.1 * need:
        n *= 2
    return n


def _survey_sample(grid, t_window, n_time, rng, kind):
    half = grid.n_modes // 2
    if kind == 2:  # fully random space-time coefficients
        samples = rng.complex_normals(n_time * grid.n_modes).reshape(n_time, grid.n_modes)
        return WindowedField(grid, t_window, samples)
    coeffs = np.zeros(grid.n_modes, dtype=complex)
    for k in range(1, half):
        c = rng.normal() + 1j * rng.normal()
        coeffs[k] = c
        coeffs[-k] = np.conj(c)
    w = free_wave_window(to_spectral(grid, np.zeros(grid.n_modes)).with_coeffs(coeffs),
                         t_window, n_time)
    if kind == 1:  # slowly modulated free wave
        fr = 1 + rng.choice_index(3)
        phase = 2 * math.pi * rng.uniform()
        env = 1.0 + 0.5 * np.cos(2 * math.pi * fr * w.times / t_window + phase)
        return WindowedField(grid, t_window, env[:, None] * w.samples)
    return w


def _cmd_strichartz(p, out, seed):
    rows = []
    maxima = {}
    baselines = {}
    for n_modes in p["resolutions"]:
        grid = PeriodicGrid(1.0, int(n_modes))
        n_time = survey_time_samples(grid.n_modes, p["T"])
        single = from_harmonics(grid, cos={1: 1.0})
        r0 = strichartz_ratio(free_wave_window(single, p["T"], n_time))
        baselines[int(n_modes)] = r0
        rng = SplitMix64(seed + 1000003 * int(n_modes))
        best = 0.0
        for i in range(p["samples"]):
            w = _survey_sample(grid, p["T"], n_time, rng, kind=i % 3)
            ratio = strichartz_ratio(w)
            best = max(best, ratio)
            rows.append({"sample_id": i, "N": int(n_modes), "T": p["T"],
                         "ratio": ratio, "bound": r0, "ratio_over_bound": ratio / r0})
        maxima[int(n_modes)] = best
    ns = sorted(maxima)
    if len(ns) >= 2:
        slope = float(np.polyfit(np.log(ns), [maxima[n] for n in ns], 1)[0])
        verdict = slope <= p["slope_tol"]
    else:
        slope, verdict = float("nan"), False
    report = ExperimentReport(
        name="strichartz", config=p,
        rows=rows, verdict=bool(verdict),
        summary={"max_ratio_per_N": {str(k): v for k, v in maxima.items()},
                 "baseline_per_N": {str(k): v for k, v in baselines.items()},
                 "slope_vs_logN": slope, "slope_tol": p["slope_tol"],
                 "tau_resolution": {str(int(n)): math.pi / p["T"] for n in p["resolutions"]}})
    write_report(report, out,
                 csv_fields=("sample_id", "N", "T", "ratio", "bound", "ratio_over_bound"))
    return report.verdict, ["strichartz.csv", "strichartz.json"]


def _cmd_counting(p, out, seed):
    cells, overall = max_ratio_sweep(p["Mmax"], p["n_range"])
    rows = [{"m1": c.m1, "m2": c.m2, "max_alpha": c.max_count, "bound": c.bound,
             "ratio": c.ratio, "argmax_tau": c.argmax_tau, "argmax_n": c.argmax_n}
            for c in cells]
    hand = modulation_pair_count(0, 0, 1, 1, 0)
    report = ExperimentReport(
        name="counting", config=p, rows=rows,
        verdict=bool(hand == 3 and all(r["ratio"] <= overall for r in rows)),
        summary={"C": overall, "hand_cell_m1_m2_1_tau_n_0": hand,
                 "hand_cell_expected": 3})
    write_report(report, out,
                 csv_fields=("m1", "m2", "max_alpha", "bound", "ratio",
                             "argmax_tau", "argmax_n"))
    return report.verdict, ["counting.csv", "counting.json"]


def _cmd_scaling(p, out, seed):
    grid, cfg = _evolution_config(p)
    u0 = parse_field_spec(grid, p["u0"], seed)
    report = scaling_symmetry_check(u0, int(p["scale"]), cfg, tol=p["tol"])
    write_report(report, out)
    return report.verdict, ["scaling.csv", "scaling.json"]


def _cmd_galilean(p, out, seed):
    grid, cfg = _evolution_config(p)
    u0 = parse_field_spec(grid, p["u0"], seed)
    report = galilean_symmetry_check(u0, p["omega"], cfg, tol=p["tol"])
    write_report(report, out)
    return report.verdict, ["galilean.csv", "galilean.json"]


_EVOLVE_DEFAULTS = {
    "u0": "cos", "N": 64, "lam": 1.0, "alpha": 0.5, "dt": 1e-3, "T": 0.1,
    "stride": 1, "integrator": "etdrk4", "conservative": False,
    "cubic_sign": -1, "s": 0.5,
}

_DEFAULTS = {
    "evolve": dict(_EVOLVE_DEFAULTS),
    "drift": dict(_EVOLVE_DEFAULTS, quantity="all", stride=10, T=1.0, N=256),
    "gauge-check": dict(_EVOLVE_DEFAULTS, u0="cos", N=256, T=0.2,
                        stride=20, modes="exact,fd",
                        residual_tol=1e-6, recon_tol=1e-8),
    "illposed": {"s": 1.0, "alpha": 0.5, "lambdas": [8, 16, 32, 64],
                 "delta": 0.05, "crosscheck": True},
    "approx": {"s": 1.0, "alpha": 0.5, "lambdas": [8, 16, 32, 64],
               "delta": 0.05, "slope_tol": 0.3},
    "strichartz": {"resolutions": [32, 64, 128], "samples": 500, "T": 1.0,
                   "slope_tol": 0.05},
    "counting": {"Mmax": 64, "n_range": 64},
    "scaling": dict(_EVOLVE_DEFAULTS, scale=2, N=256, T=1.0, stride=100, tol=1e-7),
    "galilean": dict(_EVOLVE_DEFAULTS, omega=0.3, N=256, T=1.0, stride=100, tol=1e-7),
}

_HANDLERS = {
    "evolve": _cmd_evolve,
    "drift": _cmd_drift,
    "gauge-check": _cmd_gauge_check,
    "illposed": _cmd_illposed,
    "approx": _cmd_approx,
    "strichartz": _cmd_strichartz,
    "counting": _cmd_counting,
    "scaling": _cmd_scaling,
    "galilean": _cmd_galilean,
}

_INT_LIST = ("lambdas", "resolutions")


def _coerce(key, value, reference):
    if key in _INT_LIST:
        if isinstance(value, str):
            return [int(v) for v in value.split(",")]
        return [int(v) for v in value]
    if isinstance(reference, bool):
        if isinstance(value, str):
            return value.lower() in ("1", "true", "yes", "on")
        return bool(value)
    if isinstance(reference, int) and not isinstance(reference, bool):
        return int(value)
    if isinstance(reference, float):
        return float(value)
    return value


def build_parser():
    parser = argparse.ArgumentParser(
        prog="bolab",
        description="Pseudospectral laboratory for the periodic Benjamin-Ono family")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--config", type=Path, default=None,
                        help="JSON run configuration; flags override its values")
    parser.add_argument("--out", type=Path, default=None, help="output directory")
    parser.add_argument("--seed", type=int, default=None, help="survey PRNG seed")
    parser.add_argument("--set", dest="overrides", action="append", default=[],
                        metavar="KEY=VALUE", help="override a command parameter")
    return parser


def _resolve(args):
    command = args.command
    params = dict(_DEFAULTS[command])
    seed = 0
    out_dir = Path("runs") / command
    if args.config is not None:
        with open(args.config, "r", encoding="utf-8") as fh:
            cfg = json.load(fh)
        validate_against_schema(cfg, "config")
        if cfg.get("command") != command:
            raise ConfigError(
                f"config file is for command {cfg.get('command')!r}, not {command!r}")
        for k, v in cfg.get("parameters", {}).items():
            if k not in params:
                raise ConfigError(f"unknown parameter {k!r} for command {command!r}")
            params[k] = _coerce(k, v, _DEFAULTS[command].get(k))
        if "seed" in cfg:
            seed = int(cfg["seed"])
        if "output_dir" in cfg:
            out_dir = Path(cfg["output_dir"])
    for item in args.overrides:
        if "=" not in item:
            raise ConfigError(f"--set expects KEY=VALUE, got {item!r}")
        k, v = item.split("=", 1)
        if k not in params:
            raise ConfigError(f"unknown parameter {k!r} for command {command!r}")
        params[k] = _coerce(k, v, _DEFAULTS[command].get(k))
    if args.seed is not None:
        seed = args.seed
    if args.out is not None:
        out_dir = args.out
    return command, params, out_dir, seed


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code not in (0,) else 0
    t0 = time.monotonic()
    try:
        command, params, out_dir, seed = _resolve(args)
        out_dir.mkdir(parents=True, exist_ok=True)
        verdict, outputs = _HANDLERS[command](params, out_dir, seed)
    except BolabError as exc:
        print(f"bolab: {command_name(args)}: {exc}", file=sys.stderr)
        return 1
    except jsonschema.ValidationError as exc:
        print(f"bolab: {command_name(args)}: invalid configuration: {exc.message}",
              file=sys.stderr)
        return 1
    except (OSError, json.JSONDecodeError) as exc:
        print(f"bolab: {command_name(args)}: {exc}", file=sys.stderr)
        return 1
    manifest = {
        "command": command,
        "config": {"command": command, "parameters": params,
                   "output_dir": str(out_dir), "seed": seed},
        "seed": seed,
        "versions": {"bolab": __version__,
                     "python": sys.version.split()[0],
                     "numpy": np.__version__},
        "wall_time_s": time.monotonic() - t0,
        "verdict": verdict,
        "exit_code": 0 if verdict else 2,
        "outputs": outputs,
        "tau_resolution": math.pi / params["T"] if command == "strichartz" else None,
    }
    validate_against_schema(manifest, "manifest")
    write_json(out_dir / "manifest.json", manifest)
    return 0 if verdict else 2


def command_name(args):
    return getattr(args, "command", "?")


if __name__ == "__main__":
    sys.exit(main())
