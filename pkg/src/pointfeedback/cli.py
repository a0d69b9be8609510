"""Command-line interface.

Subcommands:

* tilde-pa   sample the delayed response on a time grid, write CSV
* pa         sample the diffusive response (composition or contour route)
* simulate   run the direct solver against a scenario file, emit a report
* region     run a sign survey preset (or an explicit box), emit CSV+summary
* reproduce  write the CSV bundle behind one of the stock figures

Exit codes: 0 success, 2 usage or configuration error, 3 contour below a
pole (without --force), 4 a scenario expectation was violated, 5 unexpected
internal failure. All output files are byte-identical across reruns.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from . import boundary, dde, laplace, pde, survey, transfer
from ._csvio import config_hash, write_csv, write_json
from .errors import ConfigError, ContourBelowPole, PointFeedbackError
from .presets import FIGURE_IDS, INITIAL_PRESETS, SCENARIOS, SURVEY_PRESETS

_EXIT_OK = 0
_EXIT_CONFIG = 2
_EXIT_CONTOUR = 3
_EXIT_VIOLATION = 4
_EXIT_INTERNAL = 5


# ---------------------------------------------------------------------------
# scenario schema


_FORCING_KEYS = {"kind", "level", "onset", "rate", "t_points", "values"}
_INITIAL_KEYS = {
    "preset",
    "kind",
    "center",
    "width",
    "height",
    "x_points",
    "values",
    "claims_even",
    "claims_monotone_outside",
}
_EXPECTATION_KEYS = {"nonnegative_outside_unit", "max_oracle_discrepancy"}
_SCENARIO_KEYS = {
    "schema_version",
    "name",
    "amplitude",
    "forcing",
    "initial",
    "t_end",
    "dx",
    "dt",
    "domain_half_width",
    "scheme",
    "source_profile",
    "renewal_dt",
    "expectations",
}


def _reject_unknown(obj: dict, allowed: set, where: str) -> None:
    unknown = set(obj) - allowed
    if unknown:
        raise ConfigError(f"unknown key(s) {sorted(unknown)} in {where}")


def load_scenario(spec) -> dict:
    """Validate a scenario mapping; unknown keys anywhere are rejected."""
    if not isinstance(spec, dict):
        raise ConfigError("scenario must be a JSON object")
    _reject_unknown(spec, _SCENARIO_KEYS, "scenario")
    if spec.get("schema_version") != 1:
        raise ConfigError("scenario schema_version must be 1")
    for key in ("amplitude", "forcing", "initial", "t_end", "dx", "dt"):
        if key not in spec:
            raise ConfigError(f"scenario is missing required key {key!r}")
    if not isinstance(spec["forcing"], dict):
        raise ConfigError("forcing must be an object")
    _reject_unknown(spec["forcing"], _FORCING_KEYS, "forcing")
    if not isinstance(spec["initial"], dict):
        raise ConfigError("initial must be an object")
    _reject_unknown(spec["initial"], _INITIAL_KEYS, "initial")
    expectations = spec.get("expectations", {})
    if not isinstance(expectations, dict):
        raise ConfigError("expectations must be an object")
    _reject_unknown(expectations, _EXPECTATION_KEYS, "expectations")
    return spec


def _build_initial(spec: dict) -> boundary.InitialCondition:
    spec = dict(spec)
    preset = spec.pop("preset", None)
    if preset is not None:
        if preset not in INITIAL_PRESETS:
            raise ConfigError(f"unknown initial preset {preset!r}")
        merged = dict(INITIAL_PRESETS[preset])
        merged.update(spec)
        spec = merged
    for key in ("x_points", "values"):
        if key in spec:
            spec[key] = tuple(spec[key])
    return boundary.InitialCondition(**spec)


def _build_forcing(spec: dict) -> boundary.ForcingSpec:
    spec = dict(spec)
    for key in ("t_points", "values"):
        if key in spec:
            spec[key] = tuple(spec[key])
    return boundary.ForcingSpec(**spec)


# ---------------------------------------------------------------------------
# subcommands


def _cmd_tilde_pa(args) -> int:
    params = transfer.FeedbackParams(amplitude=args.a, offset=args.beta)
    ts = np.arange(args.dt, args.t_max + args.dt / 2.0, args.dt)
    vals = transfer.delayed_response(params, ts)
    cfg = {
        "command": "tilde-pa",
        "a": args.a,
        "beta": args.beta,
        "t_max": args.t_max,
        "dt": args.dt,
    }
    invocation = (
        f"pointfeedback tilde-pa --a {args.a!r} --beta {args.beta!r} "
        f"--t-max {args.t_max!r} --dt {args.dt!r}"
    )
    write_csv(
        args.out,
        ["t", "value"],
        zip(ts.tolist(), (float(v) for v in vals)),
        invocation,
        config_hash(cfg),
    )
    return _EXIT_OK


def _cmd_pa(args) -> int:
    params = transfer.FeedbackParams(amplitude=args.a, offset=args.beta)
    method = args.method
    if method == "auto":
        method = "subordinate" if args.a <= 2.0 else "bromwich"
    ts = np.arange(args.dt, args.t_max + args.dt / 2.0, args.dt)

    if method == "bromwich":
        default_cfg = transfer.default_contour(args.a)
        sigma = args.sigma if args.sigma is not None else default_cfg.sigma
        cfg_b = laplace.BromwichConfig(
            sigma=sigma, half_width=args.half_width, n_nodes=args.n_nodes
        )
        pole_max = -math.inf
        if args.a != 0.0:
            ps = transfer.pole_set(args.a, 3, "diffusive")
            if ps.poles.size:
                pole_max = float(np.max(ps.poles.real))
        if pole_max >= sigma and not args.force:
            print(
                f"error: contour sigma={sigma:g} is not right of the pole at "
                f"Re={pole_max:g}; pass --force to invert anyway",
                file=sys.stderr,
            )
            return _EXIT_CONTOUR
        unsafe = pole_max >= sigma
        if unsafe:
            print(
                f"warning: inverting below the pole at Re={pole_max:g}; "
                "values are not trustworthy",
                file=sys.stderr,
            )
        vals = transfer.feedback_response_bromwich(params, ts, cfg_b, unsafe=unsafe)
        method_desc = {"method": "bromwich", "sigma": sigma,
                       "half_width": args.half_width, "n_nodes": args.n_nodes,
                       "forced": bool(unsafe)}
    else:
        vals = transfer.feedback_response_grid(params, ts, method="subordinate")
        method_desc = {"method": "subordinate"}

    cfg = {
        "command": "pa",
        "a": args.a,
        "beta": args.beta,
        "t_max": args.t_max,
        "dt": args.dt,
        **method_desc,
    }
    invocation = (
        f"pointfeedback pa --a {args.a!r} --beta {args.beta!r} "
        f"--t-max {args.t_max!r} --dt {args.dt!r} --method {method}"
    )
    write_csv(
        args.out,
        ["t", "value"],
        zip(ts.tolist(), (float(v) for v in np.atleast_1d(vals))),
        invocation,
        config_hash(cfg),
    )
    return _EXIT_OK


def _cmd_simulate(args) -> int:
    if args.scenario in SCENARIOS:
        raw = SCENARIOS[args.scenario]
        scenario_name = args.scenario
    else:
        path = Path(args.scenario)
        if not path.exists():
            raise ConfigError(
                f"scenario {args.scenario!r} is neither a preset "
                f"({', '.join(sorted(SCENARIOS))}) nor a file"
            )
        raw = json.loads(path.read_text())
        scenario_name = path.stem
    spec = load_scenario(raw)

    ic = _build_initial(spec["initial"])
    forcing = _build_forcing(spec["forcing"])
    config = pde.PdeConfig(
        amplitude=spec["amplitude"],
        forcing=forcing,
        initial=ic,
        domain_half_width=spec.get("domain_half_width", 20.0),
        dx=spec["dx"],
        dt=spec["dt"],
        scheme=spec.get("scheme", "implicit_euler"),
        source_profile=spec.get("source_profile", "single"),
    )
    t_end = spec["t_end"]
    sample_times = list(np.linspace(0.0, t_end, 6))
    run = pde.run(config, t_end, sample_times)

    renewal_dt = spec.get("renewal_dt", min(0.01, spec["dt"]))
    trace_renewal = boundary.boundary_values(
        ic, forcing, spec["amplitude"], t_end, renewal_dt
    )
    ref = np.interp(run.trace.t_grid, trace_renewal.t_grid, trace_renewal.u_plus)
    scale = 1.0 + float(np.max(np.abs(run.trace.u_plus)))
    discrepancy = float(np.max(np.abs(run.trace.u_plus - ref))) / scale

    audit = run.audit
    report = {
        "scenario": scenario_name,
        "positivity": {
            "min_outside_unit": audit["min_outside_unit"],
            "argmin_time": audit["argmin_time"],
            "argmin_x": audit["argmin_x"],
            "min_right_trace": audit["min_right_trace"],
            "min_left_trace": audit["min_left_trace"],
        },
        "steady_state": _steady_report(spec, forcing, run),
        "oracle_discrepancy": discrepancy,
        "config_hash": config_hash({"scenario": spec}),
    }

    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    invocation = f"pointfeedback simulate {scenario_name}"
    digest = report["config_hash"]
    write_json(out_dir / f"{scenario_name}_report.json", report)
    write_csv(
        out_dir / f"{scenario_name}_trace.csv",
        ["t", "u_plus", "u_minus", "u_right", "u_left"],
        zip(
            run.trace.t_grid.tolist(),
            run.trace.u_plus.tolist(),
            run.trace.u_minus.tolist(),
            run.trace.u_right.tolist(),
            run.trace.u_left.tolist(),
        ),
        invocation,
        digest,
    )
    snap_rows = []
    for state in run.snapshots:
        for xv, uv in zip(run.x_grid.tolist(), state.values.tolist()):
            snap_rows.append((state.t, xv, uv))
    write_csv(
        out_dir / f"{scenario_name}_snapshots.csv",
        ["t", "x", "u"],
        snap_rows,
        invocation,
        digest,
    )

    expectations = spec.get("expectations", {})
    violations = []
    tol = 1e-3 * scale
    if expectations.get("nonnegative_outside_unit") and audit["min_outside_unit"] < -tol:
        violations.append(
            f"solution dips to {audit['min_outside_unit']:.4g} outside the unit "
            f"interval (t={audit['argmin_time']:.3g}, x={audit['argmin_x']:.3g})"
        )
    max_disc = expectations.get("max_oracle_discrepancy")
    if max_disc is not None and discrepancy > max_disc:
        violations.append(
            f"oracle discrepancy {discrepancy:.4g} exceeds allowed {max_disc:.4g}"
        )
    if violations:
        for v in violations:
            print(f"expectation violated: {v}", file=sys.stderr)
        return _EXIT_VIOLATION
    print(json.dumps(report["positivity"], sort_keys=True))
    return _EXIT_OK


def _steady_report(spec: dict, forcing: boundary.ForcingSpec, run: pde.PdeRun) -> dict:
    a = spec["amplitude"]
    limit = boundary.forcing_limit(forcing)
    t_end = float(run.trace.t_grid[-1])
    estimate = float(run.trace.u_plus[-1])
    out = {"u_plus_at_end": estimate, "t_end": t_end}
    if 0.0 < a <= 1.0 / math.e + 1e-12 and limit > 0.0:
        theory = boundary.steady_state_value(a, limit)
        deficit = float(boundary.steady_state_deficit(a, t_end, limit))
        out.update(
            {
                "theoretical_limit": theory,
                "expected_deficit_now": deficit,
                "law_adjusted_estimate": estimate + deficit,
            }
        )
    return out


def _cmd_region(args) -> int:
    if args.preset is not None:
        cfg = SURVEY_PRESETS[args.preset]
        preset_name = args.preset
    else:
        cfg = survey.SurveyConfig()
        preset_name = "custom"
    overrides = {}
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.a_min is not None or args.a_max is not None:
        lo = args.a_min if args.a_min is not None else cfg.a_range[0]
        hi = args.a_max if args.a_max is not None else cfg.a_range[1]
        overrides["a_range"] = (lo, hi)
    if args.beta_min is not None or args.beta_max is not None:
        lo = args.beta_min if args.beta_min is not None else cfg.beta_range[0]
        hi = args.beta_max if args.beta_max is not None else cfg.beta_range[1]
        overrides["beta_range"] = (lo, hi)
    if args.n is not None:
        overrides["n_points"] = args.n
        if cfg.sampling == "grid":
            side = int(round(math.sqrt(args.n)))
            if side * side != args.n:
                raise ConfigError("grid sampling needs a square point count")
            overrides["grid_shape"] = (side, side)
    cfg = replace(cfg, **overrides)

    empty_box = cfg.a_range[0] >= cfg.a_range[1] or cfg.beta_range[0] >= cfg.beta_range[1]
    if empty_box or cfg.n_points == 0:
        points = ()
        summary = {
            "counts": {name: 0 for name in survey.CLASSES},
            "n_points": 0,
            "n_failures": 0,
            "failures": [],
            "config": json.loads(json.dumps(cfg.__dict__, default=list)),
            "runtime_seconds": 0.0,
        }
    else:
        result = survey.run_survey(cfg)
        points = result.points
        summary = result.summary

    cfg_dict = json.loads(json.dumps(cfg.__dict__, default=list))
    digest = config_hash({"command": "region", "config": cfg_dict})
    invocation = f"pointfeedback region --preset {preset_name}"
    if args.seed is not None:
        invocation += f" --seed {args.seed}"
    write_csv(
        args.out,
        ["a", "beta", "class", "min_value", "argmin_t", "ratio"],
        (
            (p.a, p.beta, p.classification, p.min_value, p.argmin_t, p.ratio)
            for p in points
        ),
        invocation,
        digest,
    )
    summary_path = Path(args.out).with_suffix(".summary.json")
    write_json(summary_path, {**summary, "config_hash": digest})
    print(json.dumps(summary.get("counts", {}), sort_keys=True))
    return _EXIT_OK


# ---------------------------------------------------------------------------
# figure bundles


def _figure_prefix(figure: str) -> str:
    return "fig" + figure.replace(".", "").replace("B", "B")


def _write_manifest(out_dir: Path, figure: str, files: list[str], digest: str,
                    invocation: str, description: str) -> None:
    write_json(
        out_dir / f"{_figure_prefix(figure)}_manifest.json",
        {
            "figure": figure,
            "description": description,
            "files": files,
            "config_hash": digest,
            "invocation": invocation,
        },
    )


def _fig_42(out_dir: Path, invocation: str) -> None:
    # left panel: gains <= 0 (growth, or the constant 1/2 at a = 0);
    # right panel: gains > 0 (decay, then decaying oscillation)
    gains = (-1.0, -0.5, 0.0, 0.25, 1.0, 2.0)
    ts = np.arange(0.0, 12.0 + 0.005, 0.01)
    cfg = {"figure": "4.2", "gains": list(gains), "beta": 0.0, "t_max": 12.0, "dt": 0.01}
    digest = config_hash(cfg)
    rows = []
    for a in gains:
        vals = transfer.delayed_response(transfer.FeedbackParams(a, 0.0), ts)
        rows.extend((a, 0.0, t, float(v)) for t, v in zip(ts.tolist(), vals))
    name = "fig42_delayed_response.csv"
    write_csv(out_dir / name, ["a", "beta", "t", "value"], rows, invocation, digest)
    _write_manifest(out_dir, "4.2", [name], digest, invocation,
                    "on-source delayed trace across negative and positive gains")


def _response_surface_figure(out_dir: Path, invocation: str, figure: str,
                             name: str, gains: tuple[float, ...],
                             description: str) -> None:
    betas = (0.0, 1.0, 2.0, 4.0)
    ts = np.arange(0.05, 10.0 + 0.025, 0.05)
    cfg = {"figure": figure, "gains": list(gains), "betas": list(betas),
           "grid": [0.05, 10.0, 0.05]}
    digest = config_hash(cfg)
    rows = []
    for a in gains:
        for beta in betas:
            vals = transfer.feedback_response_grid(
                transfer.FeedbackParams(a, beta), ts, method="subordinate")
            rows.extend((a, beta, t, float(v)) for t, v in zip(ts.tolist(), vals))
    write_csv(out_dir / name, ["a", "beta", "t", "value"], rows, invocation, digest)
    _write_manifest(out_dir, figure, [name], digest, invocation, description)


def _fig_61(out_dir: Path, invocation: str) -> None:
    _response_surface_figure(
        out_dir, invocation, "6.1", "fig61_small_gain_response.csv",
        (0.25, 1.0 / math.e),
        "diffusive response at gains inside the certified range, four offsets")


def _fig_62(out_dir: Path, invocation: str) -> None:
    _response_surface_figure(
        out_dir, invocation, "6.2", "fig62_oscillatory_response.csv",
        (1.0, 2.0),
        "decaying oscillation at gains above the certified range, four offsets")


def _fig_63(out_dir: Path, invocation: str) -> None:
    # at a = 50 the principal pole sits near 1.19; sigma = 0.1 runs below it
    # and the inversion silently loses the growing mode, sigma = 1.2 clears it
    a = 50.0
    betas = (0.0, 1.0, 2.0, 4.0)
    ts = np.arange(0.05, 3.0 + 0.005, 0.01)
    naive_cfg = laplace.BromwichConfig(sigma=0.1)
    safe_cfg = laplace.BromwichConfig(sigma=1.2)
    cfg = {"figure": "6.3", "a": a, "betas": list(betas),
           "sigma_naive": 0.1, "sigma_safe": 1.2, "grid": [0.05, 3.0, 0.01]}
    digest = config_hash(cfg)
    rows = []
    for beta in betas:
        params = transfer.FeedbackParams(a, beta)
        naive = transfer.feedback_response_bromwich(params, ts, naive_cfg,
                                                    unsafe=True)
        safe = transfer.feedback_response_bromwich(params, ts, safe_cfg)
        rows.extend(
            (a, beta, t, float(nv), float(sv))
            for t, nv, sv in zip(ts.tolist(), naive, safe)
        )
    name = "fig63_contour_choice.csv"
    write_csv(out_dir / name, ["a", "beta", "t", "naive_contour", "pole_aware"],
              rows, invocation, digest)
    _write_manifest(out_dir, "6.3", [name], digest, invocation,
                    "strong gain: a contour below the pole versus one right of it")


def _fig_64(out_dir: Path, invocation: str) -> None:
    # the gain (to three decimals) where the principal pole pair crosses the
    # imaginary axis: the response neither decays nor grows, it just rings
    a = 35.157
    betas = (0.0, 1.0, 2.0, 4.0)
    ts = np.arange(0.02, 10.0 + 0.01, 0.02)
    contour = transfer.default_contour(a)
    cfg = {"figure": "6.4", "a": a, "betas": list(betas),
           "sigma": contour.sigma, "grid": [0.02, 10.0, 0.02]}
    digest = config_hash(cfg)
    rows = []
    for beta in betas:
        vals = transfer.feedback_response_bromwich(
            transfer.FeedbackParams(a, beta), ts, contour)
        rows.extend((a, beta, t, float(v)) for t, v in zip(ts.tolist(), vals))
    name = "fig64_undamped_oscillation.csv"
    write_csv(out_dir / name, ["a", "beta", "t", "value"], rows, invocation, digest)
    _write_manifest(out_dir, "6.4", [name], digest, invocation,
                    "undamped oscillation at the critical gain, four offsets")


def _fig_71(out_dir: Path, invocation: str) -> None:
    cfg = SURVEY_PRESETS["fig71"]
    result = survey.run_survey(cfg)
    cfg_dict = json.loads(json.dumps(cfg.__dict__, default=list))
    digest = config_hash({"figure": "7.1", "config": cfg_dict})
    name = "fig71_region.csv"
    write_csv(
        out_dir / name,
        ["a", "beta", "class", "min_value", "argmin_t", "ratio"],
        (
            (p.a, p.beta, p.classification, p.min_value, p.argmin_t, p.ratio)
            for p in result.points
        ),
        invocation,
        digest,
    )
    write_json(out_dir / "fig71_summary.json",
               {**result.summary, "config_hash": digest})
    _write_manifest(out_dir, "7.1", [name, "fig71_summary.json"], digest, invocation,
                    "sign survey of the diffusive response over the gain/offset box")


def _fig_B1(out_dir: Path, invocation: str) -> None:
    # nonnegative coefficients: the solution stays positive and sits under
    # the exponential bound, written alongside for a dashed overlay
    coeffs = (0.0, 1.0)
    dt = 1e-3
    stride = 10  # write every 0.01 time units
    cfg = {"figure": "B.1", "coefficients": list(coeffs), "dt": dt,
           "t_end": 10.0, "stride": stride}
    digest = config_hash(cfg)
    rows = []
    for coeff in coeffs:
        sol = dde.solve_euler(dde.DdeProblem(coeff, 1.0, 10.0), dt=dt)
        for i in range(0, sol.grid.size, stride):
            t = float(sol.grid[i])
            rows.append((coeff, t, float(sol.values[i]), math.exp(coeff * t)))
    name = "figB1_growth_bound.csv"
    write_csv(out_dir / name, ["A", "t", "y", "bound"], rows, invocation, digest)
    _write_manifest(out_dir, "B.1", [name], digest, invocation,
                    "delay solutions for nonnegative coefficients "
                    "with their exponential bounds")


def _fig_B2(out_dir: Path, invocation: str) -> None:
    # negative coefficients: monotone decay, a touch of ringing, and a
    # growing oscillation once the coefficient passes -pi/2
    coeffs = (-0.25, -1.0, -2.0)
    ts = np.arange(0.0, 12.0 + 0.005, 0.01)
    cfg = {"figure": "B.2", "coefficients": list(coeffs),
           "grid": [0.0, 12.0, 0.01]}
    digest = config_hash(cfg)
    rows = []
    for coeff in coeffs:
        vals = dde.solution_values(coeff, ts)
        rows.extend((coeff, t, float(v)) for t, v in zip(ts.tolist(), vals))
    name = "figB2_negative_coefficient.csv"
    write_csv(out_dir / name, ["A", "t", "y"], rows, invocation, digest)
    _write_manifest(out_dir, "B.2", [name], digest, invocation,
                    "delay solutions for negative coefficients: "
                    "decay versus oscillation")


_FIGURE_BUILDERS = {
    "4.2": _fig_42,
    "6.1": _fig_61,
    "6.2": _fig_62,
    "6.3": _fig_63,
    "6.4": _fig_64,
    "7.1": _fig_71,
    "B.1": _fig_B1,
    "B.2": _fig_B2,
}


def _cmd_reproduce(args) -> int:
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    invocation = f"pointfeedback reproduce --figure {args.figure}"
    _FIGURE_BUILDERS[args.figure](out_dir, invocation)
    print(f"figure {args.figure} bundle written to {out_dir}")
    return _EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pointfeedback",
        description="Diffusion with a feedback-throttled point source: "
        "response curves, direct simulation, sign surveys, figure data.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tilde-pa", help="sample the delayed response")
    p.add_argument("--a", type=float, required=True, help="feedback gain")
    p.add_argument("--beta", type=float, default=1.0, help="sampling offset")
    p.add_argument("--t-max", type=float, default=10.0, dest="t_max")
    p.add_argument("--dt", type=float, default=0.01)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_tilde_pa)

    p = sub.add_parser("pa", help="sample the diffusive response")
    p.add_argument("--a", type=float, required=True, help="feedback gain")
    p.add_argument("--beta", type=float, default=1.0, help="sampling offset")
    p.add_argument("--t-max", type=float, default=10.0, dest="t_max")
    p.add_argument("--dt", type=float, default=0.01)
    p.add_argument(
        "--method", choices=("auto", "subordinate", "bromwich"), default="auto"
    )
    p.add_argument("--sigma", type=float, default=None, help="contour real part")
    p.add_argument("--L", type=float, default=50.0, dest="half_width",
                   help="contour half-width")
    p.add_argument("--n-nodes", type=int, default=4001, dest="n_nodes")
    p.add_argument("--force", action="store_true",
                   help="invert even if the contour sits below a pole")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_pa)

    p = sub.add_parser("simulate", help="run the direct solver on a scenario")
    p.add_argument("scenario", help="preset name or path to a scenario JSON file")
    p.add_argument("--out-dir", default=".", dest="out_dir")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("region", help="run a sign survey")
    p.add_argument("--preset", choices=sorted(SURVEY_PRESETS), default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--a-min", type=float, default=None, dest="a_min")
    p.add_argument("--a-max", type=float, default=None, dest="a_max")
    p.add_argument("--beta-min", type=float, default=None, dest="beta_min")
    p.add_argument("--beta-max", type=float, default=None, dest="beta_max")
    p.add_argument("--n", type=int, default=None, help="override point count")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_region)

    p = sub.add_parser("reproduce", help="write a stock figure's data bundle")
    p.add_argument("--figure", choices=FIGURE_IDS, required=True)
    p.add_argument("--out-dir", default=".", dest="out_dir")
    p.set_defaults(func=_cmd_reproduce)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 on --help; pass both through
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ContourBelowPole as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _EXIT_CONTOUR
    except (ConfigError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _EXIT_CONFIG
    except PointFeedbackError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _EXIT_INTERNAL
    except Exception as exc:  # defensive: keep the exit contract honest
        print(f"internal error: {exc!r}", file=sys.stderr)
        return _EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
