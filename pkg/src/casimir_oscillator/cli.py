"""Command line front end.

Exit codes: 0 success (or stable), 1 usage or input error, 2 the
configuration is physically unstable (pull-in).
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import warnings
from typing import Optional

from . import __version__
from .analysis import solve_equilibrium
from .fit import InsufficientDataError, fit_sinusoid
from .integrator import DEFAULT_DT, DEFAULT_PERIODS, SimConfig, verlet_integrate
from .io import (
    ParseError,
    manifest_path,
    parse_config,
    read_trajectory_csv,
    svg_polyline,
    sweep_spec_from_config,
    trajectory_csv,
    write_manifest,
)
from .physics_model import (
    PhysicalParams,
    ValidityWarning,
    as_dimensionless,
    paper_preset,
    surface_density,
)
from .repro import paper_reproduction
from .sweep import rows_to_csv, run_sweep

EXIT_OK, EXIT_INPUT, EXIT_UNSTABLE = 0, 1, 2
DEFAULT_RHO_S = surface_density(8920.0, 1e-6)  # 1 um of copper


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


PARAM_KEYS = ("preset", "k", "area", "x0", "rho_s", "rho_volume", "thickness", "c_hat")
SIM_KEYS = ("dt", "periods", "steps", "u0", "v0")


def _add_param_flags(p):
    p.add_argument("--config", help="key = value file; flags override it")
    p.add_argument("--preset", choices=["paper"])
    p.add_argument("--k", type=float, help="spring stiffness, N/m")
    p.add_argument("--area", type=float, help="plate area, m^2")
    p.add_argument("--x0", type=float, help="free spring length / initial gap, m")
    p.add_argument("--rho-s", dest="rho_s", type=float, help="surface density, kg/m^2")
    p.add_argument("--rho-volume", dest="rho_volume", type=float, help="volume density, kg/m^3")
    p.add_argument("--thickness", type=float, help="plate thickness, m")
    p.add_argument("--out", help="output file (a .manifest.json is written next to it)")
    p.add_argument("--json", action="store_true", help="machine-readable output")


def _add_sim_flags(p):
    p.add_argument("--c-hat", dest="c_hat", type=float, help="override the dimensionless Casimir coefficient")
    p.add_argument("--dt", type=float, help="time step in t* units (default 2 pi/1000)")
    p.add_argument("--periods", type=float, help="run length in 2 pi t* units (default 5)")
    p.add_argument("--steps", type=int, help="number of steps; overrides --periods")
    p.add_argument("--u0", type=float, help="initial (x - x0)/x0")
    p.add_argument("--v0", type=float, help="initial velocity in x0/t* units")
    p.add_argument("--plot", help="write an SVG of (x - x0)/x0 against t/t*")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="casimir-osc", description="Casimir-driven micro-spring oscillator")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("analyze", help="equilibria and stability report")
    _add_param_flags(p)

    p = sub.add_parser("simulate", help="Verlet trajectory as CSV")
    _add_param_flags(p)
    _add_sim_flags(p)

    p = sub.add_parser("fit", help="fit amp (cos(omega tau) - 1) to a trajectory CSV")
    p.add_argument("trajectory", help="CSV path, or - for stdin")
    p.add_argument("--out")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("sweep", help="stability map over a parameter grid")
    p.add_argument("spec", help="sweep file: key = value lines and [axis NAME] blocks")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("paper-repro", help="run the reference device end to end against its target values")
    p.add_argument("--dt", type=float, default=DEFAULT_DT)
    p.add_argument("--periods", type=float, default=DEFAULT_PERIODS)
    p.add_argument("--out")
    p.add_argument("--json", action="store_true")
    return parser


def _merged(args, keys) -> dict:
    vals = {}
    if getattr(args, "config", None):
        try:
            with open(args.config) as fh:
                vals.update(parse_config(fh.read()))
        except OSError as exc:
            raise UsageError(f"cannot read config: {exc}") from None
    for key in keys:
        v = getattr(args, key, None)
        if v is not None:
            vals[key] = v
    return vals


def resolve_params(vals: dict):
    """PhysicalParams from SI values, or the literal preset coefficients for ``preset = paper``."""
    preset = vals.get("preset")
    if preset is not None:
        if preset != "paper":
            raise UsageError(f"unknown preset {preset!r}")
        return paper_preset()
    missing = [k for k in ("k", "area", "x0") if k not in vals]
    if missing:
        raise UsageError("missing required parameter(s): " + ", ".join("--" + m for m in missing))
    kw = {k: float(vals[k]) for k in ("k", "area", "x0")}
    if "rho_s" in vals:
        kw["rho_s"] = float(vals["rho_s"])
    elif "rho_volume" in vals and "thickness" in vals:
        kw["rho_volume"], kw["thickness"] = float(vals["rho_volume"]), float(vals["thickness"])
    else:
        kw["rho_s"] = DEFAULT_RHO_S
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("always", ValidityWarning)
            warnings.showwarning = _warn_to_stderr
            return PhysicalParams(**kw)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _warn_to_stderr(message, category, *a, **k):
    print(f"warning: {message}", file=sys.stderr)


def _describe(params) -> dict:
    d = as_dimensionless(params)
    out = {
        "dimensionless": {"b": d.b, "c_cas": d.c_cas, "l_star": d.l_star, "t_star": d.t_star, "c_hat": d.c_hat}
    }
    if isinstance(params, PhysicalParams):
        out["physical"] = {"k": params.k, "area": params.area, "x0": params.x0, "rho_s": params.rho_s}
    else:
        out["preset"] = "paper"
    return out


def _manifest(command, args, resolved: dict, outputs) -> dict:
    return {
        "command": command,
        "version": __version__,
        "config": getattr(args, "config", None),
        "parameters": resolved,
        "outputs": [o for o in outputs if o],
    }


def _emit(text: str, out: Optional[str]):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_analyze(args) -> int:
    params = resolve_params(_merged(args, PARAM_KEYS))
    rep = solve_equilibrium(params)
    text = rep.to_json(indent=2) + "\n"
    _emit(text, args.out)
    if args.out:
        write_manifest(manifest_path(args.out), _manifest("analyze", args, _describe(params), [args.out]))
    return EXIT_OK if rep.stable else EXIT_UNSTABLE


def cmd_simulate(args) -> int:
    vals = _merged(args, PARAM_KEYS + SIM_KEYS)
    if "c_hat" in vals and "preset" not in vals and not {"k", "area", "x0"} <= vals.keys():
        params = None
        c_hat = float(vals["c_hat"])
    else:
        params = resolve_params(vals)
        c_hat = float(vals["c_hat"]) if "c_hat" in vals else as_dimensionless(params).c_hat
    dt = float(vals.get("dt", DEFAULT_DT))
    try:
        if "steps" in vals:
            cfg = SimConfig(c_hat=c_hat, dt=dt, n_steps=int(vals["steps"]),
                            u0=float(vals.get("u0", 0.0)), v0=float(vals.get("v0", 0.0)))
        else:
            cfg = SimConfig.for_periods(c_hat, periods=float(vals.get("periods", DEFAULT_PERIODS)), dt=dt,
                                        u0=float(vals.get("u0", 0.0)), v0=float(vals.get("v0", 0.0)))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    traj = verlet_integrate(cfg)
    _emit(trajectory_csv(traj), args.out)
    if args.plot:
        with open(args.plot, "w") as fh:
            fh.write(svg_polyline(traj.times, traj.u, xlabel="t/t*", ylabel="(x - x0)/x0",
                                  title=f"c_hat = {c_hat:.4g}"))
    if args.out:
        resolved = _describe(params) if params is not None else {"dimensionless": {}}
        resolved["dimensionless"]["c_hat"] = c_hat
        resolved["simulation"] = {"dt": cfg.dt, "n_steps": cfg.n_steps, "u0": cfg.u0, "v0": cfg.v0,
                                  "collapsed": traj.collapsed}
        write_manifest(manifest_path(args.out), _manifest("simulate", args, resolved, [args.out, args.plot]))
    if traj.collapsed:
        print("warning: plates reached contact; trajectory truncated", file=sys.stderr)
        return EXIT_UNSTABLE
    return EXIT_OK


def cmd_fit(args) -> int:
    try:
        if args.trajectory == "-":
            traj = read_trajectory_csv(sys.stdin)
        else:
            with open(args.trajectory, newline="") as fh:
                traj = read_trajectory_csv(fh)
        res = fit_sinusoid(traj)
    except OSError as exc:
        raise UsageError(f"cannot read trajectory: {exc}") from None
    except (ParseError, InsufficientDataError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    _emit(res.to_json(indent=2) + "\n", args.out)
    if args.out:
        write_manifest(manifest_path(args.out),
                       _manifest("fit", args, {"input": args.trajectory}, [args.out]))
    return EXIT_OK if res.converged else EXIT_INPUT


def cmd_sweep(args) -> int:
    try:
        with open(args.spec) as fh:
            spec = sweep_spec_from_config(parse_config(fh.read()))
    except OSError as exc:
        raise UsageError(f"cannot read sweep file: {exc}") from None
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rows = run_sweep(spec, workers=args.workers)
    if args.json:
        text = json.dumps(rows, indent=2) + "\n"
    else:
        text = rows_to_csv(spec, rows)
    _emit(text, args.out)
    if args.out:
        resolved = {
            "axes": [_axis_dict(a) for a in spec.axes],
            "fixed": dict(spec.fixed),
            "simulate": spec.simulate,
            "dt": spec.dt,
            "periods": spec.periods,
        }
        write_manifest(manifest_path(args.out), _manifest("sweep", args, resolved, [args.out]))
    return EXIT_OK


def _axis_dict(a):
    return {"name": a.name, "min": a.min, "max": a.max, "count": a.count, "spacing": a.spacing}


def cmd_paper_repro(args) -> int:
    if not (args.dt > 0 and args.periods > 0 and math.isfinite(args.dt)):
        raise UsageError("dt and periods must be > 0")
    rep = paper_reproduction(dt=args.dt, periods=args.periods)
    text = json.dumps(rep.to_dict(), indent=2) + "\n" if args.json else rep.table() + "\n"
    _emit(text, args.out)
    if args.out:
        write_manifest(manifest_path(args.out),
                       _manifest("paper-repro", args, _describe(paper_preset()), [args.out]))
    return EXIT_OK if rep.passed else EXIT_INPUT


COMMANDS = {
    "analyze": cmd_analyze,
    "simulate": cmd_simulate,
    "fit": cmd_fit,
    "sweep": cmd_sweep,
    "paper-repro": cmd_paper_repro,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
