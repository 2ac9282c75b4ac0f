"""Grid sweeps over stiffness, plate area and gap.

Rows come back in row-major order of the axes as given (first axis
slowest), whatever the execution order, so a sweep is a pure function of
its spec.
"""

from __future__ import annotations

import csv
import io
import math
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from typing import Dict, List, Optional, Sequence

import numpy as np

from .analysis import solve_equilibrium
from .fit import fit_sinusoid
from .integrator import DEFAULT_DT, DEFAULT_PERIODS, SimConfig, verlet_integrate
from .physics_model import PhysicalParams, ValidityWarning, c_hat_of

AXIS_NAMES = ("k", "area", "x0")
RESULT_COLUMNS = ("stable", "x_eq_stable", "k_crit", "omega_hat", "amp_fit", "error")


@dataclass(frozen=True)
class Axis:
    name: str
    min: float
    max: float
    count: int
    spacing: str = "linear"

    def __post_init__(self):
        if self.name not in AXIS_NAMES:
            raise ValueError(f"axis must be one of {AXIS_NAMES}, got {self.name!r}")
        if self.count < 2:
            raise ValueError("axis count must be >= 2")
        if not (0 < self.min <= self.max):
            raise ValueError("axis bounds must satisfy 0 < min <= max")
        if self.spacing not in ("linear", "log"):
            raise ValueError("spacing must be 'linear' or 'log'")

    def values(self) -> np.ndarray:
        if self.spacing == "log":
            return np.geomspace(self.min, self.max, self.count)
        return np.linspace(self.min, self.max, self.count)

    def midpoint(self, a: float, b: float) -> float:
        return math.sqrt(a * b) if self.spacing == "log" else 0.5 * (a + b)


@dataclass(frozen=True)
class SweepSpec:
    axes: Sequence[Axis]
    fixed: Dict[str, float] = field(default_factory=dict)
    simulate: bool = False
    dt: float = DEFAULT_DT
    periods: float = DEFAULT_PERIODS

    def __post_init__(self):
        names = [a.name for a in self.axes]
        if not 1 <= len(names) <= 3 or len(set(names)) != len(names):
            raise ValueError("need 1 to 3 distinct axes")
        missing = [n for n in AXIS_NAMES if n not in names and n not in self.fixed]
        if missing:
            raise ValueError(f"no value for {', '.join(missing)}")
        for key, val in self.fixed.items():
            if not val > 0:
                raise ValueError(f"fixed value {key} must be > 0")

    def points(self):
        grids = [a.values() for a in self.axes]
        for combo in product(*grids):
            pt = dict(self.fixed)
            pt.update({a.name: float(v) for a, v in zip(self.axes, combo)})
            yield pt


def evaluate_point(point: Dict[str, float], simulate=False, dt=DEFAULT_DT, periods=DEFAULT_PERIODS) -> dict:
    row = dict(point)
    row.update(dict.fromkeys(RESULT_COLUMNS))
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", ValidityWarning)
            p = PhysicalParams(k=point["k"], area=point["area"], x0=point["x0"], rho_s=point.get("rho_s", 8.92e-3))
        rep = solve_equilibrium(p)
        row["stable"] = rep.stable
        row["k_crit"] = rep.k_crit
        if rep.stable:
            row["x_eq_stable"] = rep.x_eq_stable
            row["omega_hat"] = rep.omega_eff
            if simulate:
                traj = verlet_integrate(SimConfig.for_periods(c_hat_of(p), periods=periods, dt=dt))
                if traj.collapsed:
                    row["error"] = "collapsed during simulation"
                else:
                    row["amp_fit"] = fit_sinusoid(traj).amp
    except Exception as exc:  # one bad point must not sink the sweep
        row["error"] = f"{type(exc).__name__}: {exc}"
    return row


def _evaluate_star(args):
    return evaluate_point(*args)


def run_sweep(spec: SweepSpec, workers: Optional[int] = None) -> List[dict]:
    """Evaluate every grid point. ``workers > 1`` spreads points over processes."""
    jobs = [(pt, spec.simulate, spec.dt, spec.periods) for pt in spec.points()]
    if workers is None or workers <= 1:
        return [_evaluate_star(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        # map yields in submission order
        return list(pool.map(_evaluate_star, jobs, chunksize=max(1, len(jobs) // (4 * workers))))


def stability_boundary(spec: SweepSpec, rows: Optional[List[dict]] = None) -> List[dict]:
    """Midpoints between grid neighbours whose stability differs (2-axis sweeps)."""
    if len(spec.axes) != 2:
        raise ValueError("stability_boundary needs exactly two axes")
    if rows is None:
        rows = run_sweep(spec)
    ax0, ax1 = spec.axes
    grid = np.array([bool(r["stable"]) for r in rows]).reshape(ax0.count, ax1.count)
    v0, v1 = ax0.values(), ax1.values()
    out = []
    for i in range(ax0.count):
        for j in range(ax1.count):
            if i + 1 < ax0.count and grid[i, j] != grid[i + 1, j]:
                out.append({ax0.name: ax0.midpoint(v0[i], v0[i + 1]), ax1.name: float(v1[j])})
            if j + 1 < ax1.count and grid[i, j] != grid[i, j + 1]:
                out.append({ax0.name: float(v0[i]), ax1.name: ax1.midpoint(v1[j], v1[j + 1])})
    return out


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def sweep_columns(spec: SweepSpec) -> List[str]:
    return [a.name for a in spec.axes] + list(RESULT_COLUMNS)


def rows_to_csv(spec: SweepSpec, rows: List[dict]) -> str:
    cols = sweep_columns(spec)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(cols)
    for r in rows:
        w.writerow([_fmt(r.get(c)) for c in cols])
    return buf.getvalue()
