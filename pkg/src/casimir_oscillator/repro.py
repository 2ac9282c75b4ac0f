"""End-to-end run of the ``paper`` preset against its reference values."""

from __future__ import annotations

import warnings
from dataclasses import asdict, dataclass
from typing import List, Optional

import numpy as np

from .analysis import solve_equilibrium, solve_turning_point
from .fit import fit_sinusoid
from .integrator import DEFAULT_DT, DEFAULT_PERIODS, SimConfig, detect_turning_points, verlet_integrate
from .physics_model import PAPER_B, PAPER_C, ValidityWarning, nondimensionalize, paper_device, paper_preset

# Reference values; tolerances are set per check below.
REF_AMP = 1.302e-9
REF_OMEGA = 1.000
REF_R2 = 0.999986
REF_TURN_PRINTED = 0.999999974  # inconsistent with REF_AMP; reported, never checked


@dataclass
class Check:
    name: str
    computed: float
    expected: float
    tolerance: float
    mode: str  # "rel", "abs" or "min"
    passed: bool = False

    def __post_init__(self):
        if self.mode == "rel":
            self.passed = bool(abs(self.computed - self.expected) <= self.tolerance * abs(self.expected))
        elif self.mode == "abs":
            self.passed = bool(abs(self.computed - self.expected) <= self.tolerance)
        elif self.mode == "min":
            self.passed = bool(self.computed >= self.expected)
        else:
            raise ValueError(self.mode)

    def describe_tolerance(self) -> str:
        if self.mode == "rel":
            return f"+/-{self.tolerance:.2g} rel"
        if self.mode == "abs":
            return f"+/-{self.tolerance:.2g}"
        return ">= expected"


@dataclass
class ReproReport:
    checks: List[Check]
    dt: float
    periods: float
    turning_spread: Optional[float]
    turn_solver: float
    printed_turning_point: float = REF_TURN_PRINTED

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "dt": self.dt,
            "periods": self.periods,
            "checks": [asdict(c) for c in self.checks],
            "turning_point_spread": self.turning_spread,
            "turning_point_solver": self.turn_solver,
            "printed_turning_point_not_checked": self.printed_turning_point,
        }

    def table(self) -> str:
        lines = [f"{'quantity':<10} {'computed':>24} {'reference':>24} {'tolerance':>16}  result"]
        for c in self.checks:
            lines.append(
                f"{c.name:<10} {c.computed:>24.15g} {c.expected:>24.15g} {c.describe_tolerance():>16}  "
                + ("PASS" if c.passed else "FAIL")
            )
        lines.append(f"solver x_turn/x0 = {self.turn_solver:.15g}")
        if self.turning_spread is not None:
            lines.append(f"cycle-to-cycle spread of minima (u units) = {self.turning_spread:.3g}")
        lines.append(
            f"printed turning point {self.printed_turning_point} not checked: "
            f"the reference Amp implies 1 - 2 Amp = {1 - 2 * REF_AMP:.10f}"
        )
        return "\n".join(lines)


def paper_reproduction(dt: float = DEFAULT_DT, periods: float = DEFAULT_PERIODS) -> ReproReport:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ValidityWarning)
        derived = nondimensionalize(paper_device())
    preset = paper_preset()
    eq = solve_equilibrium(preset)
    turn = solve_turning_point(preset)
    traj = verlet_integrate(SimConfig.for_periods(preset.c_hat, periods=periods, dt=dt))
    fit = fit_sinusoid(traj)
    minima = [u for _, u, kind in detect_turning_points(traj) if kind == "min"]
    sim_min = 1.0 + (min(minima) if minima else float(np.min(traj.u)))
    spread = float(max(minima) - min(minima)) if len(minima) > 1 else None

    checks = [
        Check("b", derived.b, PAPER_B, 1e-3, "rel"),
        Check("c", derived.c_cas, PAPER_C, 3e-3, "rel"),
        Check("x_eq/x0", eq.x_eq_stable / eq.x0, 1 - REF_AMP, 2e-12, "abs"),
        Check("x_turn/x0", sim_min, 1 - 2 * REF_AMP, 2e-11, "abs"),
        Check("Amp", fit.amp, REF_AMP, 0.005e-9, "abs"),
        Check("omega", fit.omega, REF_OMEGA, 1e-3, "abs"),
        Check("r2", fit.r2, 0.9999, 0.0, "min"),
    ]
    return ReproReport(checks, dt, periods, spread, turn.x_turn / preset.l_star)
