"""Equilibria, stability against pull-in, and the first turning point.

Everything is solved in natural units with chi = x/x0 and, near x0,
in the offset eps = 1 - chi, which is the quantity of physical interest
(~1e-9 for the reference device) and would be lost to rounding in chi.

Balance of forces at rest reads chi^4 (1 - chi) = c_hat. The left side
peaks at chi = 4/5 with value 4^4/5^5, so for c_hat below that peak
there are two roots: a stable one above 4/5 and an unstable one below.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Optional, Tuple

from scipy.optimize import bisect

from .physics_model import (
    _PI2_HBAR_C,
    DimensionlessParams,
    Params,
    PhysicalParams,
    as_dimensionless,
    total_potential,
)

PEAK_CHI = 0.8
PEAK_VALUE = 4.0**4 / 5.0**5  # max of chi^4 (1 - chi) = 0.08192
RTOL = 1e-14


class UnstableConfigurationError(ValueError):
    """No stable equilibrium: the spring cannot hold the plate against pull-in."""


class CollapseError(ValueError):
    """Starting at rest at x0 the plate runs over the barrier into contact."""


def _bisect(f, lo, hi):
    # xtol must be tiny: roots of interest sit ~1e-9 from the origin
    return bisect(f, lo, hi, xtol=1e-300, rtol=RTOL, maxiter=2000)


def _offset_power(eps, n):
    """(1 - eps)**n - 1 without cancellation."""
    return math.expm1(n * math.log1p(-eps))


def stable_offset(c_hat: float) -> Optional[float]:
    """eps = 1 - chi of the stable root, or None past pull-in."""
    if c_hat == 0.0:
        return 0.0
    if not c_hat < PEAK_VALUE:
        return None
    return _bisect(lambda e: e * (1.0 - e) ** 4 - c_hat, 0.0, 1.0 - PEAK_CHI)


def unstable_chi(c_hat: float) -> Optional[float]:
    if c_hat == 0.0 or not c_hat < PEAK_VALUE:
        return None
    return _bisect(lambda c: c**4 * (1.0 - c) - c_hat, 0.0, PEAK_CHI)


def curvature_at(chi: float, c_hat: float) -> float:
    """Second derivative of the dimensionless potential, 1 - 4 c_hat / chi^5."""
    return 1.0 - 4.0 * c_hat / chi**5


def critical_stiffness(area: float, x0: float) -> float:
    """Stiffness below which no equilibrium exists, pi^2 hbar c A / (60 (4 x0/5)^5)."""
    if not (area > 0 and x0 > 0):
        raise ValueError("area and x0 must be > 0")
    return _curvature_threshold(area, PEAK_CHI * x0)


def _curvature_threshold(area, x):
    return _PI2_HBAR_C * area / (60.0 * x**5)


def stability_criterion(k: float, area: float, x_min: float) -> bool:
    """True when the potential is convex at ``x_min``: k > pi^2 hbar c A / (60 x_min^5)."""
    if not (k > 0 and area > 0 and x_min > 0):
        raise ValueError("k, area and x_min must be > 0")
    return k > _curvature_threshold(area, x_min)


@dataclass(frozen=True)
class EquilibriumReport:
    x_eq_stable: Optional[float]
    x_eq_unstable: Optional[float]
    v2_at_min: Optional[float]
    omega_eff: Optional[float]
    stable: bool
    k_crit: Optional[float]
    x0: float
    c_hat: float
    eps_eq: Optional[float] = None

    def to_json_dict(self) -> dict:
        keys = ("x_eq_stable", "x_eq_unstable", "omega_eff", "stable", "k_crit")
        return {k: getattr(self, k) for k in keys}

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_json_dict(), **kw)


def _k_crit(p: Params, d: DimensionlessParams) -> Optional[float]:
    if isinstance(p, PhysicalParams):
        return critical_stiffness(p.area, p.x0)
    if d.k is None:
        return None
    # k c_hat / c_hat_crit keeps the threshold consistent with the
    # literal coefficients of a preset
    return d.k * d.c_hat / PEAK_VALUE


def solve_equilibrium(p: Params) -> EquilibriumReport:
    d = as_dimensionless(p)
    x0, c_hat = d.l_star, d.c_hat
    eps = stable_offset(c_hat)
    chi_u = unstable_chi(c_hat)
    k_crit = _k_crit(p, d)
    if eps is None:
        return EquilibriumReport(None, None, None, None, False, k_crit, x0, c_hat)
    chi = 1.0 - eps
    v2 = curvature_at(chi, c_hat)
    return EquilibriumReport(
        x_eq_stable=x0 * chi,
        x_eq_unstable=None if chi_u is None else x0 * chi_u,
        v2_at_min=v2,
        omega_eff=math.sqrt(v2),
        stable=True,
        k_crit=k_crit,
        x0=x0,
        c_hat=c_hat,
        eps_eq=eps,
    )


def equilibrium_residual(report: EquilibriumReport) -> float:
    """Relative residual of chi^4 (x0 - x)/x0 = c_hat at the stable root."""
    eps = report.eps_eq
    return abs((1.0 - eps) ** 4 * eps - report.c_hat) / report.c_hat


def harmonic_expansion(p: Params) -> Tuple[float, float, float]:
    """``(V_min, k_eff_hat, omega_hat)`` of the quadratic fit to the potential at its minimum.

    ``V_min`` is in J/m^2 and needs k and A; for a bare
    ``DimensionlessParams`` it is NaN.
    """
    rep = solve_equilibrium(p)
    if not rep.stable:
        raise UnstableConfigurationError("no stable equilibrium (pull-in)")
    d = as_dimensionless(p)
    try:
        v_min = total_potential(rep.x_eq_stable, p)
    except ValueError:
        if d.k is not None:
            raise
        v_min = math.nan
    return v_min, rep.v2_at_min, rep.omega_eff


@dataclass(frozen=True)
class TurningPoint:
    x_turn: float
    margin: float

    @property
    def offset(self) -> float:
        return self.margin / (self.x_turn + self.margin)


def _energy_gap(eps, c_hat):
    # 2 [V(1 - eps) - V(1)] in natural units
    return eps * eps - (2.0 * c_hat / 3.0) * _offset_power(eps, -3)


def turning_offset(c_hat: float) -> float:
    """eps at which a plate released at rest from x0 first stops."""
    if c_hat == 0.0:
        return 0.0
    eps_eq = stable_offset(c_hat)
    chi_u = unstable_chi(c_hat)
    if eps_eq is None or chi_u is None:
        raise CollapseError("no stable equilibrium; the plate collapses")
    eps_u = 1.0 - chi_u
    if not _energy_gap(eps_u, c_hat) > 0.0:
        raise CollapseError("released at rest from x0 the plate clears the barrier and collapses")
    return _bisect(lambda e: _energy_gap(e, c_hat), eps_eq, eps_u)


def solve_turning_point(p: Params) -> TurningPoint:
    d = as_dimensionless(p)
    eps = turning_offset(d.c_hat)
    return TurningPoint(x_turn=d.l_star * (1.0 - eps), margin=d.l_star * eps)

