"""Device parameters, ideal Casimir formulas and natural units.

All force and energy quantities are per unit plate area. Lengths are in
metres, times in seconds. Attraction is negative.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

HBAR = 1.054_571_817e-34  # J s (CODATA 2018)
C_LIGHT = 299_792_458.0  # m/s (exact)

# pi^2 hbar c, shared by every Casimir expression below
_PI2_HBAR_C = math.pi**2 * HBAR * C_LIGHT


@dataclass(frozen=True)
class PhysicalConstants:
    hbar: float = HBAR
    c_light: float = C_LIGHT


CONSTANTS = PhysicalConstants()


class ValidityWarning(UserWarning):
    """Parameters fall outside the regime where the ideal-plate formula holds."""


class SingularityError(ValueError):
    """Raised when a Casimir expression is evaluated at or past contact."""


def _check_gap(x):
    x = np.asarray(x, dtype=float)
    if np.any(~(x > 0.0)):
        raise SingularityError("plate separation must be > 0 (the ideal Casimir law is singular at contact)")
    return x


def _scalar_or_array(out):
    return float(out) if np.ndim(out) == 0 else out


def surface_density(rho_volume: float, thickness: float) -> float:
    """Surface mass density (kg/m^2) of a plate of given volume density and thickness."""
    if not (rho_volume > 0 and thickness > 0):
        raise ValueError("rho_volume and thickness must both be > 0")
    return rho_volume * thickness


def casimir_pressure(x):
    """Ideal-plate Casimir pressure -pi^2 hbar c / (240 x^4), in Pa."""
    x = _check_gap(x)
    return _scalar_or_array(-_PI2_HBAR_C / 240.0 / x**4)


def casimir_energy_per_area(x):
    """Ideal-plate Casimir energy -pi^2 hbar c / (720 x^3), in J/m^2."""
    x = _check_gap(x)
    return _scalar_or_array(-_PI2_HBAR_C / 720.0 / x**3)


@dataclass(frozen=True)
class PhysicalParams:
    """SI description of the spring/plate device.

    ``rho_s`` may be left out when ``rho_volume`` and ``thickness`` are
    given; an explicit ``rho_s`` always wins.
    """

    k: float
    area: float
    x0: float
    rho_s: Optional[float] = None
    rho_volume: Optional[float] = field(default=None, repr=False)
    thickness: Optional[float] = field(default=None, repr=False)

    def __post_init__(self):
        if self.rho_s is None:
            if self.rho_volume is None or self.thickness is None:
                raise ValueError("give rho_s, or both rho_volume and thickness")
            object.__setattr__(self, "rho_s", surface_density(self.rho_volume, self.thickness))
        for name in ("k", "area", "x0", "rho_s"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
                raise ValueError(f"{name} must be a finite positive number, got {value!r}")
        if self.area < 100.0 * self.x0**2:
            warnings.warn(
                f"area {self.area:.3g} m^2 < 100 x0^2 = {100 * self.x0**2:.3g} m^2; "
                "edge effects are not negligible for the ideal parallel-plate law",
                ValidityWarning,
                stacklevel=3,
            )


@dataclass(frozen=True)
class DimensionlessParams:
    """Natural-unit coefficients: lengths in ``l_star = x0``, times in ``t_star = b**-0.5``.

    ``c_hat`` is the only group that enters the dimensionless dynamics.
    ``k`` and ``area`` are carried along when known so that physical
    thresholds can be reported next to the dimensionless ones.
    """

    b: float
    c_cas: float
    l_star: float
    t_star: float
    c_hat: float
    k: Optional[float] = None
    area: Optional[float] = None

    @classmethod
    def from_coefficients(cls, b, c_cas, x0, k=None, area=None):
        """Build from the coefficients of x'' = -b (x - x0) - c_cas / x^4."""
        if not (b > 0 and x0 > 0 and c_cas >= 0):
            raise ValueError("need b > 0, x0 > 0 and c_cas >= 0")
        return cls(
            b=float(b),
            c_cas=float(c_cas),
            l_star=float(x0),
            t_star=1.0 / math.sqrt(b),
            c_hat=c_cas / (b * x0**5),
            k=k,
            area=area,
        )

    @property
    def x0(self) -> float:
        return self.l_star


def nondimensionalize(p: PhysicalParams) -> DimensionlessParams:
    b = p.k / (p.area * p.rho_s)
    c_cas = _PI2_HBAR_C / (240.0 * p.rho_s)
    return DimensionlessParams.from_coefficients(b, c_cas, p.x0, k=p.k, area=p.area)


def c_hat_of(p: PhysicalParams) -> float:
    """pi^2 hbar c A / (240 k x0^5), independent of the plate mass."""
    return _PI2_HBAR_C * p.area / (240.0 * p.k * p.x0**5)


# Nominal reference device: copper plate 1 um thick, k = 1 N/m.
# Only A = x0^2 reproduces the preset b; the ideal-plate regime wants A >= 100 x0^2.
PAPER_DEVICE = dict(k=1.0, area=1e-12, x0=1e-6, rho_volume=8920.0, thickness=1e-6)
PAPER_B = 1.121e14  # s^-2
PAPER_C = 1.459e-25  # m^5 s^-2
PAPER_X0 = 1e-6  # m


def paper_preset() -> DimensionlessParams:
    """Reference coefficients b, c, x0 of x'' = -b (x - x0) - c / x^4, taken as given.

    These are not re-derived from k, A and rho_s; see ``paper_device`` for
    the derived path.
    """
    return DimensionlessParams.from_coefficients(
        PAPER_B, PAPER_C, PAPER_X0, k=PAPER_DEVICE["k"], area=PAPER_DEVICE["area"]
    )


def paper_device() -> PhysicalParams:
    """k = 1 N/m, A = 1e-12 m^2, x0 = 1 um, 1 um copper. Emits a ValidityWarning."""
    return PhysicalParams(**PAPER_DEVICE)


Params = Union[PhysicalParams, DimensionlessParams]


def as_dimensionless(p: Params) -> DimensionlessParams:
    if isinstance(p, DimensionlessParams):
        return p
    if isinstance(p, PhysicalParams):
        return nondimensionalize(p)
    raise TypeError(f"expected PhysicalParams or DimensionlessParams, got {type(p).__name__}")


def total_potential(x, p: Params):
    """Spring plus Casimir energy per unit area, (k/2A)(x - x0)^2 - pi^2 hbar c/(720 x^3).

    For a ``DimensionlessParams`` the same function is written with the
    mass-normalised coefficients, V = rho_s [b/2 (x-x0)^2 - c_cas/(3 x^3)],
    which requires ``k`` and ``area`` to recover rho_s = k/(A b).
    """
    x = _check_gap(x)
    if isinstance(p, PhysicalParams):
        return _scalar_or_array(0.5 * p.k / p.area * (x - p.x0) ** 2 + casimir_energy_per_area(x))
    d = as_dimensionless(p)
    if d.k is None or d.area is None:
        raise ValueError("k and area are needed to express the potential in J/m^2")
    rho_s = d.k / (d.area * d.b)
    return _scalar_or_array(rho_s * (0.5 * d.b * (x - d.l_star) ** 2 - d.c_cas / (3.0 * x**3)))
