"""Dynamics and stability of a micro-spring held against Casimir attraction."""

__version__ = "0.1.0"

from .analysis import (
    CollapseError,
    EquilibriumReport,
    TurningPoint,
    UnstableConfigurationError,
    critical_stiffness,
    harmonic_expansion,
    solve_equilibrium,
    solve_turning_point,
    stability_criterion,
)
from .fit import FitResult, InsufficientDataError, fit_sinusoid, r_squared
from .integrator import (
    ContactError,
    SimConfig,
    Trajectory,
    acceleration,
    detect_turning_points,
    energy_drift,
    rk4_integrate,
    total_energy,
    verlet_integrate,
)
from .physics_model import (
    DimensionlessParams,
    PhysicalConstants,
    PhysicalParams,
    SingularityError,
    ValidityWarning,
    casimir_energy_per_area,
    casimir_pressure,
    nondimensionalize,
    paper_device,
    paper_preset,
    surface_density,
    total_potential,
)
from .sweep import Axis, SweepSpec, run_sweep, stability_boundary
