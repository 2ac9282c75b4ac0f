"""Time integration in natural units.

The state is the offset u = (x - x0)/x0 and its derivative with respect
to tau = t/t*. The equation of motion is

    u'' = -u - c_hat / (1 + u)**4

Integrating the offset instead of x itself matters: the oscillation of
the reference device is ~1e-9 of x0, which the raw two-step recurrence
would lose to cancellation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from .physics_model import SingularityError

TWO_PI = 2.0 * math.pi
DEFAULT_DT = TWO_PI / 1000
DEFAULT_PERIODS = 5


class ContactError(SingularityError):
    """The moving plate reached the fixed one (1 + u <= 0)."""


def acceleration(u: float, c_hat: float) -> float:
    gap = 1.0 + u
    if not gap > 0.0:
        raise ContactError(f"contact at u = {u!r}")
    return -u - c_hat / gap**4


def total_energy(u, v, c_hat):
    """Dimensionless energy 1/2 v^2 + 1/2 u^2 - c_hat / (3 (1+u)^3).

    The Casimir term is split as -c_hat/3 - c_hat/3 * ((1+u)^-3 - 1) so
    the u-dependent part keeps full precision when u is tiny.
    """
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if np.any(~(1.0 + u > 0.0)):
        raise ContactError("energy undefined at or past contact")
    excess = 0.5 * v * v + 0.5 * u * u - (c_hat / 3.0) * np.expm1(-3.0 * np.log1p(u))
    out = excess - c_hat / 3.0
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class SimConfig:
    c_hat: float
    dt: float = DEFAULT_DT
    n_steps: int = int(round(DEFAULT_PERIODS * TWO_PI / DEFAULT_DT))
    u0: float = 0.0
    v0: float = 0.0

    def __post_init__(self):
        if not self.dt > 0:
            raise ValueError("dt must be > 0")
        if int(self.n_steps) != self.n_steps or self.n_steps < 2:
            raise ValueError("n_steps must be an integer >= 2")
        if not 1.0 + self.u0 > 0:
            raise ValueError("initial gap must be open: 1 + u0 > 0")
        if not self.c_hat >= 0:
            raise ValueError("c_hat must be >= 0")

    @classmethod
    def for_periods(cls, c_hat, periods=DEFAULT_PERIODS, dt=DEFAULT_DT, u0=0.0, v0=0.0):
        """Run for ``periods`` harmonic periods (2 pi t* each)."""
        n_steps = max(2, int(round(periods * TWO_PI / dt)))
        return cls(c_hat=c_hat, dt=dt, n_steps=n_steps, u0=u0, v0=v0)

    @property
    def duration(self) -> float:
        return self.n_steps * self.dt


@dataclass(frozen=True)
class Trajectory:
    times: np.ndarray
    u: np.ndarray
    v: np.ndarray
    energy: np.ndarray
    c_hat: float
    dt: float
    collapsed: bool = False

    def __post_init__(self):
        n = len(self.times)
        if not (len(self.u) == len(self.v) == len(self.energy) == n):
            raise ValueError("trajectory arrays must have equal length")
        for arr in (self.times, self.u, self.v, self.energy):
            arr.setflags(write=False)

    def __len__(self):
        return len(self.times)

    @classmethod
    def from_arrays(cls, times, u, v, c_hat, collapsed=False):
        times = np.array(times, dtype=float)
        u = np.array(u, dtype=float)
        v = np.array(v, dtype=float)
        dt = float(times[1] - times[0]) if len(times) > 1 else 0.0
        return cls(times, u, v, np.asarray(total_energy(u, v, c_hat), dtype=float), c_hat, dt, collapsed)


def _velocities(u: np.ndarray, dt: float, v0: float, c_hat: float) -> np.ndarray:
    v = np.empty_like(u)
    v[0] = v0
    if len(u) > 2:
        v[1:-1] = (u[2:] - u[:-2]) / (2.0 * dt)
    # End velocity as in velocity Verlet: second order, and it makes a
    # restart from (u[-1], -v[-1]) retrace the positions exactly.
    if len(u) > 1:
        v[-1] = (u[-1] - u[-2]) / dt + 0.5 * dt * acceleration(u[-1], c_hat)
    return v


def verlet_integrate(cfg: SimConfig) -> Trajectory:
    """Position Verlet, u[n+1] = 2 u[n] - u[n-1] + a(u[n]) dt^2.

    The first step is the Taylor start u[1] = u0 + v0 dt + a(u0) dt^2/2.
    Velocities are central differences of the stored positions. On
    contact the trajectory is returned up to the last open-gap sample with
    ``collapsed=True``.
    """
    dt, c_hat = cfg.dt, cfg.c_hat
    dt2 = dt * dt
    u = np.empty(cfg.n_steps + 1)
    u[0] = cfg.u0
    n = 1
    collapsed = False
    try:
        u[1] = cfg.u0 + cfg.v0 * dt + 0.5 * acceleration(cfg.u0, c_hat) * dt2
        if not 1.0 + u[1] > 0.0:
            raise ContactError
        n = 2
        for i in range(1, cfg.n_steps):
            nxt = 2.0 * u[i] - u[i - 1] + acceleration(u[i], c_hat) * dt2
            if not 1.0 + nxt > 0.0:
                raise ContactError
            u[i + 1] = nxt
            n = i + 2
    except ContactError:
        collapsed = True
    u = u[:n]
    times = dt * np.arange(n)
    v = _velocities(u, dt, cfg.v0, c_hat)
    return Trajectory(times, u, v, np.asarray(total_energy(u, v, c_hat)), c_hat, dt, collapsed)


def rk4_integrate(cfg: SimConfig) -> Trajectory:
    """Classical fourth-order Runge-Kutta on (u, v); independent check on Verlet."""
    dt, c_hat = cfg.dt, cfg.c_hat
    h2 = 0.5 * dt
    u = np.empty(cfg.n_steps + 1)
    v = np.empty(cfg.n_steps + 1)
    u[0], v[0] = cfg.u0, cfg.v0
    n = 1
    collapsed = False
    try:
        for i in range(cfg.n_steps):
            ui, vi = u[i], v[i]
            k1u, k1v = vi, acceleration(ui, c_hat)
            k2u, k2v = vi + h2 * k1v, acceleration(ui + h2 * k1u, c_hat)
            k3u, k3v = vi + h2 * k2v, acceleration(ui + h2 * k2u, c_hat)
            k4u, k4v = vi + dt * k3v, acceleration(ui + dt * k3u, c_hat)
            un = ui + dt / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u)
            if not 1.0 + un > 0.0:
                raise ContactError
            u[i + 1] = un
            v[i + 1] = vi + dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)
            n = i + 2
    except ContactError:
        collapsed = True
    u, v = u[:n], v[:n]
    times = dt * np.arange(n)
    return Trajectory(times, u, v, np.asarray(total_energy(u, v, c_hat)), c_hat, dt, collapsed)


def reversed_config(traj: Trajectory) -> SimConfig:
    """Config that restarts from the final state with the velocity negated."""
    return SimConfig(c_hat=traj.c_hat, dt=traj.dt, n_steps=len(traj) - 1, u0=float(traj.u[-1]), v0=-float(traj.v[-1]))


def energy_drift(traj: Trajectory) -> float:
    """max |E[i] - E[0]| in units of the largest kinetic energy along the run."""
    e = np.asarray(traj.energy)
    dev = float(np.max(np.abs(e - e[0]))) if len(e) else 0.0
    if dev == 0.0:
        return 0.0
    scale = float(np.max(0.5 * np.asarray(traj.v) ** 2))
    return dev / scale if scale > 0 else math.inf


def energy_trend(traj: Trajectory) -> float:
    """Least-squares slope of E(tau) per 2 pi of tau, in kinetic-energy units."""
    scale = float(np.max(0.5 * np.asarray(traj.v) ** 2))
    slope = np.polyfit(traj.times, np.asarray(traj.energy) - traj.energy[0], 1)[0]
    return float(slope * TWO_PI / scale)


def detect_turning_points(traj: Trajectory) -> List[Tuple[float, float, str]]:
    """Reversals of the motion as ``(tau, u, kind)`` with kind "min" or "max".

    A reversal is a sign change of v between neighbouring samples; its
    location is the vertex of the parabola through the three samples
    around the more extreme of the pair.
    """
    u = np.asarray(traj.u)
    v = np.asarray(traj.v)
    if len(u) < 3:
        raise ValueError("need at least 3 samples")
    t = np.asarray(traj.times)
    dt = t[1] - t[0]
    down = (v[:-1] > 0) & (v[1:] <= 0)
    up = (v[:-1] < 0) & (v[1:] >= 0)
    out = []
    for i in np.flatnonzero(down | up):
        is_min = bool(up[i])
        pair = u[i : i + 2]
        j = i + (int(np.argmin(pair)) if is_min else int(np.argmax(pair)))
        j = min(max(j, 1), len(u) - 2)
        um, u0, up_ = u[j - 1], u[j], u[j + 1]
        curv = um - 2.0 * u0 + up_
        if curv == 0.0:
            tau, uu = t[j], u0
        else:
            tau = t[j] + 0.5 * dt * (um - up_) / curv
            uu = u0 - (um - up_) ** 2 / (8.0 * curv)
        kind = "min" if curv > 0 or (curv == 0 and is_min) else "max"
        out.append((float(tau), float(uu), kind))
    return out
