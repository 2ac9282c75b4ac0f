"""Least-squares fit of u(tau) = amp (cos(omega tau) - 1).

The model has no phase: it describes a plate released at rest from x0,
so only trajectories starting with u = 0, v = 0 are accepted.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass

import numpy as np

MAX_ITER = 100
STEP_RTOL = 1e-10


class InsufficientDataError(ValueError):
    pass


@dataclass(frozen=True)
class FitResult:
    amp: float
    omega: float
    r2: float
    residual_rms: float
    iterations: int
    converged: bool

    def to_json(self, **kw) -> str:
        return json.dumps(asdict(self), **kw)


def r_squared(data, model) -> float:
    data = np.asarray(data, dtype=float)
    model = np.asarray(model, dtype=float)
    if data.shape != model.shape or data.size < 2:
        raise ValueError("data and model must have the same length >= 2")
    ss_tot = float(np.sum((data - data.mean()) ** 2))
    if ss_tot == 0.0:
        raise InsufficientDataError("data are constant; r^2 is undefined")
    return 1.0 - float(np.sum((data - model) ** 2)) / ss_tot


def sinusoid(tau, amp, omega):
    return amp * (np.cos(omega * np.asarray(tau)) - 1.0)


def _initial_guess(tau, u, v):
    flips = np.flatnonzero(((v[:-1] > 0) & (v[1:] <= 0)) | ((v[:-1] < 0) & (v[1:] >= 0)))
    if len(flips) == 0:
        raise InsufficientDataError("no reversal of the motion in the data")
    # Reversals fall at n pi / omega. Timing the last one (linear
    # interpolation of v) avoids the up-to-one-half-period bias of
    # dividing the count by the full duration.
    i = flips[-1]
    t_last = tau[i] + (tau[i + 1] - tau[i]) * v[i] / (v[i] - v[i + 1])
    omega0 = math.pi * len(flips) / t_last
    amp0 = 0.5 * float(u.max() - u.min())
    return amp0, omega0


def fit_sinusoid(traj) -> FitResult:
    """Damped Gauss-Newton fit of ``amp`` and ``omega`` to ``traj.u``.

    Steps are halved while they increase the sum of squares. Iteration
    stops once the relative parameter step drops below 1e-10, or after
    100 iterations with ``converged=False``.
    """
    tau = np.asarray(traj.times, dtype=float)
    u = np.asarray(traj.u, dtype=float)
    v = np.asarray(traj.v, dtype=float)
    if len(u) < 3:
        raise InsufficientDataError("need at least 3 samples")
    span = float(u.max() - u.min())
    if span == 0.0:
        raise InsufficientDataError("trajectory is constant")
    if abs(u[0]) > 1e-6 * span:
        raise ValueError("the phase-free model needs a trajectory released from u = 0")

    amp, omega = _initial_guess(tau, u, v)
    if abs(v[0]) > 1e-6 * span * omega:
        raise ValueError("the phase-free model needs a trajectory released at rest")
    duration = tau[-1] - tau[0]
    if omega * duration / (2.0 * math.pi) < 1.9:
        raise InsufficientDataError("need at least two oscillation cycles")

    def sse(a, w):
        r = u - sinusoid(tau, a, w)
        return float(r @ r)

    cost = sse(amp, omega)
    converged = False
    it = 0
    for it in range(1, MAX_ITER + 1):
        c = np.cos(omega * tau)
        s = np.sin(omega * tau)
        resid = u - amp * (c - 1.0)
        jac = np.column_stack([c - 1.0, -amp * tau * s])
        # column scaling: amp ~ 1e-9 next to omega ~ 1
        norms = np.linalg.norm(jac, axis=0)
        norms[norms == 0] = 1.0
        step = np.linalg.lstsq(jac / norms, resid, rcond=None)[0] / norms

        lam = 1.0
        while True:
            a_new, w_new = amp + lam * step[0], omega + lam * step[1]
            new_cost = sse(a_new, w_new)
            if new_cost <= cost or lam < 1e-12:
                break
            lam *= 0.5
        rel = max(abs(lam * step[0]) / max(abs(a_new), 1e-300), abs(lam * step[1]) / max(abs(w_new), 1e-300))
        if new_cost <= cost:
            amp, omega, cost = a_new, w_new, new_cost
        if rel < STEP_RTOL or new_cost > cost:
            converged = new_cost <= cost
            break

    if amp < 0:
        # amp (cos - 1) is not symmetric in amp; a negative amplitude is
        # only reachable from very poor data and is reported as is
        converged = False
    model = sinusoid(tau, amp, omega)
    return FitResult(
        amp=float(amp),
        omega=float(omega),
        r2=r_squared(u, model),
        residual_rms=math.sqrt(cost / len(u)),
        iterations=it,
        converged=converged,
    )
