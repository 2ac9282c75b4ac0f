# %% [markdown]
# # Time evolution
#
# Natural units: lengths in x0, times in t* = b^-1/2. The offset
# u = (x - x0)/x0 obeys u'' = -u - c_hat/(1 + u)^4.

# %%
import math
import pathlib

import numpy as np

from casimir_oscillator import (
    SimConfig,
    detect_turning_points,
    energy_drift,
    paper_preset,
    rk4_integrate,
    verlet_integrate,
)
from casimir_oscillator.io import svg_polyline

c_hat = paper_preset().c_hat
traj = verlet_integrate(SimConfig.for_periods(c_hat, periods=5))
print("samples:", len(traj), " u range:", traj.u.min(), traj.u.max())
print("energy drift (kinetic units):", energy_drift(traj))

# %%
minima = [u for _, u, kind in detect_turning_points(traj) if kind == "min"]
print("successive minima of u:", minima)
print("cycle-to-cycle spread:", max(minima) - min(minima))

# %% [markdown]
# RK4 on the same grid is an independent check.

# %%
ref = rk4_integrate(SimConfig.for_periods(c_hat, periods=5))
print("max |Verlet - RK4| / amplitude:", np.max(np.abs(traj.u - ref.u)) / (0.5 * np.ptp(traj.u)))

# %% [markdown]
# A strongly anharmonic case (c_hat = 0.2, beyond pull-in) ends in contact.

# %%
crash = verlet_integrate(SimConfig.for_periods(0.2, periods=2))
print("collapsed:", crash.collapsed, "at tau =", crash.times[-1])

# %%
out = pathlib.Path("fig2_trajectory.svg")
out.write_text(svg_polyline(traj.times, traj.u, xlabel="t/t*", ylabel="(x - x0)/x0", title="reference preset"))
print("wrote", out)
