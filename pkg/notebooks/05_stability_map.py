# %% [markdown]
# # Stability map over stiffness and plate area
#
# k_crit is linear in A and falls as x0^-5, so the stable region is
# bounded by a straight line on log-log axes.

# %%
import numpy as np

from casimir_oscillator import Axis, SweepSpec, critical_stiffness, run_sweep, stability_boundary

spec = SweepSpec(
    axes=[Axis("k", 1e-9, 1e-3, 25, "log"), Axis("area", 1e-12, 1e-8, 9, "log")],
    fixed={"x0": 1e-6},
)
rows = run_sweep(spec)
grid = np.array([r["stable"] for r in rows]).reshape(25, 9)
for i in range(24, -1, -1):
    print(f"k = {rows[i * 9]['k']:8.1e}  " + "".join("#" if s else "." for s in grid[i]))
print(" " * 13 + "area ->")

# %%
pts = stability_boundary(spec, rows)
slope = np.polyfit(np.log([p["area"] for p in pts]), np.log([p["k"] for p in pts]), 1)[0]
print("boundary slope d log k / d log A:", round(slope, 3))
print("k_crit(A = 1e-10) =", critical_stiffness(1e-10, 1e-6))
