# %% [markdown]
# # Fitting x/x0 = 1 + Amp (cos(omega t/t*) - 1)
#
# The motion of the reference device is a near-perfect cosine of
# amplitude c_hat and unit frequency; anharmonic corrections are of
# relative order c_hat.

# %%
from casimir_oscillator import SimConfig, fit_sinusoid, paper_preset, verlet_integrate

for c_hat in (paper_preset().c_hat, 1e-3, 0.03, 0.06):
    res = fit_sinusoid(verlet_integrate(SimConfig.for_periods(c_hat)))
    print(f"c_hat = {c_hat:.3e}  Amp = {res.amp:.6e}  omega = {res.omega:.6f}  r2 = {res.r2:.8f}")

# %% [markdown]
# The step size matters little for the fit: the Verlet frequency error
# is dt^2/24.

# %%
import math

for steps in (100, 1000, 10000):
    res = fit_sinusoid(verlet_integrate(SimConfig.for_periods(paper_preset().c_hat, dt=2 * math.pi / steps)))
    print(f"{steps:6d} steps/period  omega - 1 = {res.omega - 1:.3e}")
