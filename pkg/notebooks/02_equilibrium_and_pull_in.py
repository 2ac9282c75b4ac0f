# %% [markdown]
# # Where the spring can hold the plate
#
# At rest the spring force balances the Casimir pull when
# chi^4 (1 - chi) = c_hat with chi = x/x0. The left side never exceeds
# 4^4/5^5 = 0.08192, reached at chi = 4/5, so a softer spring than
# k_crit lets the plates snap together.

# %%
import warnings

from casimir_oscillator import (
    PhysicalParams,
    ValidityWarning,
    critical_stiffness,
    harmonic_expansion,
    paper_preset,
    solve_equilibrium,
    solve_turning_point,
)

area, x0 = 1e-10, 1e-6
kc = critical_stiffness(area, x0)
print(f"k_crit for A = {area:g} m^2, x0 = {x0:g} m: {kc:.4e} N/m")

# %%
for factor in (0.5, 0.999, 1.001, 2.0, 100.0):
    p = PhysicalParams(k=factor * kc, area=area, x0=x0, rho_s=8.92e-3)
    rep = solve_equilibrium(p)
    if rep.stable:
        _, k_eff, omega = harmonic_expansion(p)
        print(f"k = {factor:7.3f} k_crit  x_eq/x0 = {rep.x_eq_stable / x0:.6f}  omega = {omega:.4f}")
    else:
        print(f"k = {factor:7.3f} k_crit  pull-in, no equilibrium")

# %% [markdown]
# The reference device (k = 1 N/m, A = x0^2) sits nine orders of
# magnitude above its threshold. Its equilibrium and the turning point
# of a plate released from x0 are both within a few 1e-9 of x0, and the
# turning point is twice as far from x0 as the equilibrium.

# %%
d = paper_preset()
rep = solve_equilibrium(d)
tp = solve_turning_point(d)
print(f"c_hat             = {d.c_hat:.6e}")
print(f"1 - x_eq/x0       = {rep.eps_eq:.6e}")
print(f"1 - x_turn/x0     = {tp.offset:.6e}")
print(f"k / k_crit        = {1.0 / rep.k_crit:.3e}")

# %% [markdown]
# Deriving the coefficients from k, A and rho_s instead of using the
# printed numbers triggers a validity warning: A = x0^2 is far from the
# A >> x0^2 regime of the ideal formula.

# %%
with warnings.catch_warnings(record=True) as caught:
    warnings.simplefilter("always", ValidityWarning)
    PhysicalParams(k=1.0, area=1e-12, x0=1e-6, rho_s=8.92e-3)
print(caught[0].message)
