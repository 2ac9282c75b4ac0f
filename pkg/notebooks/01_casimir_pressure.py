# %% [markdown]
# # Casimir pressure between ideal plates
#
# The attraction grows as 1/x^4. At 10 nm it is about one atmosphere,
# at 1 um it has dropped by eight orders of magnitude.

# %%
import numpy as np

from casimir_oscillator import casimir_energy_per_area, casimir_pressure

for x in (1e-8, 1e-7, 1e-6):
    p = casimir_pressure(x)
    print(f"x = {x:7.0e} m   P = {p: .4e} Pa  ({p / 101325: .3e} atm)   E/A = {casimir_energy_per_area(x): .4e} J/m^2")

# %% [markdown]
# The pressure is minus the gradient of the energy per area; a centred
# difference shows it.

# %%
x, h = 3e-7, 1e-12
fd = -(casimir_energy_per_area(x + h) - casimir_energy_per_area(x - h)) / (2 * h)
print("relative mismatch:", abs(fd / casimir_pressure(x) - 1))

# %%
gaps = np.geomspace(1e-8, 1e-5, 4)
print("quartic law, P(2x)/P(x):", casimir_pressure(2 * gaps) / casimir_pressure(gaps))
