#
# Bose-Einstein thermometry and the pump-power -> coupling-rate map.
#
# A traveling acoustic mode at 7.38 GHz sits at about 827 thermal phonons
# at room temperature.  Cooling it to 212 phonons is equivalent to a mode
# temperature near 75 K; this script draws the occupation/temperature
# correspondence and the square-root power scaling of the optomechanical
# coupling rate.
#
import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from brillouin_cooling import (
    Drive,
    SystemParams,
    bose_einstein_occupation,
    coupling_strength,
    effective_temperature,
)

params = SystemParams.defaults()
omega = params.omega_b

print("acoustic frequency      : %.2f GHz" % (omega / 1e9))
print("bath temperature        : %.1f K" % params.temperature)
print("thermal occupation      : %.4f phonons" % params.thermal_occupation)

# Occupation vs temperature for the fixed 7.38 GHz mode.
temps = np.linspace(1.0, 320.0, 400)
occs = np.array([bose_einstein_occupation(omega, t) for t in temps])

# Invert a few landmark occupations back to effective temperatures.
landmarks = [826.75, 212.0, 94.19]
for n in landmarks:
    t_eff = effective_temperature(n, omega)
    print("n = %8.2f phonons  ->  T_eff = %7.2f K" % (n, t_eff))

# Coupling rate grows with the square root of pump power.
powers = np.linspace(0.0, 1.0, 200)
g_vals = [coupling_strength(params, Drive(p)) for p in powers]
print("g at 0.1 W              : %.4e 1/s" % coupling_strength(params, Drive(0.1)))
print("g(0.4)/g(0.1)           : %.6f (expect 2)" %
      (coupling_strength(params, Drive(0.4)) / coupling_strength(params, Drive(0.1))))

fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4))

ax1.semilogy(temps, occs)
for n in landmarks:
    ax1.axhline(n, color="gray", lw=0.5, ls="--")
ax1.set_xlabel("temperature (K)")
ax1.set_ylabel("thermal occupation")
ax1.set_title("Bose-Einstein occupation at 7.38 GHz")

ax2.plot(powers, g_vals)
ax2.set_xlabel("pump power (W)")
ax2.set_ylabel("coupling rate g (1/s)")
ax2.set_title("g scales as sqrt(P)")

fig.tight_layout()
fig.savefig("demos/01_thermometry_and_coupling.png", dpi=150)
print("wrote demos/01_thermometry_and_coupling.png")
