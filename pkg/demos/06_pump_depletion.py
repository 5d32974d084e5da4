#
# Pump depletion along the waveguide and the onset threshold.
#
# The backward-Stokes boundary value problem couples a forward pump to a
# counter-propagating Stokes seed.  Below threshold the seed grows by
# exp(G_B P L) and the pump barely notices; past threshold the Stokes
# wave eats a visible fraction of the pump.  Without linear loss the
# difference P_pump - P_stokes is conserved along z, which doubles as an
# integration check.
#
import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from brillouin_cooling import (
    SystemParams,
    depletion_threshold,
    propagate,
    small_signal_gain,
)

params = SystemParams.defaults()
seed = 5e-12  # W

threshold = depletion_threshold(params, seed, depletion_fraction=0.01)
print("stokes seed            : %.1e W" % seed)
print("1%% depletion threshold : %.6f W" % threshold)
print("exponent G_B P_th L    : %.4f" % small_signal_gain(params, threshold))

fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(11, 4))

for pump in (0.1, threshold, 0.4):
    profile = propagate(params, pump, seed)
    conserved = profile.pump_w - profile.stokes_w
    drift = np.max(np.abs(conserved - conserved[0])) / pump
    print("pump %.4f W: depletion %.4f%%, boundary residual %.1e, "
          "conservation drift %.1e" %
          (pump, 100.0 * profile.depletion_fraction, profile.residual,
           drift))
    ax1.plot(profile.z, profile.pump_w / pump,
             label="pump, P_in = %.3f W" % pump)
    ax2.semilogy(profile.z, profile.stokes_w,
                 label="Stokes, P_in = %.3f W" % pump)

ax1.set_xlabel("position z (m)")
ax1.set_ylabel("pump power / input")
ax1.legend(fontsize=8)

ax2.set_xlabel("position z (m)")
ax2.set_ylabel("Stokes power (W)")
ax2.legend(fontsize=8)

fig.tight_layout()
fig.savefig("demos/06_pump_depletion.png", dpi=150)
print("wrote demos/06_pump_depletion.png")
