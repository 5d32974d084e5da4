#
# Steady-state anti-Stokes cooling curves: phonon occupation, effective
# temperature, and effective linewidth versus pump power.
#
# The closed-form steady state obeys an exact identity
#     gamma_m / gamma_eff = N_b / n_th
# so linewidth broadening and occupation reduction are two faces of the
# same cooling factor.  Both saturate: the occupation at a floor set by
# the ratio of acoustic to optical damping, the linewidth at
# gamma_m + gamma_o.
#
import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from brillouin_cooling import (
    Drive,
    SystemParams,
    cooling_rate_floor,
    coupling_strength,
    linewidth_saturation,
    occupation_floor,
    power_for_occupation,
    power_sweep,
    steady_observables,
)

params = SystemParams.defaults()
n_th = params.thermal_occupation

sweep = power_sweep(params, np.linspace(0.0, 2.0, 400))

floor = occupation_floor(params)
print("thermal occupation    : %.4f" % n_th)
print("occupation floor      : %.4f  (x%.1f reduction)" % (floor, n_th / floor))
print("cooling-rate floor    : %.6f" % cooling_rate_floor(params))
print("linewidth saturation  : %.4e 1/s" % linewidth_saturation(params))

# Power required to reach 212 phonons, and the observables there.
p_212 = power_for_occupation(params, 212.0)
obs = steady_observables(params, coupling_strength(params, Drive(p_212)))
print("power for 212 phonons : %.6f W" % p_212)
print("  T_eff there         : %.3f K" % obs.t_eff)
print("  gamma_eff there     : %.4e 1/s" % obs.gamma_eff)

# The identity gamma_m/gamma_eff == N_b/n_th holds pointwise.
g = coupling_strength(params, Drive(0.73))
point = steady_observables(params, g)
lhs = params.gamma_m / point.gamma_eff
rhs = point.n_b_ss / n_th
print("identity check        : %.15f vs %.15f" % (lhs, rhs))

fig, axes = plt.subplots(1, 3, figsize=(13, 4))

axes[0].plot(sweep.powers, sweep.n_b_ss)
axes[0].axhline(floor, color="gray", ls="--", lw=0.8, label="floor")
axes[0].set_xlabel("pump power (W)")
axes[0].set_ylabel("steady phonon occupation")
axes[0].legend()

axes[1].plot(sweep.powers, sweep.t_eff)
axes[1].set_xlabel("pump power (W)")
axes[1].set_ylabel("effective temperature (K)")

axes[2].plot(sweep.powers, sweep.gamma_eff / 1e6)
axes[2].axhline(linewidth_saturation(params) / 1e6, color="gray",
                ls="--", lw=0.8, label="gamma_m + gamma_o")
axes[2].set_xlabel("pump power (W)")
axes[2].set_ylabel("effective linewidth (MHz)")
axes[2].legend()

fig.tight_layout()
fig.savefig("demos/02_steady_state_cooling.png", dpi=150)
print("wrote demos/02_steady_state_cooling.png")
