#
# Transient cooling dynamics of the second-order moments.
#
# Starting from the room-temperature thermal state (zero photons, n_th
# phonons, no coherence), the coupled photon/phonon/coherence moments
# relax into the cooled steady state.  The fixed-step RK4 integrator
# reports a step-halving error estimate, and its late-time state matches
# the direct linear-solve stationary state to the requested tolerance.
#
import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from brillouin_cooling import (
    Drive,
    MomentState,
    SystemParams,
    coupling_strength,
    integrate,
    settle,
)

params = SystemParams.defaults()
n_th = params.thermal_occupation
g = coupling_strength(params, Drive(0.2))

thermal = MomentState(n_a=0.0, n_b=n_th, coherence=0.0)
t_end = 40.0 / params.gamma_m

traj = integrate(thermal, params, g, t_end=t_end, tol=1e-10)
stationary = settle(params, g)

print("coupling rate          : %.4e 1/s" % g)
print("integrator step        : %.3e s" % traj.step_seconds)
print("error estimate         : %.2e (converged: %s)" %
      (traj.error_estimate, traj.converged))
print("final N_b (integrate)  : %.10f" % traj.n_b[-1])
print("stationary N_b (solve) : %.10f" % stationary.n_b)
print("relative mismatch      : %.2e" %
      (abs(traj.n_b[-1] - stationary.n_b) / stationary.n_b))
print("final N_a              : %.6f" % traj.n_a[-1])
print("final |coherence|      : %.6f" % abs(traj.coherence[-1]))

micro = traj.times * 1e6

fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4))

ax1.plot(micro, traj.n_b, label="N_b(t)")
ax1.axhline(stationary.n_b, color="gray", ls="--", lw=0.8,
            label="stationary")
ax1.axhline(n_th, color="gray", ls=":", lw=0.8, label="thermal")
ax1.set_xlabel("time (us)")
ax1.set_ylabel("phonon occupation")
ax1.legend()

ax2.plot(micro, traj.n_a, label="N_a(t)")
ax2.plot(micro, np.abs(traj.coherence), label="|<a b>|")
ax2.set_xlabel("time (us)")
ax2.set_ylabel("moment value")
ax2.legend()

fig.tight_layout()
fig.savefig("demos/03_moment_dynamics.png", dpi=150)
print("wrote demos/03_moment_dynamics.png")
