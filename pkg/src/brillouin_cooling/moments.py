"""Time-domain dynamics of the second-order moments of the two coupled modes.

The mean photon number ``N_a = <a+ a>``, phonon number ``N_b = <b+ b>``
and the cross coherence ``c = <a+ b>`` of the linearized interaction obey
a closed affine system,

    dN_a/dt = -gamma_o N_a - i g (c - c*)
    dN_b/dt = -gamma_m N_b + i g (c - c*) + gamma_m n_th
    dc/dt   = -(i (delta1 - delta2) + (gamma_m + gamma_o)/2) c
              - i g N_a + i g N_b,

i.e. a real linear 4-vector ODE in (N_a, N_b, Re c, Im c).  Because the
system is affine, the classical Runge-Kutta scheme used by
:func:`integrate` has the exact continuous fixed point as its discrete
fixed point, so long-time integration reproduces the closed forms of
:mod:`~brillouin_cooling.steady` to rounding; :func:`settle` obtains the
same state directly by a 4x4 linear solve and serves as the cross-check
oracle.  Time is nondimensionalized internally by ``gamma_m + gamma_o``;
the public interface uses seconds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from .core import Detuning, NumericalError, SystemParams

_ZERO_DETUNING = Detuning(0.0, 0.0)

# Step-halving is abandoned (converged flag False) after this many
# doublings of the step count.
_MAX_REFINEMENTS = 10


@dataclass(frozen=True)
class MomentState:
    """Second-order-moment state (photon number, phonon number, coherence)."""

    n_a: float
    n_b: float
    coherence: complex

    def as_vector(self) -> NDArray[np.floating]:
        """Flat real 4-vector (N_a, N_b, Re c, Im c) used by the solvers."""
        return np.array([self.n_a, self.n_b,
                         self.coherence.real, self.coherence.imag])

    @classmethod
    def from_vector(cls, x) -> "MomentState":
        return cls(n_a=float(x[0]), n_b=float(x[1]),
                   coherence=complex(x[2], x[3]))

    def cauchy_schwarz_excess(self) -> float:
        """How far ``|c|^2`` exceeds the bound ``n_a (n_b + 1)`` (<= 0 is fine)."""
        return abs(self.coherence) ** 2 - self.n_a * (self.n_b + 1.0)


@dataclass(frozen=True)
class Trajectory:
    """Sampled moment trajectory with integrator metadata.

    ``error_estimate`` is the step-halving (Richardson) estimate of the
    relative error of the final state; ``converged`` records whether it
    met the requested tolerance.
    """

    times: NDArray[np.floating]
    n_a: NDArray[np.floating]
    n_b: NDArray[np.floating]
    coherence: NDArray[np.complexfloating]
    step_seconds: float
    method: str
    converged: bool
    error_estimate: float

    def __post_init__(self) -> None:
        if np.any(np.diff(self.times) <= 0.0):
            raise ValueError("trajectory times must be strictly increasing")

    @property
    def final_state(self) -> MomentState:
        return MomentState(n_a=float(self.n_a[-1]), n_b=float(self.n_b[-1]),
                           coherence=complex(self.coherence[-1]))


def _coefficients(params: SystemParams, g_om: float, det: Detuning):
    """Rates of the real 4-vector system, nondimensionalized by gamma_m+gamma_o."""
    scale = params.gamma_m + params.gamma_o
    gm = params.gamma_m / scale
    go = params.gamma_o / scale
    g = g_om / scale
    delta = det.difference / scale
    kappa = 0.5 * (params.gamma_m + params.gamma_o) / scale  # = 0.5
    source = gm * params.thermal_occupation
    return gm, go, g, delta, kappa, source, scale


def system_matrix(params: SystemParams, g_om: float, det: Detuning):
    """Matrix ``A`` and constant ``s`` of the system ``dx/dt = A x + s``.

    ``x = (N_a, N_b, Re c, Im c)``, entries in rate units (per second in
    the ``as_given`` convention).
    """
    gm, go, g, delta, kappa, src, scale = _coefficients(params, g_om, det)
    a = scale * np.array([
        [-go, 0.0, 0.0, 2.0 * g],
        [0.0, -gm, 0.0, -2.0 * g],
        [0.0, 0.0, -kappa, delta],
        [-g, g, -delta, -kappa],
    ])
    s = scale * np.array([0.0, src, 0.0, 0.0])
    return a, s


def moment_derivative(
    state: MomentState,
    params: SystemParams,
    g_om: float,
    det: Detuning = _ZERO_DETUNING,
) -> MomentState:
    """Time derivative of the moment state, packaged in the same shape.

    The returned object reuses ``MomentState`` as a plain value container
    for (dN_a/dt, dN_b/dt, dc/dt); its fields are rates, not occupations.
    """
    a, s = system_matrix(params, g_om, det)
    dx = a @ state.as_vector() + s
    return MomentState.from_vector(dx)


def settle(
    params: SystemParams,
    g_om: float,
    det: Detuning = _ZERO_DETUNING,
    tol: float = 1e-9,
) -> MomentState:
    """Stationary state by direct linear solve of the 4x4 system.

    Solves ``A x = -s`` and verifies the residual; the result agrees with
    the closed forms of :mod:`~brillouin_cooling.steady` to rounding.
    """
    a, s = system_matrix(params, g_om, det)
    x = np.linalg.solve(a, -s)
    scale = max(1.0, params.thermal_occupation)
    residual = np.max(np.abs(a @ x + s)) / ((params.gamma_m + params.gamma_o) * scale)
    if residual > tol:
        raise NumericalError(
            f"settle: stationary-state residual {residual:.3e} exceeds {tol:.3e}")
    return MomentState.from_vector(x)


def _rk4_run(x0, n_steps: int, h: float, coeffs, n_samples: int):
    """Fixed-step RK4 over the nondimensionalized system.

    Returns (sample_times_nondim, sample_matrix, final_vector).  The hot
    loop runs on plain floats; the system is only 4-dimensional and an
    array-based formulation is slower by an order of magnitude.
    """
    gm, go, g, delta, kappa, source = coeffs
    g2 = 2.0 * g
    x0_, x1_, x2_, x3_ = (float(x0[0]), float(x0[1]), float(x0[2]), float(x0[3]))

    stride = max(1, n_steps // max(1, n_samples - 1))
    taus = [0.0]
    samples = [(x0_, x1_, x2_, x3_)]

    half = 0.5 * h
    sixth = h / 6.0
    for k in range(n_steps):
        a0 = -go * x0_ + g2 * x3_
        a1 = -gm * x1_ - g2 * x3_ + source
        a2 = -kappa * x2_ + delta * x3_
        a3 = -kappa * x3_ - delta * x2_ + g * (x1_ - x0_)

        y0 = x0_ + half * a0
        y1 = x1_ + half * a1
        y2 = x2_ + half * a2
        y3 = x3_ + half * a3
        b0 = -go * y0 + g2 * y3
        b1 = -gm * y1 - g2 * y3 + source
        b2 = -kappa * y2 + delta * y3
        b3 = -kappa * y3 - delta * y2 + g * (y1 - y0)

        y0 = x0_ + half * b0
        y1 = x1_ + half * b1
        y2 = x2_ + half * b2
        y3 = x3_ + half * b3
        c0 = -go * y0 + g2 * y3
        c1 = -gm * y1 - g2 * y3 + source
        c2 = -kappa * y2 + delta * y3
        c3 = -kappa * y3 - delta * y2 + g * (y1 - y0)

        y0 = x0_ + h * c0
        y1 = x1_ + h * c1
        y2 = x2_ + h * c2
        y3 = x3_ + h * c3
        d0 = -go * y0 + g2 * y3
        d1 = -gm * y1 - g2 * y3 + source
        d2 = -kappa * y2 + delta * y3
        d3 = -kappa * y3 - delta * y2 + g * (y1 - y0)

        x0_ += sixth * (a0 + 2.0 * (b0 + c0) + d0)
        x1_ += sixth * (a1 + 2.0 * (b1 + c1) + d1)
        x2_ += sixth * (a2 + 2.0 * (b2 + c2) + d2)
        x3_ += sixth * (a3 + 2.0 * (b3 + c3) + d3)

        if (k + 1) % stride == 0 or k + 1 == n_steps:
            taus.append((k + 1) * h)
            samples.append((x0_, x1_, x2_, x3_))

    return np.array(taus), np.array(samples), np.array([x0_, x1_, x2_, x3_])


def integrate(
    initial: MomentState,
    params: SystemParams,
    g_om: float,
    det: Detuning = _ZERO_DETUNING,
    t_end: float = 1e-6,
    tol: float = 1e-10,
    n_samples: int = 1024,
) -> Trajectory:
    """Integrate the moment equations with fixed-step classical RK4.

    Parameters
    ----------
    initial : MomentState
        Starting moments; the thermal state is ``(0, n_th, 0)``.
    t_end : float
        Integration horizon in seconds, > 0.
    tol : float
        Relative tolerance honored by whole-run step halving: the run is
        repeated with twice the step count until the Richardson error
        estimate ``max|x_h - x_h/2| / 15`` (scaled by the occupation
        magnitude) drops below ``tol``.  Must lie in (1e-14, 1e-2).
    n_samples : int
        Approximate number of stored samples along the trajectory.

    Raises
    ------
    NumericalError
        If the step size underflows or occupations turn negative /
        violate the Cauchy-Schwarz bound beyond tolerance.
    """
    if not t_end > 0.0:
        raise ValueError("t_end must be positive")
    if not 1e-14 < tol < 1e-2:
        raise ValueError("tol must lie in (1e-14, 1e-2)")
    if g_om < 0.0:
        raise ValueError("g_om must be non-negative")

    gm, go, g, delta, kappa, source, scale = _coefficients(params, g_om, det)
    coeffs = (gm, go, g, delta, kappa, source)

    # Step bound in nondimensional time; delta enters accuracy, not
    # stability, and is already mild at this bound.
    tau_end = t_end * scale
    h_max = 0.1 * scale / (params.gamma_m + params.gamma_o + 4.0 * g_om)
    n_steps = max(1, math.ceil(tau_end / h_max))

    x_init = initial.as_vector()
    occupancy_scale = max(1.0, params.thermal_occupation,
                          abs(initial.n_a), abs(initial.n_b))

    prev_final = None
    err = math.inf
    for _ in range(_MAX_REFINEMENTS + 1):
        h = tau_end / n_steps
        if h / scale < 1e-18 * t_end:
            raise NumericalError("integrate: step size underflow")
        taus, samples, final = _rk4_run(x_init, n_steps, h, coeffs, n_samples)
        if prev_final is not None:
            err = float(np.max(np.abs(final - prev_final))) / (15.0 * occupancy_scale)
            if err <= tol:
                converged = True
                break
        prev_final = final
        n_steps *= 2
    else:
        converged = err <= tol

    negative_floor = -tol * occupancy_scale
    if samples[:, 0].min() < negative_floor or samples[:, 1].min() < negative_floor:
        raise NumericalError(
            "integrate: occupation dropped below the negativity tolerance "
            f"(floor {negative_floor:.3e})")
    cs_excess = (samples[:, 2] ** 2 + samples[:, 3] ** 2
                 - samples[:, 0] * (samples[:, 1] + 1.0))
    if cs_excess.max() > tol * occupancy_scale**2:
        raise NumericalError(
            "integrate: coherence violated the Cauchy-Schwarz bound beyond tolerance")

    return Trajectory(
        times=taus / scale,
        n_a=samples[:, 0],
        n_b=samples[:, 1],
        coherence=samples[:, 2] + 1j * samples[:, 3],
        step_seconds=h / scale,
        method="rk4",
        converged=converged,
        error_estimate=err,
    )
