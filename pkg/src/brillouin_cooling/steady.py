"""Closed-form steady-state observables of the optically cooled acoustic mode.

All expressions live in the rotating frame of the linearized two-mode
(anti-Stokes photon / acoustic phonon) interaction with coupling rate
``g`` (from :func:`~brillouin_cooling.core.coupling_strength`), optical
loss ``gamma_o`` and intrinsic acoustic damping ``gamma_m``.  The mode
occupation relaxes to

    N_b = Gamma_m * n_th * (4 g^2 s + gamma_o s^2 + 4 gamma_o d^2)
          / ((4 g^2 + gamma_o Gamma_m) s^2 + 4 gamma_o Gamma_m d^2)

with ``s = gamma_m + gamma_o`` and ``d = delta1 - delta2``; the cooling
rate ``R = N_b / n_th`` equals ``gamma_m / gamma_eff`` where the
effective damping at phase matching is

    gamma_eff = gamma_m + 4 g^2 gamma_o / (4 g^2 + gamma_o (gamma_m + gamma_o)).

The two forms are algebraically identical at zero detuning; both are
exposed and the identity is exercised by the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray
from scipy.optimize import brentq

from .core import Detuning, Drive, SystemParams, coupling_strength, effective_temperature

_ZERO_DETUNING = Detuning(0.0, 0.0)

# Occupations below this are reported as T_eff = 0 rather than fed to the
# logarithm in effective_temperature.
_OCCUPATION_FLOOR_FOR_TEMPERATURE = 1e-12


@dataclass(frozen=True)
class SteadyObservables:
    """Steady-state observables at one operating point.

    ``cooling_rate`` is the defining ratio ``n_b_ss / n_th`` and
    ``gamma_eff = gamma_m / cooling_rate``; at zero detuning this equals
    the explicit :func:`effective_linewidth` formula to rounding.
    """

    n_b_ss: float
    gamma_eff: float
    cooling_rate: float
    t_eff: float


@dataclass(frozen=True)
class SweepResult:
    """Ordered pump-power sweep of steady-state observables."""

    powers: NDArray[np.floating]
    g_oms: NDArray[np.floating]
    rows: tuple[SteadyObservables, ...]

    def __post_init__(self) -> None:
        if len(self.rows) != len(self.powers) or len(self.g_oms) != len(self.powers):
            raise ValueError("powers, g_oms and rows must have equal length")
        if np.any(np.diff(self.powers) <= 0.0) and len(self.powers) > 1:
            raise ValueError("sweep powers must be strictly increasing")

    @property
    def n_b_ss(self) -> NDArray[np.floating]:
        return np.array([row.n_b_ss for row in self.rows])

    @property
    def gamma_eff(self) -> NDArray[np.floating]:
        return np.array([row.gamma_eff for row in self.rows])

    @property
    def cooling_rate(self) -> NDArray[np.floating]:
        return np.array([row.cooling_rate for row in self.rows])

    @property
    def t_eff(self) -> NDArray[np.floating]:
        return np.array([row.t_eff for row in self.rows])


def phonon_occupation_phase_matched(params: SystemParams, g_om: float) -> float:
    """Steady-state phonon number at phase matching (zero detunings).

    Strictly decreasing in ``g_om``; equals the thermal occupation at
    ``g_om = 0`` and approaches the floor
    ``gamma_m/(gamma_m+gamma_o) * n_th`` as ``g_om -> inf``.
    """
    if g_om < 0.0:
        raise ValueError("g_om must be non-negative")
    gm, go = params.gamma_m, params.gamma_o
    four_g2 = 4.0 * g_om**2
    s = gm + go
    n_th = params.thermal_occupation
    return (four_g2 + go * s) / (four_g2 + go * gm) * gm / s * n_th


def phonon_occupation_detuned(
    params: SystemParams, g_om: float, det: Detuning
) -> float:
    """Steady-state phonon number with mode detunings.

    Depends on the detunings only through ``(delta1 - delta2)**2`` and is
    never below the phase-matched value at equal coupling.
    """
    if g_om < 0.0:
        raise ValueError("g_om must be non-negative")
    gm, go = params.gamma_m, params.gamma_o
    s = gm + go
    d2 = det.difference**2
    four_g2 = 4.0 * g_om**2
    n_th = params.thermal_occupation
    num = four_g2 * s + go * s**2 + 4.0 * go * d2
    den = (four_g2 + go * gm) * s**2 + 4.0 * go * gm * d2
    return gm * n_th * num / den


def effective_linewidth(params: SystemParams, g_om: float) -> float:
    """Optically enhanced acoustic damping rate at phase matching.

    ``gamma_m`` at zero coupling, monotonically increasing and saturating
    at ``gamma_m + gamma_o``.
    """
    if g_om < 0.0:
        raise ValueError("g_om must be non-negative")
    gm, go = params.gamma_m, params.gamma_o
    four_g2 = 4.0 * g_om**2
    return gm + four_g2 * go / (four_g2 + go * (gm + go))


def cooling_rate(params: SystemParams, g_om: float) -> float:
    """Ratio of final to initial phonon occupation, ``gamma_m / gamma_eff``.

    Identically equal to
    ``phonon_occupation_phase_matched(params, g_om) / n_th``.
    """
    return params.gamma_m / effective_linewidth(params, g_om)


def occupation_floor(params: SystemParams) -> float:
    """Analytic large-coupling limit of the phonon occupation."""
    return params.gamma_m / (params.gamma_m + params.gamma_o) * params.thermal_occupation


def cooling_rate_floor(params: SystemParams) -> float:
    """Analytic large-coupling limit of the cooling rate."""
    return params.gamma_m / (params.gamma_m + params.gamma_o)


def linewidth_saturation(params: SystemParams) -> float:
    """Analytic large-coupling limit of the effective damping rate."""
    return params.gamma_m + params.gamma_o


def steady_observables(
    params: SystemParams, g_om: float, det: Detuning = _ZERO_DETUNING
) -> SteadyObservables:
    """Bundle occupation, damping, cooling rate and temperature at one point."""
    n_b = phonon_occupation_detuned(params, g_om, det)
    n_th = params.thermal_occupation
    rate = n_b / n_th
    if n_b > _OCCUPATION_FLOOR_FOR_TEMPERATURE:
        t_eff = float(effective_temperature(n_b, params.omega_b))
    else:
        t_eff = 0.0
    return SteadyObservables(n_b_ss=n_b, gamma_eff=params.gamma_m / rate,
                             cooling_rate=rate, t_eff=t_eff)


def power_sweep(
    params: SystemParams,
    powers,
    det: Detuning = _ZERO_DETUNING,
) -> SweepResult:
    """Evaluate the steady state over an ordered grid of pump powers.

    Parameters
    ----------
    params : SystemParams
    powers : array_like
        Non-empty, non-negative, strictly increasing pump powers in W.
    det : Detuning
        Common mode detunings applied to every row.

    Raises
    ------
    ValueError
        On an empty, negative or unsorted power grid.
    """
    grid = np.asarray(powers, dtype=float)
    if grid.ndim != 1 or grid.size == 0:
        raise ValueError("powers must be a non-empty 1-d grid")
    if np.any(grid < 0.0):
        raise ValueError("powers must be non-negative")
    if grid.size > 1 and np.any(np.diff(grid) <= 0.0):
        raise ValueError("powers must be strictly increasing")
    g_oms = np.array([coupling_strength(params, Drive(p)) for p in grid])
    rows = tuple(steady_observables(params, g, det) for g in g_oms)
    return SweepResult(powers=grid, g_oms=g_oms, rows=rows)


def power_for_occupation(
    params: SystemParams,
    target: float,
    max_power: float = 10.0,
) -> float:
    """Pump power at which the phase-matched occupation equals ``target``.

    Inverts the monotone occupation-versus-power map by root bracketing.
    ``target`` must lie strictly between the large-coupling floor and the
    thermal occupation.
    """
    n_th = params.thermal_occupation
    floor = occupation_floor(params)
    if not floor < target < n_th:
        raise ValueError(
            f"target occupation must lie in ({floor:.6g}, {n_th:.6g}), got {target!r}")

    def objective(power: float) -> float:
        g = coupling_strength(params, Drive(power))
        return phonon_occupation_phase_matched(params, g) - target

    if objective(max_power) > 0.0:
        raise ValueError(
            f"target occupation {target!r} not reached below {max_power} W")
    return float(brentq(objective, 0.0, max_power, xtol=1e-15, rtol=1e-15))
