"""Simulation of optoacoustic anti-Stokes cooling of traveling phonons.

A continuous pump wave scattering off a thermally populated acoustic mode
into an anti-Stokes optical sideband removes phonons from the acoustic
mode.  This package models the linearized two-mode interaction in the
rotating frame and provides:

``core``
    Physical constants, system parameters, Bose-Einstein thermometry and
    the pump-power-to-coupling-strength map.
``steady``
    Closed-form steady-state observables: phonon occupation, effective
    linewidth, cooling rate, asymptotic floors, and power sweeps.
``moments``
    Time-domain integration of the second-order-moment equations plus a
    direct linear-solve steady state.
``langevin``
    Stochastic Euler-Maruyama ensembles of the Langevin equations, used
    as a brute-force cross-check of every closed form.
``spectrum``
    Analytic power spectral densities of both modes and Lorentzian
    linewidth extraction.
``depletion``
    Steady-state backward-SBS pump/probe propagation quantifying where
    the undepleted-pump assumption breaks.
``config`` / ``cli``
    Strict key-value run configuration and the ``brillouin-cooling``
    command-line front end emitting deterministic CSV files.
"""

from .core import (
    Detuning,
    Drive,
    NumericalError,
    SystemParams,
    bose_einstein_occupation,
    coupling_strength,
    effective_temperature,
    gain_profile,
)
from .steady import (
    SteadyObservables,
    SweepResult,
    cooling_rate,
    cooling_rate_floor,
    effective_linewidth,
    linewidth_saturation,
    occupation_floor,
    phonon_occupation_detuned,
    phonon_occupation_phase_matched,
    power_for_occupation,
    power_sweep,
    steady_observables,
)
from .moments import (
    MomentState,
    Trajectory,
    integrate,
    moment_derivative,
    settle,
    system_matrix,
)
from .langevin import NoiseSpec, TrajectoryEnsemble, run_ensemble, simulate_trajectory
from .spectrum import (
    FitConvergenceError,
    GridCoverageError,
    LinewidthTable,
    LorentzianFit,
    SpectrumTrace,
    acoustic_psd,
    anti_stokes_peak_height,
    default_frequency_grid,
    fit_lorentzian,
    linewidth_vs_power,
    optical_psd,
)
from .depletion import (
    PropagationProfile,
    depletion_threshold,
    propagate,
    small_signal_gain,
)
from .config import ConfigError, RunConfig, parse_config

__version__ = "0.1.0"

__all__ = [
    "ConfigError",
    "Detuning",
    "Drive",
    "FitConvergenceError",
    "GridCoverageError",
    "LinewidthTable",
    "LorentzianFit",
    "MomentState",
    "NoiseSpec",
    "NumericalError",
    "PropagationProfile",
    "RunConfig",
    "SpectrumTrace",
    "SteadyObservables",
    "SweepResult",
    "Trajectory",
    "TrajectoryEnsemble",
    "acoustic_psd",
    "anti_stokes_peak_height",
    "bose_einstein_occupation",
    "cooling_rate",
    "cooling_rate_floor",
    "coupling_strength",
    "default_frequency_grid",
    "depletion_threshold",
    "effective_linewidth",
    "effective_temperature",
    "fit_lorentzian",
    "gain_profile",
    "integrate",
    "linewidth_saturation",
    "linewidth_vs_power",
    "moment_derivative",
    "occupation_floor",
    "optical_psd",
    "parse_config",
    "phonon_occupation_detuned",
    "phonon_occupation_phase_matched",
    "power_for_occupation",
    "power_sweep",
    "propagate",
    "run_ensemble",
    "settle",
    "simulate_trajectory",
    "small_signal_gain",
    "steady_observables",
    "system_matrix",
    "__version__",
]
