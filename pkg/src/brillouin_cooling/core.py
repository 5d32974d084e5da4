"""Physical parameters, unit conventions, thermometry and coupling strength.

Every other module in the package consumes the value types defined here.
Two unit conventions coexist in the Brillouin-scattering literature for
quoted linewidths such as "46.8 MHz": the number may be an ordinary
frequency (cycles per second) used directly as a decay rate, or an
angular rate obtained by multiplying with 2*pi.  ``SystemParams`` carries
an explicit ``rates_convention`` so the choice is made exactly once, when
parameters are constructed; all downstream formulas are expressed in the
resulting "rate units".  Dimensionless observables (cooling rate,
occupation ratios) are independent of the choice.

Mode frequencies used for thermometry (``omega_b``) are always ordinary
frequencies in Hz regardless of convention.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

# CODATA values; these are fixed constants of the model, not configuration.
HBAR = 1.054571817e-34  # reduced Planck constant, J s
PLANCK = 2.0 * math.pi * HBAR  # Planck constant h, J s
BOLTZMANN = 1.380649e-23  # Boltzmann constant, J/K
SPEED_OF_LIGHT = 299792458.0  # vacuum speed of light, m/s

AS_GIVEN = "as_given"
ANGULAR = "angular"
_CONVENTIONS = (AS_GIVEN, ANGULAR)


class NumericalError(RuntimeError):
    """A numerical procedure failed (instability, non-convergence, underflow)."""


@dataclass(frozen=True)
class SystemParams:
    """Immutable bundle of waveguide and acoustic-mode parameters.

    Parameters
    ----------
    omega_b : float
        Acoustic resonance frequency in Hz (ordinary frequency).
    gamma_m : float
        Intrinsic acoustic dissipation rate in the units selected by
        ``rates_convention``.
    gamma_o : float
        Optical loss rate of the anti-Stokes mode, same units.
    gain_total : float
        Total Brillouin gain coefficient, 1/(m W).
    gain_intrinsic : float or None
        Peak nonlinear gain of the resonance profile, m/W.  Optional;
        only ``gain_profile`` requires it.
    length : float
        Active waveguide length, m.
    refractive_index : float
        Effective refractive index (dimensionless, >= 1).
    temperature : float
        Bath temperature, K.
    rates_convention : str
        ``"as_given"`` when quoted MHz linewidths are used directly as
        rates (default), ``"angular"`` when they have been multiplied by
        2*pi.  The conversion must happen before construction; this field
        only records which choice was made.
    """

    omega_b: float = 7.38e9
    gamma_m: float = 46.8e6
    gamma_o: float = 364e6
    gain_total: float = 164.0
    gain_intrinsic: float | None = 1.32e-9
    length: float = 0.5
    refractive_index: float = 2.5
    temperature: float = 293.0
    rates_convention: str = AS_GIVEN

    def __post_init__(self) -> None:
        for name in ("omega_b", "gamma_m", "gamma_o", "gain_total", "length",
                     "temperature"):
            if not getattr(self, name) > 0.0:
                raise ValueError(f"{name} must be strictly positive")
        if self.gain_intrinsic is not None and not self.gain_intrinsic > 0.0:
            raise ValueError("gain_intrinsic must be strictly positive when given")
        if not self.refractive_index >= 1.0:
            raise ValueError("refractive_index must be >= 1")
        if self.rates_convention not in _CONVENTIONS:
            raise ValueError(
                f"rates_convention must be one of {_CONVENTIONS!r}, "
                f"got {self.rates_convention!r}")

    @classmethod
    def defaults(cls, rates_convention: str = AS_GIVEN) -> "SystemParams":
        """Reference parameter set of the modeled waveguide experiment.

        With ``rates_convention="angular"`` the quoted linewidths are
        multiplied by 2*pi here, once.
        """
        scale = 2.0 * math.pi if rates_convention == ANGULAR else 1.0
        return cls(gamma_m=46.8e6 * scale, gamma_o=364e6 * scale,
                   rates_convention=rates_convention)

    @property
    def thermal_occupation(self) -> float:
        """Mean thermal phonon number of the acoustic mode at ``temperature``."""
        return float(bose_einstein_occupation(self.omega_b, self.temperature))


@dataclass(frozen=True)
class Detuning:
    """Wavenumber-induced frequency shifts of the two rotating-frame modes.

    ``delta1`` applies to the anti-Stokes optical mode and ``delta2`` to
    the acoustic mode, both in rate units.  ``Detuning(0.0, 0.0)`` is the
    phase-matched case; the steady-state occupation depends on the pair
    only through ``delta1 - delta2``.
    """

    delta1: float = 0.0
    delta2: float = 0.0

    def __post_init__(self) -> None:
        if not (math.isfinite(self.delta1) and math.isfinite(self.delta2)):
            raise ValueError("detunings must be finite")

    @property
    def difference(self) -> float:
        """The physically relevant combination ``delta1 - delta2``."""
        return self.delta1 - self.delta2


@dataclass(frozen=True)
class Drive:
    """Pump drive: peak power and pump/anti-Stokes frequency detuning.

    ``delta_l=None`` selects the phase-matched value ``-omega_b`` (in the
    active rate units); it is resolved wherever a concrete number is
    needed.  The coupling-strength map below depends only on ``power``.
    """

    power: float
    delta_l: float | None = None

    def __post_init__(self) -> None:
        if not self.power >= 0.0:
            raise ValueError("power must be non-negative")


def bose_einstein_occupation(
    omega: float | NDArray[np.floating],
    temperature: float,
) -> float | NDArray[np.floating]:
    """Mean thermal occupation of a mode at frequency ``omega``.

    Parameters
    ----------
    omega : float or ndarray
        Mode frequency in Hz (ordinary frequency), > 0.
    temperature : float
        Temperature in K, >= 0.

    Returns
    -------
    float or ndarray
        ``1/(exp(h*omega/(k_B*T)) - 1)``; exactly 0 at ``T = 0``.

    Notes
    -----
    Uses ``expm1`` so the high-temperature regime ``h*omega << k_B*T``
    keeps full precision (occupations of order 1e11 are exact to double
    precision rounding).
    """
    om = np.asarray(omega, dtype=float)
    if np.any(om <= 0.0):
        raise ValueError("omega must be strictly positive")
    if temperature < 0.0:
        raise ValueError("temperature must be non-negative")
    if temperature == 0.0:
        result = np.zeros_like(om)
    else:
        x = PLANCK * om / (BOLTZMANN * temperature)
        # deep in the quantum regime exp(x) overflows and the occupation
        # saturates to exactly zero, which is the correct limit
        with np.errstate(over="ignore"):
            result = 1.0 / np.expm1(x)
    if np.isscalar(omega):
        return float(result)
    return result


def effective_temperature(
    occupation: float | NDArray[np.floating],
    omega: float,
) -> float | NDArray[np.floating]:
    """Temperature at which a mode at ``omega`` holds ``occupation`` quanta.

    Exact inverse of :func:`bose_einstein_occupation`:
    ``T = h*omega / (k_B * ln(1 + 1/n))``.

    Parameters
    ----------
    occupation : float or ndarray
        Mean phonon number, > 0.
    omega : float
        Mode frequency in Hz, > 0.
    """
    n = np.asarray(occupation, dtype=float)
    if np.any(n <= 0.0):
        raise ValueError("occupation must be strictly positive")
    if omega <= 0.0:
        raise ValueError("omega must be strictly positive")
    result = PLANCK * omega / (BOLTZMANN * np.log1p(1.0 / n))
    if np.isscalar(occupation):
        return float(result)
    return result


def coupling_strength(params: SystemParams, drive: Drive) -> float:
    """Optomechanical coupling rate ``g_om`` produced by pump power ``P``.

    Evaluates ``g_om = sqrt(G_B * Gamma_m * P * L * c / (4 n))`` with
    ``Gamma_m`` in the configured rate units, so ``g_om`` comes out in
    the same units.  The calibration is used verbatim, explicit length
    factor included; it scales as ``sqrt(P)`` and vanishes at ``P = 0``.
    """
    value = (params.gain_total * params.gamma_m * drive.power * params.length
             * SPEED_OF_LIGHT / (4.0 * params.refractive_index))
    return math.sqrt(value)


def gain_profile(
    omega: float | NDArray[np.floating],
    params: SystemParams,
    gamma_eff: float,
) -> float | NDArray[np.floating]:
    """Lorentzian gain resonance ``g_B * (G/2)^2 / ((omega_b - omega)^2 + (G/2)^2)``.

    Parameters
    ----------
    omega : float or ndarray
        Probe frequency offset variable, same units as ``params.omega_b``.
    params : SystemParams
        Must carry ``gain_intrinsic`` (peak value, m/W).
    gamma_eff : float
        Full width at half maximum ``G`` of the resonance, same units as
        ``omega``.

    Returns
    -------
    float or ndarray
        Peak value ``gain_intrinsic`` at ``omega = omega_b``; exactly
        half of it at ``omega = omega_b +/- gamma_eff/2``.
    """
    if params.gain_intrinsic is None:
        raise ValueError("gain_profile requires params.gain_intrinsic")
    if gamma_eff <= 0.0:
        raise ValueError("gamma_eff must be strictly positive")
    om = np.asarray(omega, dtype=float)
    half = gamma_eff / 2.0
    result = params.gain_intrinsic * half**2 / ((params.omega_b - om) ** 2 + half**2)
    if np.isscalar(omega):
        return float(result)
    return result
