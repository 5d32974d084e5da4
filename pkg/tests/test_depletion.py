"""Pump/Stokes propagation: conservation, gain law, and the threshold search."""

import math

import numpy as np
import pytest

from brillouin_cooling import (
    NumericalError,
    SystemParams,
    depletion_threshold,
    propagate,
    small_signal_gain,
)

PARAMS = SystemParams()


def test_small_signal_gain_exponent():
    assert small_signal_gain(PARAMS, 0.1) == pytest.approx(8.2, rel=1e-12)
    assert small_signal_gain(PARAMS, 0.0) == 0.0
    with pytest.raises(ValueError):
        small_signal_gain(PARAMS, -0.1)


def test_boundary_conditions_are_met():
    profile = propagate(PARAMS, 0.1, 1e-9)
    assert profile.z[0] == 0.0
    assert profile.z[-1] == PARAMS.length
    assert len(profile.z) == 2001
    assert profile.pump_w[0] == 0.1
    assert profile.stokes_w[-1] == pytest.approx(1e-9, rel=1e-9)
    assert profile.residual < 1e-10


def test_power_difference_is_conserved_without_loss():
    # d(P_p - P_s)/dz = 0 exactly for the lossless equations; the
    # integrator preserves it to rounding because both updates share the
    # same increment expression.
    profile = propagate(PARAMS, 0.244, 5e-12, steps=500)
    difference = profile.pump_w - profile.stokes_w
    drift = np.max(np.abs(difference - difference[0]))
    assert drift < 1e-9 * profile.pump_w[0]


def test_profiles_are_monotone():
    profile = propagate(PARAMS, 0.25, 1e-10)
    # pump only loses power along z; Stokes grows toward z = 0
    assert np.all(np.diff(profile.pump_w) < 0.0)
    assert np.all(np.diff(profile.stokes_w) < 0.0)
    assert profile.stokes_w[0] > profile.stokes_seed


def test_undepleted_limit_follows_exponential_gain():
    # With a tiny seed the pump stays constant and the Stokes wave sees
    # the full small-signal amplification exp(G_B P L).
    pump, seed = 0.05, 1e-12
    profile = propagate(PARAMS, pump, seed)
    amplification = profile.stokes_w[0] / seed
    assert amplification == pytest.approx(
        math.exp(small_signal_gain(PARAMS, pump)), rel=1e-6)
    assert profile.depletion_fraction < 1e-6


def test_depletion_fraction_increases_with_pump():
    seed = 5e-12
    fractions = [propagate(PARAMS, pump, seed, steps=500).depletion_fraction
                 for pump in (0.20, 0.24, 0.28)]
    assert np.all(np.diff(fractions) > 0.0)


def test_reference_threshold_in_exponent_twenty_window():
    threshold = depletion_threshold(PARAMS, 5e-12, 0.01)
    assert 0.23 <= threshold <= 0.26
    exponent = small_signal_gain(PARAMS, threshold)
    assert 19.0 <= exponent <= 21.0
    # the threshold is defined by its fraction
    profile = propagate(PARAMS, threshold, 5e-12, steps=500)
    assert profile.depletion_fraction == pytest.approx(0.01, rel=1e-6)


def test_larger_seed_lowers_threshold():
    low_seed = depletion_threshold(PARAMS, 1e-12, 0.01)
    high_seed = depletion_threshold(PARAMS, 1e-9, 0.01)
    assert high_seed < low_seed


def test_threshold_unreachable_raises():
    with pytest.raises(NumericalError):
        depletion_threshold(PARAMS, 5e-12, 0.01, max_pump=0.05)


def test_average_pump_reflects_depletion():
    undepleted = propagate(PARAMS, 0.05, 1e-12)
    assert undepleted.average_pump == pytest.approx(0.05, rel=1e-6)
    depleted = propagate(PARAMS, 0.3, 1e-9, steps=500)
    assert depleted.average_pump < 0.3
    assert depleted.average_pump > depleted.pump_w[-1]


def test_loss_drains_both_waves():
    lossless = propagate(PARAMS, 0.1, 1e-9)
    lossy = propagate(PARAMS, 0.1, 1e-9, loss=0.5)
    assert lossy.pump_w[-1] < lossless.pump_w[-1]
    # P - S is no longer an invariant with loss
    difference = lossy.pump_w - lossy.stokes_w
    assert np.max(np.abs(difference - difference[0])) > 1e-3 * lossy.pump_w[0]


def test_propagate_input_validation():
    with pytest.raises(ValueError):
        propagate(PARAMS, 0.0, 1e-9)
    with pytest.raises(ValueError):
        propagate(PARAMS, 0.1, 0.0)
    with pytest.raises(ValueError):
        propagate(PARAMS, 0.1, 1e-9, steps=8)
    with pytest.raises(ValueError):
        propagate(PARAMS, 0.1, 1e-9, loss=-1.0)
    with pytest.raises(ValueError):
        depletion_threshold(PARAMS, 5e-12, 0.7)
    with pytest.raises(ValueError):
        depletion_threshold(PARAMS, 0.0, 0.01)
