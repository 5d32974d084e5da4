"""Analytic PSDs, their normalization, and Lorentzian linewidth extraction."""

import numpy as np
import pytest

from brillouin_cooling import (
    Detuning,
    Drive,
    GridCoverageError,
    SpectrumTrace,
    SystemParams,
    acoustic_psd,
    anti_stokes_peak_height,
    coupling_strength,
    default_frequency_grid,
    effective_linewidth,
    fit_lorentzian,
    linewidth_vs_power,
    optical_psd,
    phonon_occupation_detuned,
    phonon_occupation_phase_matched,
    settle,
)
from brillouin_cooling.spectrum import _lorentzian_model

PARAMS = SystemParams()
N_TH = PARAMS.thermal_occupation
WIDE_GRID = default_frequency_grid(PARAMS, span_factor=40.0, points=16385)


def test_default_grid_is_exactly_symmetric():
    grid = default_frequency_grid(PARAMS)
    assert np.all(grid + grid[::-1] == 0.0)
    assert np.all(np.diff(grid) > 0.0)
    assert len(grid) == 4096


def test_uncoupled_spectrum_is_thermal_lorentzian():
    trace = acoustic_psd(PARAMS, 0.0, grid=WIDE_GRID)
    # peak height 4 n_th / gamma_m exactly at zero offset
    assert trace.psd[len(trace.psd) // 2] == pytest.approx(
        4.0 * N_TH / PARAMS.gamma_m, rel=1e-12)
    fit = fit_lorentzian(trace)
    assert fit.converged
    assert fit.fwhm == pytest.approx(PARAMS.gamma_m, rel=1e-6)
    assert abs(fit.center) < 1e-3 * PARAMS.gamma_m
    assert trace.occupation_integral() == pytest.approx(N_TH, rel=5e-3)


def test_uncoupled_peak_sits_at_minus_acoustic_detuning():
    det = Detuning(0.0, -3.0 * PARAMS.gamma_m)
    trace = acoustic_psd(PARAMS, 0.0, det, grid=WIDE_GRID)
    assert trace.peak_offset == pytest.approx(-det.delta2, rel=1e-2)


def test_integral_recovers_occupation_with_coupling():
    g = coupling_strength(PARAMS, Drive(0.1))
    trace = acoustic_psd(PARAMS, g, grid=WIDE_GRID)
    expected = phonon_occupation_phase_matched(PARAMS, g)
    assert trace.occupation_integral() == pytest.approx(expected, rel=5e-3)


def test_integral_recovers_occupation_detuned():
    g = coupling_strength(PARAMS, Drive(0.1))
    det = Detuning(2.0 * PARAMS.gamma_m, 0.0)
    trace = acoustic_psd(PARAMS, g, det, grid=WIDE_GRID)
    expected = phonon_occupation_detuned(PARAMS, g, det)
    assert trace.occupation_integral() == pytest.approx(expected, rel=5e-3)


def test_optical_integral_recovers_photon_number():
    g = coupling_strength(PARAMS, Drive(0.1))
    trace = optical_psd(PARAMS, g, grid=WIDE_GRID)
    expected = settle(PARAMS, g).n_a
    assert trace.occupation_integral() == pytest.approx(expected, rel=5e-3)


def test_psd_is_nonnegative_and_even_at_phase_matching():
    rng = np.random.default_rng(61)
    for _ in range(20):
        power = 10.0 ** rng.uniform(-4.0, -0.5)
        g = coupling_strength(PARAMS, Drive(power))
        trace = acoustic_psd(PARAMS, g)
        assert np.all(trace.psd >= 0.0)
        assert np.allclose(trace.psd, trace.psd[::-1], rtol=1e-10)


def test_grid_coverage_rejects_sparse_or_narrow_grids():
    with pytest.raises(GridCoverageError):
        acoustic_psd(PARAMS, 0.0, grid=default_frequency_grid(PARAMS, points=1001)[::2])
    narrow = np.linspace(-1e8, 1e8, 2001)
    with pytest.raises(GridCoverageError):
        acoustic_psd(PARAMS, 0.0, grid=narrow)


def test_fit_recovers_synthetic_lorentzian():
    rng = np.random.default_rng(67)
    offsets = default_frequency_grid(PARAMS, span_factor=25.0, points=4001)
    for _ in range(20):
        height = 10.0 ** rng.uniform(-8.0, -4.0)
        center = rng.uniform(-2e7, 2e7)
        width = 10.0 ** rng.uniform(7.3, 8.3)
        clean = _lorentzian_model((height, center, width), offsets)
        noisy = clean * (1.0 + 1e-8 * rng.standard_normal(len(offsets)))
        trace = SpectrumTrace(offsets=offsets, psd=noisy, params=PARAMS,
                              g_om=0.0, det=Detuning())
        fit = fit_lorentzian(trace)
        assert fit.converged
        assert fit.height == pytest.approx(height, rel=1e-6)
        assert fit.center == pytest.approx(center, abs=1e-6 * width)
        assert fit.fwhm == pytest.approx(width, rel=1e-6)
        assert fit.residual_norm < 1e-6


def test_fitted_linewidth_matches_closed_form_in_weak_coupling():
    # In the weak-coupling regime (pump powers well below the
    # normal-mode-splitting scale) the single-Lorentzian width equals
    # the effective damping rate to better than 2 percent.
    for power in (0.001, 0.002):
        g = coupling_strength(PARAMS, Drive(power))
        trace = acoustic_psd(PARAMS, g, grid=WIDE_GRID)
        fit = fit_lorentzian(trace)
        closed = effective_linewidth(PARAMS, g)
        assert abs(fit.fwhm - closed) / closed < 0.02


def test_fitted_linewidth_deviates_strongly_at_high_power():
    # Characterization pin: at the reference operating power the exact
    # two-mode spectrum is no longer Lorentzian (the resonance has split)
    # and a single-Lorentzian fit overestimates the closed-form damping
    # rate by more than half of it.  Downstream consumers get both
    # numbers; see the spectrum module docstring.
    g = coupling_strength(PARAMS, Drive(0.1))
    trace = acoustic_psd(PARAMS, g, grid=WIDE_GRID)
    fit = fit_lorentzian(trace)
    closed = effective_linewidth(PARAMS, g)
    assert (fit.fwhm - closed) / closed > 0.5


def test_linewidth_table_tracks_power():
    powers = np.array([0.0005, 0.001, 0.002, 0.004])
    table = linewidth_vs_power(PARAMS, powers, span_factor=40.0, points=8193)
    assert np.all(np.diff(table.fitted_fwhm) > 0.0)
    for power, closed in zip(table.powers, table.closed_form):
        g = coupling_strength(PARAMS, Drive(power))
        assert closed == pytest.approx(effective_linewidth(PARAMS, g), rel=1e-12)
    # weak-coupling agreement with growing deviation
    rel = np.abs(table.fitted_fwhm - table.closed_form) / table.closed_form
    assert np.all(np.diff(rel) > 0.0)


def test_peak_height_starts_thermal_and_falls_to_constant_floor():
    assert anti_stokes_peak_height(PARAMS, 0.0) == pytest.approx(
        4.0 * N_TH / PARAMS.gamma_m, rel=1e-9)
    heights = [anti_stokes_peak_height(PARAMS, g)
               for g in (0.0, 1e7, 3e7, 6e7, 1e8, 1e9)]
    assert np.all(np.diff(heights) < 0.0)
    # Sub-doubling: doubling the coupling never doubles the peak.
    for g in np.geomspace(1e6, 1e9, 7):
        ratio = (anti_stokes_peak_height(PARAMS, 2.0 * g)
                 / anti_stokes_peak_height(PARAMS, g))
        assert ratio < 2.0
    # Strong-coupling floor: the split-resonance peak approaches a constant.
    floor = (4.0 * PARAMS.gamma_m * N_TH
             / (PARAMS.gamma_o + PARAMS.gamma_m) ** 2)
    assert anti_stokes_peak_height(PARAMS, 1e10) == pytest.approx(
        floor, rel=1e-3)


def test_negative_coupling_rejected():
    with pytest.raises(ValueError):
        acoustic_psd(PARAMS, -1.0)
    with pytest.raises(ValueError):
        optical_psd(PARAMS, -1.0)
    with pytest.raises(ValueError):
        anti_stokes_peak_height(PARAMS, -1.0)
