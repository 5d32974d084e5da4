"""Strict key-value configuration grammar and its error positions."""

import math

import numpy as np
import pytest

from brillouin_cooling import ConfigError, parse_config
from brillouin_cooling.config import config_field_names


def write(tmp_path, text):
    path = tmp_path / "run.cfg"
    path.write_text(text, encoding="utf-8")
    return str(path)


def test_empty_file_resolves_to_reference_defaults(tmp_path):
    config = parse_config(write(tmp_path, ""))
    assert config.omega_b_hz == 7.38e9
    assert config.gamma_m_hz == 46.8e6
    assert config.gamma_o_hz == 364e6
    assert config.gain_total_per_m_w == 164.0
    assert config.length_m == 0.5
    assert config.refractive_index == 2.5
    assert config.temperature_k == 293.0
    assert config.rates_convention == "as_given"
    assert config.pump_power_w == 0.1
    assert config.delta_l_hz is None
    assert config.resolved_delta_l_hz == -7.38e9
    assert config.base_seed == 12345
    assert config.sweep_count == 31


def test_comments_blank_lines_and_spacing(tmp_path):
    text = """
# full-line comment
pump_power_w = 0.25   # trailing comment

   temperature_k=77
gamma_m_hz   =   5e7
"""
    config = parse_config(write(tmp_path, text))
    assert config.pump_power_w == 0.25
    assert config.temperature_k == 77.0
    assert config.gamma_m_hz == 5e7


def test_system_params_carries_values_through(tmp_path):
    config = parse_config(write(tmp_path, "temperature_k = 100\n"))
    params = config.system_params()
    assert params.temperature == 100.0
    assert params.gamma_m == 46.8e6
    assert params.omega_b == 7.38e9
    assert config.detuning().difference == 0.0
    assert config.drive().power == 0.1


def test_angular_convention_scales_rates_exactly_once(tmp_path):
    config = parse_config(write(tmp_path,
                                "rates_convention = angular\ndelta1_hz = 1e6\n"))
    params = config.system_params()
    assert params.gamma_m == pytest.approx(2.0 * math.pi * 46.8e6, rel=1e-15)
    assert params.gamma_o == pytest.approx(2.0 * math.pi * 364e6, rel=1e-15)
    assert params.omega_b == 7.38e9  # thermometry frequency is not a rate
    assert config.detuning().delta1 == pytest.approx(2.0 * math.pi * 1e6, rel=1e-15)


def test_unknown_key_reports_position(tmp_path):
    with pytest.raises(ConfigError) as err:
        parse_config(write(tmp_path, "pump_power_w = 0.1\nbogus = 3\n"))
    assert err.value.line == 2
    assert err.value.key == "bogus"
    assert "unknown key" in str(err.value)


def test_duplicate_key_rejected(tmp_path):
    with pytest.raises(ConfigError) as err:
        parse_config(write(tmp_path, "pump_power_w = 0.1\npump_power_w = 0.2\n"))
    assert err.value.line == 2
    assert "duplicate" in str(err.value)


def test_malformed_line_rejected(tmp_path):
    with pytest.raises(ConfigError) as err:
        parse_config(write(tmp_path, "just some words\n"))
    assert err.value.line == 1
    with pytest.raises(ConfigError):
        parse_config(write(tmp_path, "= 3\n"))
    with pytest.raises(ConfigError) as err:
        parse_config(write(tmp_path, "pump_power_w =\n"))
    assert "missing value" in str(err.value)


def test_type_errors_name_the_key_and_position(tmp_path):
    cases = [
        ("pump_power_w = fast\n", "pump_power_w"),
        ("pump_power_w = inf\n", "pump_power_w"),
        ("sweep_count = 3.5\n", "sweep_count"),
        ("svg = yes\n", "svg"),
        ("rates_convention = radians\n", "rates_convention"),
        ("sweep_scale = cubic\n", "sweep_scale"),
    ]
    for text, key in cases:
        with pytest.raises(ConfigError) as err:
            parse_config(write(tmp_path, text))
        assert err.value.key == key
        assert err.value.line == 1
        assert err.value.column == text.index("= ") + 3


def test_precondition_violations_name_the_key(tmp_path):
    cases = [
        "gamma_m_hz = -5\n",
        "gamma_o_hz = 0\n",
        "temperature_k = 0\n",
        "refractive_index = 0.9\n",
        "pump_power_w = -0.1\n",
        "sweep_count = 0\n",
        "sweep_start_w = 0.5\nsweep_stop_w = 0.3\n",
        "sweep_scale = log\n",  # default start 0 invalid for log
        "ode_tol = 1\n",
        "ode_tol = 1e-15\n",
        "langevin_count = 1\n",
        "langevin_dt_factor = 0.2\n",
        "langevin_t_end_factor = 5\n",
        "base_seed = -1\n",
        "spectrum_span_factor = 5\n",
        "spectrum_points = 100\n",
        "depletion_fraction = 0.9\n",
        "depletion_steps = 4\n",
        "fiber_loss_per_m = -1\n",
        "max_pump_w = 0\n",
    ]
    for text in cases:
        with pytest.raises(ConfigError):
            parse_config(write(tmp_path, text))


def test_missing_file_is_a_config_error(tmp_path):
    with pytest.raises(ConfigError):
        parse_config(str(tmp_path / "nope.cfg"))


def test_sweep_power_grids(tmp_path):
    linear = parse_config(write(
        tmp_path, "sweep_start_w = 0\nsweep_stop_w = 0.3\nsweep_count = 4\n"))
    assert np.allclose(linear.sweep_powers(), [0.0, 0.1, 0.2, 0.3])
    log = parse_config(write(
        tmp_path,
        "sweep_scale = log\nsweep_start_w = 1e-3\nsweep_stop_w = 1\nsweep_count = 4\n"))
    assert np.allclose(log.sweep_powers(), [1e-3, 1e-2, 1e-1, 1.0])
    single = parse_config(write(
        tmp_path, "sweep_start_w = 0.05\nsweep_count = 1\n"))
    assert list(single.sweep_powers()) == [0.05]


def test_echo_lines_round_trip(tmp_path):
    config = parse_config(write(
        tmp_path,
        "pump_power_w = 0.07\nrates_convention = angular\nsweep_count = 7\n"))
    echo = config.echo_lines("9.9.9", "steady")
    assert echo[0] == "# brillouin-cooling 9.9.9"
    assert echo[1] == "# command = steady"
    # the echoed key = value lines reparse to an equivalent configuration
    body = "\n".join(line[2:] for line in echo[2:]) + "\n"
    replayed = parse_config(write(tmp_path, body))
    assert replayed.system_params() == config.system_params()
    assert replayed.detuning() == config.detuning()
    assert replayed.drive() == config.drive()
    assert np.array_equal(replayed.sweep_powers(), config.sweep_powers())


def test_echo_order_is_canonical(tmp_path):
    config = parse_config(write(tmp_path, ""))
    echo = config.echo_lines("0.0.0", "sweep")
    keys = [line[2:].split(" = ")[0] for line in echo[2:]]
    assert tuple(keys) == config_field_names()
