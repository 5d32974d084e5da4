"""Strict key-value run configuration shared by all CLI subcommands.

Grammar: UTF-8 text, one ``key = value`` per line, ``#`` starts a
comment, keys are lowercase snake case with unit suffixes (``_hz``,
``_w``, ``_m``, ``_k``), booleans are ``true``/``false``, no sections.
Unknown keys, duplicate keys, malformed lines, type errors and module
precondition violations are all rejected with the offending line and
column; the CLI maps :class:`ConfigError` to exit code 2.

Quoted linewidths and detunings are given as ordinary frequencies in Hz;
``rates_convention`` decides whether they are used directly as rates
(``as_given``, default) or multiplied by 2*pi (``angular``).  The
conversion happens exactly once, inside :meth:`RunConfig.system_params`
/ :meth:`RunConfig.detuning` / :meth:`RunConfig.drive`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields

from .core import ANGULAR, Detuning, Drive, SystemParams


class ConfigError(ValueError):
    """Configuration violation, carrying position and key information."""

    def __init__(self, message: str, line: int = 0, column: int = 0,
                 key: str | None = None):
        location = f"line {line}, column {column}"
        prefix = f"{location}: key '{key}': " if key else f"{location}: "
        super().__init__(prefix + message)
        self.line = line
        self.column = column
        self.key = key


# key -> (type tag, default); order defines the canonical echo order.
_SCHEMA: dict[str, tuple[str, object]] = {
    "omega_b_hz": ("float", 7.38e9),
    "gamma_m_hz": ("float", 46.8e6),
    "gamma_o_hz": ("float", 364e6),
    "gain_total_per_m_w": ("float", 164.0),
    "gain_intrinsic_m_per_w": ("float", 1.32e-9),
    "length_m": ("float", 0.5),
    "refractive_index": ("float", 2.5),
    "temperature_k": ("float", 293.0),
    "rates_convention": ("convention", "as_given"),
    "pump_power_w": ("float", 0.1),
    "delta_l_hz": ("float", None),  # None resolves to -omega_b_hz
    "delta1_hz": ("float", 0.0),
    "delta2_hz": ("float", 0.0),
    "sweep_start_w": ("float", 0.0),
    "sweep_stop_w": ("float", 0.3),
    "sweep_count": ("int", 31),
    "sweep_scale": ("scale", "linear"),
    "sweep_depleted_pump": ("bool", False),
    "ode_t_end_factor": ("float", 50.0),
    "ode_tol": ("float", 1e-10),
    "langevin_count": ("int", 1000),
    "langevin_dt_factor": ("float", 0.05),
    "langevin_t_end_factor": ("float", 20.0),
    "base_seed": ("int", 12345),
    "spectrum_span_factor": ("float", 20.0),
    "spectrum_points": ("int", 4096),
    "stokes_seed_w": ("float", 1e-9),
    "depletion_fraction": ("float", 0.01),
    "max_pump_w": ("float", 2.0),
    "depletion_steps": ("int", 2000),
    "fiber_loss_per_m": ("float", 0.0),
    "out_dir": ("str", "."),
    "svg": ("bool", False),
}


@dataclass(frozen=True)
class RunConfig:
    """Fully resolved, validated run configuration."""

    omega_b_hz: float
    gamma_m_hz: float
    gamma_o_hz: float
    gain_total_per_m_w: float
    gain_intrinsic_m_per_w: float
    length_m: float
    refractive_index: float
    temperature_k: float
    rates_convention: str
    pump_power_w: float
    delta_l_hz: float | None
    delta1_hz: float
    delta2_hz: float
    sweep_start_w: float
    sweep_stop_w: float
    sweep_count: int
    sweep_scale: str
    sweep_depleted_pump: bool
    ode_t_end_factor: float
    ode_tol: float
    langevin_count: int
    langevin_dt_factor: float
    langevin_t_end_factor: float
    base_seed: int
    spectrum_span_factor: float
    spectrum_points: int
    stokes_seed_w: float
    depletion_fraction: float
    max_pump_w: float
    depletion_steps: int
    fiber_loss_per_m: float
    out_dir: str
    svg: bool

    @property
    def rate_scale(self) -> float:
        """Multiplier turning quoted Hz values into internal rate units."""
        return 2.0 * math.pi if self.rates_convention == ANGULAR else 1.0

    @property
    def resolved_delta_l_hz(self) -> float:
        return self.delta_l_hz if self.delta_l_hz is not None else -self.omega_b_hz

    def system_params(self) -> SystemParams:
        scale = self.rate_scale
        return SystemParams(
            omega_b=self.omega_b_hz,
            gamma_m=self.gamma_m_hz * scale,
            gamma_o=self.gamma_o_hz * scale,
            gain_total=self.gain_total_per_m_w,
            gain_intrinsic=self.gain_intrinsic_m_per_w,
            length=self.length_m,
            refractive_index=self.refractive_index,
            temperature=self.temperature_k,
            rates_convention=self.rates_convention,
        )

    def detuning(self) -> Detuning:
        scale = self.rate_scale
        return Detuning(self.delta1_hz * scale, self.delta2_hz * scale)

    def drive(self) -> Drive:
        return Drive(self.pump_power_w, self.resolved_delta_l_hz * self.rate_scale)

    def sweep_powers(self):
        import numpy as np

        if self.sweep_count == 1:
            return np.array([self.sweep_start_w])
        if self.sweep_scale == "log":
            return np.geomspace(self.sweep_start_w, self.sweep_stop_w,
                                self.sweep_count)
        return np.linspace(self.sweep_start_w, self.sweep_stop_w, self.sweep_count)

    def echo_lines(self, version: str, command: str) -> list[str]:
        """Resolved configuration as CSV comment lines, canonical order."""
        lines = [f"# brillouin-cooling {version}", f"# command = {command}"]
        for key in _SCHEMA:
            value = getattr(self, key)
            if key == "delta_l_hz":
                value = self.resolved_delta_l_hz
            if isinstance(value, bool):
                text = "true" if value else "false"
            elif isinstance(value, float):
                text = f"{value:.17g}"
            else:
                text = str(value)
            lines.append(f"# {key} = {text}")
        return lines


def _parse_value(kind: str, raw: str, line: int, column: int, key: str):
    if kind == "float":
        try:
            value = float(raw)
        except ValueError:
            raise ConfigError(f"expected a number, got {raw!r}",
                              line, column, key) from None
        if not math.isfinite(value):
            raise ConfigError(f"value must be finite, got {raw!r}",
                              line, column, key)
        return value
    if kind == "int":
        try:
            return int(raw, 10)
        except ValueError:
            raise ConfigError(f"expected an integer, got {raw!r}",
                              line, column, key) from None
    if kind == "bool":
        if raw == "true":
            return True
        if raw == "false":
            return False
        raise ConfigError(f"expected 'true' or 'false', got {raw!r}",
                          line, column, key)
    if kind == "convention":
        if raw in ("as_given", "angular"):
            return raw
        raise ConfigError(f"expected 'as_given' or 'angular', got {raw!r}",
                          line, column, key)
    if kind == "scale":
        if raw in ("linear", "log"):
            return raw
        raise ConfigError(f"expected 'linear' or 'log', got {raw!r}",
                          line, column, key)
    return raw  # str


def _validate(resolved: dict, positions: dict) -> None:
    """Module precondition checks; errors cite the offending key's position."""

    def fail(key: str, message: str) -> None:
        line, column = positions.get(key, (0, 0))
        raise ConfigError(message, line, column, key)

    for key in ("omega_b_hz", "gamma_m_hz", "gamma_o_hz", "gain_total_per_m_w",
                "gain_intrinsic_m_per_w", "length_m", "temperature_k",
                "stokes_seed_w", "max_pump_w", "ode_t_end_factor"):
        if not resolved[key] > 0.0:
            fail(key, "must be strictly positive")
    if resolved["refractive_index"] < 1.0:
        fail("refractive_index", "must be at least 1")
    if resolved["pump_power_w"] < 0.0:
        fail("pump_power_w", "must be non-negative")
    if resolved["sweep_start_w"] < 0.0:
        fail("sweep_start_w", "must be non-negative")
    if resolved["sweep_count"] < 1:
        fail("sweep_count", "must be at least 1")
    if resolved["sweep_count"] > 1 and resolved["sweep_stop_w"] <= resolved["sweep_start_w"]:
        fail("sweep_stop_w", "must exceed sweep_start_w")
    if resolved["sweep_scale"] == "log" and resolved["sweep_start_w"] <= 0.0:
        fail("sweep_start_w", "must be strictly positive for a log sweep")
    if not 1e-14 < resolved["ode_tol"] < 1e-2:
        fail("ode_tol", "must lie in (1e-14, 1e-2)")
    if resolved["langevin_count"] < 2:
        fail("langevin_count", "must be at least 2")
    if not 0.0 < resolved["langevin_dt_factor"] <= 0.05:
        fail("langevin_dt_factor", "must lie in (0, 0.05]")
    if resolved["langevin_t_end_factor"] < 20.0:
        fail("langevin_t_end_factor", "must be at least 20")
    if resolved["base_seed"] < 0:
        fail("base_seed", "must be non-negative")
    if resolved["spectrum_span_factor"] < 10.0:
        fail("spectrum_span_factor", "must be at least 10")
    if resolved["spectrum_points"] < 1000:
        fail("spectrum_points", "must be at least 1000")
    if not 0.0 < resolved["depletion_fraction"] < 0.5:
        fail("depletion_fraction", "must lie in (0, 0.5)")
    if resolved["depletion_steps"] < 16:
        fail("depletion_steps", "must be at least 16")
    if resolved["fiber_loss_per_m"] < 0.0:
        fail("fiber_loss_per_m", "must be non-negative")


def parse_config(path) -> RunConfig:
    """Parse and validate a configuration file.

    Unset keys take the documented defaults (the reference parameter set
    of the modeled experiment).  Raises :class:`ConfigError` with line,
    column and key on any violation.
    """
    try:
        with open(path, encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path!r}: {exc}") from exc

    provided: dict[str, object] = {}
    positions: dict[str, tuple[int, int]] = {}
    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0]
        if not line.strip():
            continue
        if "=" not in line:
            raise ConfigError("expected 'key = value'", lineno,
                              len(line) - len(line.lstrip()) + 1)
        key_part, value_part = line.split("=", 1)
        key = key_part.strip()
        key_column = raw_line.index(key) + 1 if key else 1
        if not key:
            raise ConfigError("missing key before '='", lineno, 1)
        if key not in _SCHEMA:
            raise ConfigError("unknown key", lineno, key_column, key)
        if key in provided:
            raise ConfigError("duplicate key", lineno, key_column, key)
        value_raw = value_part.strip()
        if not value_raw:
            raise ConfigError("missing value", lineno,
                              len(line.rstrip()) + 1, key)
        value_column = raw_line.index(value_raw, raw_line.index("=")) + 1
        kind = _SCHEMA[key][0]
        provided[key] = _parse_value(kind, value_raw, lineno, value_column, key)
        positions[key] = (lineno, value_column)

    resolved = {key: default for key, (_, default) in _SCHEMA.items()}
    resolved.update(provided)
    _validate(resolved, positions)

    config = RunConfig(**resolved)
    # Surface any residual type invariant as a config error with position.
    try:
        config.system_params()
        config.detuning()
        config.drive()
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    return config


def config_field_names() -> tuple[str, ...]:
    """Canonical key order (schema order), used by the CSV echo and docs."""
    assert tuple(f.name for f in fields(RunConfig)) == tuple(_SCHEMA)
    return tuple(_SCHEMA)
