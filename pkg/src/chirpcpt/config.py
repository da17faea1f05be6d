"""Flat ``key = value`` run configuration with defaults and overrides."""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from pathlib import Path

from .levelsystem import LevelSystem, from_transitions
from .propagator import METHODS, SimulationConfig
from .pulse import ChirpedPulse


class ConfigError(ValueError):
    """Bad configuration input; ``key`` and ``line`` locate the problem when known."""

    def __init__(self, message: str, key: str | None = None, line: int | None = None):
        super().__init__(message)
        self.key = key
        self.line = line


@dataclass(frozen=True)
class RunConfig:
    omega21: float = 3.19
    omega32: float = 3.06
    omega42: float = 3.30
    beta: float = 0.90
    gamma: float = 1.10
    omega_rabi_peak: float = 0.60
    tau_p: float = 16.5
    omega_carrier: float = 3.6
    alpha: float = 10.0
    t0: float = 16.5
    tau_chirp: float = 16.5
    t_start: float = -99.0
    t_end: float = 99.0
    sample_interval: float = 0.25
    rel_tol: float = 1e-9
    abs_tol: float = 1e-12
    method: str = "adaptive_rk"
    fixed_dt: float = 0.002

    def system(self) -> LevelSystem:
        return from_transitions(self.omega21, self.omega32, self.omega42, self.beta, self.gamma)

    def pulse(self) -> ChirpedPulse:
        return ChirpedPulse(self.omega_rabi_peak, self.tau_p, self.omega_carrier,
                            self.alpha, self.t0, self.tau_chirp)

    def simulation(self) -> SimulationConfig:
        return SimulationConfig(self.t_start, self.t_end, self.sample_interval,
                                self.rel_tol, self.abs_tol, self.method, self.fixed_dt)

    def validate(self) -> "RunConfig":
        """Build every component once so invariant violations surface early."""
        try:
            self.system()
            self.pulse()
            self.simulation()
        except ValueError as exc:
            raise ConfigError(f"invalid configuration: {exc}", _blame(str(exc))) from None
        return self

    def items(self):
        return [(f.name, getattr(self, f.name)) for f in dataclasses.fields(self)]

    def to_text(self) -> str:
        """Config-file text that :func:`load_config` reads back to an equal config."""
        return "".join(f"{key} = {format_value(value)}\n" for key, value in self.items())


KEYS = tuple(f.name for f in dataclasses.fields(RunConfig))


def format_value(value) -> str:
    return value if isinstance(value, str) else repr(float(value))


def _blame(message: str) -> str | None:
    for key in sorted(KEYS, key=len, reverse=True):
        if key in message:
            return key
    if "levels" in message:
        return "omega21"
    return None


def _convert(key: str, raw: str, line: int | None = None):
    raw = raw.strip().replace("−", "-")
    if key == "method":
        if raw not in METHODS:
            raise ConfigError(f"method must be one of {METHODS}, got {raw!r}", key, line)
        return raw
    try:
        return float(raw)
    except ValueError:
        where = f" (line {line})" if line else ""
        raise ConfigError(f"{key}: cannot parse {raw!r} as a number{where}", key, line) from None


def parse_config_text(text: str) -> dict:
    """Parse flat ``key = value`` lines; ``#`` starts a comment."""
    values = {}
    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key = value, got {raw_line.strip()!r}",
                              line=lineno)
        key, raw = (part.strip() for part in line.split("=", 1))
        if key not in KEYS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}", key, lineno)
        if key in values:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}", key, lineno)
        values[key] = _convert(key, raw, lineno)
    return values


def parse_overrides(overrides) -> dict:
    values = {}
    for item in overrides or ():
        if "=" not in item:
            raise ConfigError(f"override {item!r} is not of the form key=value")
        key, raw = (part.strip() for part in item.split("=", 1))
        if key not in KEYS:
            raise ConfigError(f"unknown key {key!r}", key)
        values[key] = _convert(key, raw)
    return values


def load_config(path=None, overrides=()) -> RunConfig:
    """Defaults, then file values, then ``key=value`` overrides; validated."""
    values = {}
    if path is not None:
        values.update(parse_config_text(Path(path).read_text()))
    values.update(parse_overrides(overrides))
    return RunConfig(**values).validate()
