"""Run configuration: key = value text files plus command-line overrides.

Two input styles resolve to an operating point:
  * full pipeline -- bath temperatures (or inverse temperatures) and speeds,
    run through the detector model (`temperature_model` = exact or series);
  * analytic mode -- beta_eff_A / beta_eff_B given directly, bypassing the
    detector model entirely.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, fields, replace

from .detector import BathSpec
from .machine import EffectivePoint, MachineConfig, make_point, make_point_high_t
from .numerics import DomainError

__all__ = ["ConfigError", "RunConfig", "load_config", "parse_overrides"]

TEMPERATURE_MODELS = ("exact", "series")


class ConfigError(ValueError):
    """Malformed or inconsistent run configuration."""


@dataclass
class RunConfig:
    omega_A: float = 1.0
    omega_B: float = 0.5
    beta_A: float = 0.5
    beta_B: float = 1.0
    speed_A: float = 0.0
    speed_B: float = 0.0
    coupling_A: float = 1.0
    coupling_B: float = 1.0
    beta_eff_A: float | None = None
    beta_eff_B: float | None = None
    temperature_model: str = "exact"

    @property
    def analytic_mode(self) -> bool:
        return self.beta_eff_A is not None or self.beta_eff_B is not None

    def validate(self) -> None:
        if self.temperature_model not in TEMPERATURE_MODELS:
            raise ConfigError(f"temperature_model: must be one of "
                              f"{TEMPERATURE_MODELS}, got {self.temperature_model!r}")
        if (self.beta_eff_A is None) != (self.beta_eff_B is None):
            raise ConfigError("beta_eff_A/beta_eff_B: give both or neither")
        try:
            if self.analytic_mode:
                self.point()
            else:
                self.machine_config()
        except DomainError as exc:
            raise ConfigError(str(exc)) from exc

    def machine_config(self) -> MachineConfig:
        if self.beta_A <= 0 or self.beta_B <= 0:
            raise ConfigError("beta_A/beta_B: inverse temperatures must be positive")
        return MachineConfig(
            omega_A=self.omega_A,
            omega_B=self.omega_B,
            bath_A=BathSpec(1.0 / self.beta_A),
            bath_B=BathSpec(1.0 / self.beta_B),
            speed_A=self.speed_A,
            speed_B=self.speed_B,
            coupling_A=self.coupling_A,
            coupling_B=self.coupling_B,
        )

    def point(self) -> EffectivePoint:
        if self.analytic_mode:
            return EffectivePoint(self.omega_A, self.omega_B,
                                  self.beta_eff_A, self.beta_eff_B)
        cfg = self.machine_config()
        if self.temperature_model == "series":
            return make_point_high_t(cfg)
        return make_point(cfg)

    def items(self) -> list[tuple[str, object]]:
        return [(f.name, getattr(self, f.name)) for f in fields(self)]

    def sha256(self) -> str:
        canon = ";".join(f"{k}={v!r}" for k, v in self.items())
        return hashlib.sha256(canon.encode()).hexdigest()


_FLOAT_KEYS = {
    "omega_A", "omega_B", "beta_A", "beta_B", "speed_A", "speed_B",
    "coupling_A", "coupling_B", "beta_eff_A", "beta_eff_B",
}
# temperatures are accepted as aliases and converted to inverse temperatures
_TEMPERATURE_ALIASES = {"temperature_A": "beta_A", "temperature_B": "beta_B"}


def _parse_value(key: str, raw: str):
    raw = raw.strip()
    if key == "temperature_model":
        return raw
    if key in _FLOAT_KEYS:
        if raw.lower() in ("none", ""):
            return None
        try:
            value = float(raw)
        except ValueError:
            raise ConfigError(f"{key}: expected a number, got {raw!r}") from None
        if not math.isfinite(value):
            raise ConfigError(f"{key}: must be finite")
        return value
    raise ConfigError(f"unknown configuration key {key!r}")


def _apply(cfg: RunConfig, key: str, raw: str) -> RunConfig:
    key = key.strip()
    if key in _TEMPERATURE_ALIASES:
        value = _parse_value(_TEMPERATURE_ALIASES[key], raw)
        if value is None or value <= 0:
            raise ConfigError(f"{key}: temperature must be positive")
        return replace(cfg, **{_TEMPERATURE_ALIASES[key]: 1.0 / value})
    value = _parse_value(key, raw)
    return replace(cfg, **{key: value})


def load_config(path: str | None, overrides: list[str] | None = None,
                base: RunConfig | None = None) -> RunConfig:
    """Read a key = value file (``#`` comments), then apply KEY=VALUE overrides.

    `base` supplies command-specific defaults; both the file and the overrides
    can change any of them.
    """
    cfg = RunConfig() if base is None else base
    if path is not None:
        with open(path) as fh:
            for lineno, line in enumerate(fh, start=1):
                stripped = line.split("#", 1)[0].strip()
                if not stripped:
                    continue
                if "=" not in stripped:
                    raise ConfigError(f"{path}:{lineno}: expected KEY = VALUE")
                key, raw = stripped.split("=", 1)
                cfg = _apply(cfg, key, raw)
    for item in overrides or []:
        if "=" not in item:
            raise ConfigError(f"override {item!r}: expected KEY=VALUE")
        key, raw = item.split("=", 1)
        cfg = _apply(cfg, key, raw)
    return cfg


def parse_overrides(pairs: list[str] | None) -> list[str]:
    return list(pairs or [])
