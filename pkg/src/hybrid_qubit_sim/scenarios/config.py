from __future__ import annotations

import logging
import math
from collections.abc import Iterable, Mapping
from pathlib import Path
from typing import Any, Literal

import yaml
from pydantic import BaseModel, ConfigDict, Field, PositiveFloat, ValidationError

from hybrid_qubit_sim.core.errors import ConfigError
from hybrid_qubit_sim.scenarios.catalog import CATALOG

logger = logging.getLogger(__name__)

# Amplitudes off by less than this are renormalised with a warning, larger errors rejected.
RENORMALISE_TOL = 1e-6

ScenarioName = Literal["phase-gate", "write", "read", "lz-scan", "sweep-time", "decoupling-compare"]


class ScenarioConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    scenario: ScenarioName
    delta_max_ghz: float | None = Field(default=None, gt=0)
    epsilon_over_delta: float | None = Field(default=None, gt=0)
    delta2_over_delta1: float | None = Field(default=None, gt=0)
    omega_ghz: float | None = Field(default=None, gt=0)
    sweep_ns: float | None = Field(default=None, gt=0)
    sweep_shape: Literal["linear", "cosine", "smooth"] | None = None
    edge_ns: float | None = Field(default=None, gt=0)
    switch_ns: float | None = Field(default=None, ge=0)
    theta_target: float | None = None
    a_re: float = 1.0
    a_im: float = 0.0
    b_re: float = 0.0
    b_im: float = 0.0
    seed: int = Field(default=0, ge=0, lt=2**64)
    runs: int = Field(default=1, ge=1)
    measurement_mode: Literal["sampled", "both-branches"] = "sampled"
    correction: Literal["phase-flip", "bit-flip"] = "phase-flip"
    tol: float | None = Field(default=None, gt=0)
    reference_time_ns: float | None = Field(default=None, ge=0)
    scan_sweep_ns: list[PositiveFloat] | None = None
    scan_exponent_target: list[PositiveFloat] | None = None
    scan_epsilon_over_delta: list[PositiveFloat] | None = None
    format: Literal["json", "csv", "both"] = "both"
    out: str | None = None

    @property
    def a(self) -> complex:
        return complex(self.a_re, self.a_im)

    @property
    def b(self) -> complex:
        return complex(self.b_re, self.b_im)

    def echo(self) -> dict[str, Any]:
        return self.model_dump(mode="json")


def flatten(raw: Mapping[str, Any]) -> dict[str, Any]:
    """Lift one level of sections (physics:, state:, solver:, scan:) into flat keys."""
    flat: dict[str, Any] = {}
    for key, value in raw.items():
        items = value.items() if isinstance(value, Mapping) else [(key, value)]
        for sub_key, sub_value in items:
            if isinstance(sub_value, Mapping):
                raise ConfigError(
                    f"config nests deeper than one level at {key}.{sub_key}", key=sub_key
                )
            if sub_key in flat:
                raise ConfigError(f"key {sub_key!r} given twice", key=sub_key)
            flat[str(sub_key)] = sub_value
    return flat


def parse_overrides(pairs: Iterable[str]) -> dict[str, Any]:
    """--set key=value pairs; values are parsed as YAML scalars or lists."""
    out: dict[str, Any] = {}
    for pair in pairs:
        key, sep, value = pair.partition("=")
        key = key.strip().rsplit(".", 1)[-1]
        if not sep or not key:
            raise ConfigError(f"override {pair!r} is not key=value", key=key or pair)
        out[key] = yaml.safe_load(value)
    return out


def _normalise_amplitudes(cfg: ScenarioConfig) -> ScenarioConfig:
    norm = math.sqrt(cfg.a_re**2 + cfg.a_im**2 + cfg.b_re**2 + cfg.b_im**2)
    if abs(norm - 1.0) < 1e-12:
        return cfg
    if abs(norm - 1.0) >= RENORMALISE_TOL:
        raise ConfigError(f"state amplitudes have norm {norm:.9f}, expected 1", key="a_re")
    logger.warning("renormalising state amplitudes (norm %.12f)", norm)
    return cfg.model_copy(
        update={k: getattr(cfg, k) / norm for k in ("a_re", "a_im", "b_re", "b_im")}
    )


def build_config(values: Mapping[str, Any]) -> ScenarioConfig:
    values = dict(values)
    name = values.get("scenario")
    if name is None:
        raise ConfigError("missing required key 'scenario'", key="scenario")
    spec = CATALOG.get(name) if isinstance(name, str) else None
    if spec is None:
        raise ConfigError(f"unknown scenario {name!r} (see `hqs list`)", key="scenario")
    merged = {**spec.defaults, **values}
    for key in spec.required:
        if merged.get(key) is None:
            raise ConfigError(f"scenario {name!r} requires key {key!r}", key=key)
    try:
        cfg = ScenarioConfig.model_validate(merged)
    except ValidationError as exc:
        first = exc.errors()[0]
        key = str(first["loc"][0]) if first["loc"] else None
        raise ConfigError(f"invalid value for {key!r}: {first['msg']}", key=key) from exc
    return _normalise_amplitudes(cfg)


def load_config(path: str | Path, overrides: Mapping[str, Any] | None = None) -> ScenarioConfig:
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"missing config file: {path}", key="config")
    try:
        raw = yaml.safe_load(path.read_text(encoding="utf-8")) or {}
    except yaml.YAMLError as exc:
        raise ConfigError(f"cannot parse {path}: {exc}", key="config") from exc
    if not isinstance(raw, Mapping):
        raise ConfigError(f"{path} must hold a mapping of keys", key="config")
    values = flatten(raw)
    values.update(overrides or {})
    return build_config(values)
