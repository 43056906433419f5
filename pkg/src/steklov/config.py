"""Run configuration loading and validation."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import ConfigError
from .expressions import parse_expression
from .warping import WarpingProfile, make_profile

DEFAULT_M_MAX = 40
DEFAULT_NODE_COUNT = 64

_TOP_KEYS = {"dimension", "frequency", "profile", "m_max", "node_count"}
_PROFILE_KEYS = {"kind", "coefficients", "text"}


@dataclass(frozen=True)
class RunConfig:
    dimension: int
    frequency: float
    profile_kind: str  # "chebyshev" | "expression"
    coefficients: tuple[float, ...] | None = None
    expression: str | None = None
    m_max: int = DEFAULT_M_MAX
    node_count: int = DEFAULT_NODE_COUNT
    output_path: str | None = None


def _require_int(data, key: str, minimum: int, default=None) -> int:
    if key not in data:
        if default is None:
            raise ConfigError(key, f"missing required field '{key}'")
        return default
    value = data[key]
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(key, f"field '{key}' must be an integer")
    if value < minimum:
        raise ConfigError(key, f"field '{key}' must be >= {minimum}, got {value}")
    return value


def parse_config(data: dict) -> RunConfig:
    if not isinstance(data, dict):
        raise ConfigError("", "configuration must be a JSON object")
    unknown = set(data) - _TOP_KEYS
    if unknown:
        raise ConfigError(sorted(unknown)[0], f"unknown field '{sorted(unknown)[0]}'")
    dimension = _require_int(data, "dimension", 2)
    if "frequency" not in data:
        raise ConfigError("frequency", "missing required field 'frequency'")
    frequency = data["frequency"]
    if isinstance(frequency, bool) or not isinstance(frequency, (int, float)):
        raise ConfigError("frequency", "field 'frequency' must be a number")
    profile = data.get("profile")
    if not isinstance(profile, dict):
        raise ConfigError("profile", "field 'profile' must be an object")
    unknown = set(profile) - _PROFILE_KEYS
    if unknown:
        raise ConfigError(f"profile.{sorted(unknown)[0]}", "unknown profile field")
    kind = profile.get("kind")
    coefficients = None
    expression = None
    if kind == "chebyshev":
        raw = profile.get("coefficients")
        if not isinstance(raw, list) or not raw:
            raise ConfigError("profile.coefficients", "need a nonempty list of numbers")
        for i, v in enumerate(raw):
            if isinstance(v, bool) or not isinstance(v, (int, float)):
                raise ConfigError(f"profile.coefficients[{i}]", "must be a number")
        coefficients = tuple(float(v) for v in raw)
    elif kind == "expression":
        text = profile.get("text")
        if not isinstance(text, str) or not text.strip():
            raise ConfigError("profile.text", "need a nonempty expression string")
        expression = text
    else:
        raise ConfigError("profile.kind", "must be 'chebyshev' or 'expression'")
    return RunConfig(
        dimension=dimension,
        frequency=float(frequency),
        profile_kind=kind,
        coefficients=coefficients,
        expression=expression,
        m_max=_require_int(data, "m_max", 0, DEFAULT_M_MAX),
        node_count=_require_int(data, "node_count", 16, DEFAULT_NODE_COUNT),
    )


def load_config(path) -> RunConfig:
    """Read and validate a JSON run configuration."""
    try:
        data = json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise ConfigError("", f"configuration file not found: {path}")
    except json.JSONDecodeError as exc:
        raise ConfigError("", f"invalid JSON in {path}: {exc}")
    return parse_config(data)


def profile_from_config(config: RunConfig) -> WarpingProfile:
    """Build the validated warping profile described by a configuration."""
    if config.profile_kind == "chebyshev":
        coeffs = np.array(config.coefficients, dtype=float)
    else:
        coeffs = parse_expression(config.expression, config.node_count)
    return make_profile(coeffs, config.dimension, config.frequency)
