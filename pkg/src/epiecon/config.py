"""Flat key=value configuration files and command-line parameter overrides.

Keys are exactly the field names of ``Parameters``. Scalar fields take a
single number; the rate tables and income shares take comma-separated
lists. Unknown keys are a hard error, so typos cannot silently fall back
to defaults. ``contact_threshold`` additionally accepts ``none`` to mean
"follow the contagion distance".
"""

from __future__ import annotations

from dataclasses import fields
from pathlib import Path

from .params import ParameterError, Parameters

_INT_FIELDS = {
    "population_size", "family_size",
    "incubation_days_min", "incubation_days_max",
    "transmission_days_min", "transmission_days_max", "recovering_days",
}
_TUPLE_FIELDS = {"hospitalization_rates", "severe_rates", "fatality_rates",
                 "income_shares"}
_OPTIONAL_FIELDS = {"contact_threshold"}

PARAM_KEYS = tuple(f.name for f in fields(Parameters))


class ConfigError(ParameterError):
    """Bad configuration file or override."""


def _coerce(key: str, raw: str):
    raw = raw.strip()
    if key in _TUPLE_FIELDS:
        try:
            return tuple(float(part) for part in raw.split(","))
        except ValueError as exc:
            raise ConfigError(f"{key}: expected comma-separated numbers") from exc
    if key in _OPTIONAL_FIELDS and raw.lower() in ("none", ""):
        return None
    try:
        if key in _INT_FIELDS:
            return int(raw)
        return float(raw)
    except ValueError as exc:
        raise ConfigError(f"{key}: cannot parse {raw!r}") from exc


def parse_config_file(path) -> dict:
    """Read a flat key=value file. Blank lines and #-comments are ignored."""
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"config file not found: {path}")
    values: dict = {}
    for lineno, line in enumerate(path.read_text().splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise ConfigError(f"{path}:{lineno}: expected key=value")
        key, _, raw = stripped.partition("=")
        key = key.strip()
        if key not in PARAM_KEYS:
            raise ConfigError(f"{path}:{lineno}: unknown parameter {key!r}")
        values[key] = _coerce(key, raw)
    return values


def parse_overrides(pairs) -> dict:
    """Parse repeated --param key=value options."""
    values: dict = {}
    for pair in pairs or ():
        if "=" not in pair:
            raise ConfigError(f"--param expects key=value, got {pair!r}")
        key, _, raw = pair.partition("=")
        key = key.strip()
        if key not in PARAM_KEYS:
            raise ConfigError(f"unknown parameter {key!r}")
        values[key] = _coerce(key, raw)
    return values


def build_parameters(config_path=None, overrides=None) -> Parameters:
    """Assemble a validated parameter set: defaults, then the config file,
    then command-line overrides, highest priority last."""
    values: dict = {}
    if config_path is not None:
        values.update(parse_config_file(config_path))
    values.update(parse_overrides(overrides))
    params = Parameters(**values)
    params.validate()
    return params
