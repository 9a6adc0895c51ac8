"""Experiment configuration: flat TOML files plus command-line overrides.

A config file holds ``key = value`` lines whose keys are the fields of
:class:`~rstre.experiments.ExperimentConfig`; tables are not allowed.
Flags override file values.  Every error names the line or flag it came
from.
"""
from __future__ import annotations

import hashlib
import json
import re
import sys
from dataclasses import fields

from .errors import ConfigError
from .experiments import ExperimentConfig, config_problems

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

REQUIRED = ("mode", "n_grid")

_INT = "int"
_FLOAT = "float"
_STR = "str"
_INT_LIST = "int list"
_FLOAT_LIST = "float list"

KEY_TYPES = {
    "mode": _STR,
    "n_grid": _INT_LIST,
    "gamma": _FLOAT,
    "trials_per_n": _INT,
    "master_seed": _INT,
    "sampler": _STR,
    "max_steps": _INT,
    "diameter_cap": _INT,
    "threads": _INT,
    "r_probes": _FLOAT_LIST,
    "k_probes": _INT_LIST,
    "j_max": _INT,
    "fixture": _STR,
}

# flag name -> config key
FLAG_KEYS = {
    "mode": "mode",
    "gamma": "gamma",
    "n": "n_grid",
    "n_grid": "n_grid",
    "trials": "trials_per_n",
    "seed": "master_seed",
    "threads": "threads",
    "sampler": "sampler",
}


def _is_int(v):
    return isinstance(v, int) and not isinstance(v, bool)


def _coerce(key, value, where):
    kind = KEY_TYPES[key]
    bad = ConfigError(f"{key} expects {'an' if kind[0] in 'aeiou' else 'a'} {kind}, got {value!r}", where)
    if kind == _INT:
        if not _is_int(value):
            raise bad
        return value
    if kind == _FLOAT:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise bad
        return float(value)
    if kind == _STR:
        if not isinstance(value, str):
            raise bad
        return value
    if not isinstance(value, list):
        raise bad
    if kind == _INT_LIST:
        if not all(_is_int(v) for v in value):
            raise bad
        return tuple(value)
    if not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in value):
        raise bad
    return tuple(float(v) for v in value)


def _line_of(text, key):
    m = re.search(rf"^[ \t]*{re.escape(key)}[ \t]*=", text, flags=re.MULTILINE)
    return text.count("\n", 0, m.start()) + 1 if m else None


def read_config_file(path) -> dict:
    """``{key: (value, context)}`` from a flat TOML file."""
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc.strerror}", str(path)) from exc
    text = raw.decode("utf-8", errors="replace")
    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"malformed config: {exc}", str(path)) from exc
    out = {}
    for key, value in data.items():
        line = _line_of(text, key)
        where = f"{path}:{line}" if line else str(path)
        if isinstance(value, dict):
            raise ConfigError(f"tables are not supported ([{key}])", where)
        if key not in KEY_TYPES:
            raise ConfigError(f"unknown key {key!r}", where)
        out[key] = (_coerce(key, value, where), where)
    return out


def _parse_flag(key, text, where):
    kind = KEY_TYPES[key]
    try:
        if kind == _INT:
            return int(text)
        if kind == _FLOAT:
            return float(text)
        if kind == _STR:
            return text
        items = [t for t in re.split(r"[,\s]+", text.strip()) if t]
        return tuple(int(t) for t in items) if kind == _INT_LIST else tuple(float(t) for t in items)
    except ValueError as exc:
        raise ConfigError(f"malformed value {text!r} for {key}", where) from exc


def parse_config(path=None, flags=None) -> ExperimentConfig:
    """Build a validated config from an optional file and flag overrides.

    ``flags`` maps flag names (``mode``, ``gamma``, ``n``, ``n_grid``,
    ``trials``, ``seed``, ``threads``, ``sampler``) to their string values;
    None entries are ignored.  ``mode`` and ``n_grid`` are required; other
    keys default to the values documented on ``ExperimentConfig``.
    """
    values = read_config_file(path) if path is not None else {}
    for name, text in (flags or {}).items():
        if text is None:
            continue
        if name not in FLAG_KEYS:
            raise ConfigError(f"unknown option {name!r}", f"--{name.replace('_', '-')}")
        where = f"--{name.replace('_', '-')}"
        key = FLAG_KEYS[name]
        values[key] = (_parse_flag(key, str(text), where), where)
    for key in REQUIRED:
        if key not in values:
            raise ConfigError(f"missing required field {key!r}", str(path) if path else "flags")
    kwargs = {k: v for k, (v, _) in values.items()}
    defaults = {f.name: f.default for f in fields(ExperimentConfig)}
    for key, message in config_problems({**defaults, **kwargs}):
        where = values[key][1] if key in values else None
        raise ConfigError(f"{key} {message}", where)
    return ExperimentConfig(**kwargs)


def _render(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, str):
        return json.dumps(value)
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, (tuple, list)):
        return "[" + ", ".join(_render(v) for v in value) + "]"
    return str(value)


def serialize_config(cfg: ExperimentConfig) -> str:
    """Flat TOML text; None-valued fields are omitted."""
    lines = []
    for f in fields(cfg):
        value = getattr(cfg, f.name)
        if value is not None:
            lines.append(f"{f.name} = {_render(value)}")
    return "\n".join(lines) + "\n"


def config_hash(cfg: ExperimentConfig) -> str:
    return hashlib.sha256(serialize_config(cfg).encode()).hexdigest()[:16]
