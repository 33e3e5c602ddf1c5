"""Flat key = value configuration files.

One assignment per line, ``#`` starts a comment, keys are namespaced
with dots (ball.m, solver.restarts, sweep.n_theta).  Zero-dependency
and diffable.
"""

from __future__ import annotations

import math

__all__ = ["ConfigError", "load_config", "get_float", "get_int", "get_str"]


class ConfigError(Exception):
    pass


def load_config(path: str) -> dict[str, str]:
    try:
        with open(path) as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    out: dict[str, str] = {}
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
        key, value = (part.strip() for part in line.split("=", 1))
        if not key:
            raise ConfigError(f"{path}:{lineno}: empty key")
        out[key] = value
    return out


def get_float(cfg: dict[str, str], key: str, default: float) -> float:
    if key not in cfg:
        return default
    try:
        v = float(cfg[key])
    except ValueError as exc:
        raise ConfigError(f"config key {key}: not a number: {cfg[key]!r}") from exc
    if not math.isfinite(v):
        raise ConfigError(f"config key {key}: must be finite")
    return v


def get_int(cfg: dict[str, str], key: str, default: int) -> int:
    if key not in cfg:
        return default
    try:
        return int(cfg[key])
    except ValueError as exc:
        raise ConfigError(f"config key {key}: not an integer: {cfg[key]!r}") from exc


def get_str(cfg: dict[str, str], key: str, default: str) -> str:
    return cfg.get(key, default)
