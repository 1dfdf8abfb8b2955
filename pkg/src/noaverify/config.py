"""Run configuration: one JSON file plus ``NOAVERIFY_<KEY>`` environment overrides."""

from __future__ import annotations

import dataclasses
import json
import os
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Mapping

from .errors import ConfigError

ENV_PREFIX = "NOAVERIFY_"


@dataclass
class Config:
    workspace: str = ".noaverify"
    ontology: str | None = None
    rules: str | None = None
    corpus: str | None = None
    fpl_table: str | None = None
    formalizer_endpoint: str | None = None
    formalizer_model: str | None = None
    embedding_endpoint: str | None = None
    api_token: str | None = None
    timeout: float = 30.0
    dedup_threshold: float = 0.85
    match_floor: float = 0.5
    max_attempts: int = 3
    parallelism: int = 4
    include_permission: bool = False

    def __post_init__(self):
        if not 0.0 <= self.dedup_threshold <= 1.0 or not 0.0 <= self.match_floor <= 1.0:
            raise ConfigError("thresholds must lie in [0, 1]")
        if self.parallelism < 1 or self.max_attempts < 1:
            raise ConfigError("parallelism and max_attempts must be positive")

    @property
    def workspace_path(self) -> Path:
        return Path(self.workspace)

    def to_json(self) -> dict:
        out = dataclasses.asdict(self)
        out["api_token"] = "***" if self.api_token else None
        return out


_BOOL = {"1": True, "true": True, "yes": True, "on": True,
         "0": False, "false": False, "no": False, "off": False}


def _coerce(name: str, annotation: str, raw):
    base = annotation.replace(" | None", "")
    if raw is None or (isinstance(raw, str) and raw == "" and "None" in annotation):
        if "None" not in annotation:
            raise ConfigError(f"{name} may not be empty")
        return None
    try:
        if base == "bool":
            if isinstance(raw, bool):
                return raw
            return _BOOL[str(raw).strip().lower()]
        if base == "int":
            if isinstance(raw, bool):
                raise ValueError
            return int(raw)
        if base == "float":
            return float(raw)
        return str(raw)
    except (KeyError, ValueError, TypeError):
        raise ConfigError(f"{name}: cannot read {raw!r} as {base}") from None


def load_config(path: str | Path | None = None, env: Mapping[str, str] | None = None) -> Config:
    """Defaults, then the JSON file (if any), then environment overrides."""
    env = os.environ if env is None else env
    values: dict = {}
    if path is not None:
        try:
            data = json.loads(Path(path).read_text(encoding="utf-8"))
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from None
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config {path} is not valid JSON: {exc}") from None
        if not isinstance(data, dict):
            raise ConfigError("config file must hold a JSON object")
        values.update(data)
    known = {f.name: f for f in fields(Config)}
    unknown = sorted(set(values) - set(known))
    if unknown:
        raise ConfigError(f"unknown config keys: {unknown}")
    for name in known:
        key = ENV_PREFIX + name.upper()
        if key in env:
            values[name] = env[key]
    typed = {name: _coerce(name, str(known[name].type), v) for name, v in values.items()}
    return Config(**typed)
