"""Settings read from the key = value file named by CHORDBRAID_CONFIG."""

from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace
from pathlib import Path

from .errors import ConfigError

ENV_VAR = "CHORDBRAID_CONFIG"


@dataclass(frozen=True)
class Config:
    max_n: int = 6
    oracle_cap: int = 8
    oracle_budget: int = 2_000_000
    iteration_cap: int = 100_000
    format: str = "text"
    catalog: str = "catalog.jsonl"

    def __post_init__(self) -> None:
        for name in ("max_n", "oracle_cap", "oracle_budget", "iteration_cap"):
            if getattr(self, name) <= 0:
                raise ConfigError(f"{name} must be positive")
        if self.format not in ("text", "json"):
            raise ConfigError(f"format must be text or json, not {self.format!r}")


def parse_config(text: str, source: str = "<config>") -> Config:
    types = {f.name: f.type for f in fields(Config)}
    values: dict[str, object] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = (part.strip() for part in line.partition("="))
        if not sep or not key:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value'")
        if key not in types:
            raise ConfigError(f"{source}:{lineno}: unknown key {key!r}")
        if types[key] in (int, "int"):
            try:
                values[key] = int(value)
            except ValueError:
                raise ConfigError(f"{source}:{lineno}: {key} needs an integer") from None
        else:
            values[key] = value
    return replace(Config(), **values)


def load_config(path: str | os.PathLike | None = None) -> Config:
    """Read the file at `path`, or at $CHORDBRAID_CONFIG; defaults when neither is set."""
    if path is None:
        path = os.environ.get(ENV_VAR) or None
    if path is None:
        return Config()
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from None
    return parse_config(text, str(path))
