"""Runtime configuration with environment-file plumbing.

A JSON file named by the QECC_CONFIG environment variable supplies
defaults; command-line flags override individual fields.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, fields, replace

from .arith import InvalidInputError

ENV_VAR = "QECC_CONFIG"


@dataclass(frozen=True)
class Config:
    mode: str = "exact"
    float_tolerance: float = 1e-10
    factor_budget: int = 10 ** 6
    max_d: int = 13
    max_n: int = 64
    max_orbits: int = 10 ** 4
    oracle_term_cap: int = 200_000
    workers: int = 1

    def check(self) -> "Config":
        if self.mode not in ("exact", "float"):
            raise InvalidInputError(f"mode must be exact or float, got {self.mode!r}")
        if not 0 < self.float_tolerance <= 1e-3:
            raise InvalidInputError(
                f"float tolerance must lie in (0, 1e-3], got {self.float_tolerance}")
        for name in ("factor_budget", "max_d", "max_n", "max_orbits",
                     "oracle_term_cap", "workers"):
            if getattr(self, name) <= 0:
                raise InvalidInputError(f"{name} must be positive")
        return self


def load_config(path: str | None = None) -> Config:
    """Defaults, overlaid with the QECC_CONFIG file (or an explicit path)."""
    path = path or os.environ.get(ENV_VAR)
    config = Config()
    if not path:
        return config
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidInputError(f"cannot read config {path}: {exc}") from exc
    known = {f.name for f in fields(Config)}
    unknown = set(data) - known
    if unknown:
        raise InvalidInputError(f"unknown config keys: {sorted(unknown)}")
    return replace(config, **data).check()
