"""Run configuration: resource caps, worker count, output format, RNG seed.

Caps exist because the generator set of a k x k grid has k! elements; the
library refuses oversized inputs with a sizing estimate instead of thrashing.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, replace

ENV_PREFIX = "GRIDTHETA_"

# Hard defaults: full homology enumerates all k! states, boundary tests only
# need the single Alexander bucket of the chain and can go a little further.
DEFAULT_MAX_K_FULL = 10
DEFAULT_MAX_K_BUCKET = 12
DEFAULT_MAX_BUCKET_STATES = 2_000_000


@dataclass(frozen=True)
class RunConfig:
    max_k_full: int = DEFAULT_MAX_K_FULL
    max_k_bucket: int = DEFAULT_MAX_K_BUCKET
    max_bucket_states: int = DEFAULT_MAX_BUCKET_STATES
    workers: int = 1
    output_format: str = "json"  # "json" | "table"
    seed: int = 0

    def __post_init__(self):
        if self.max_k_full < 2 or self.max_k_bucket < 2 or self.max_bucket_states < 1:
            raise ValueError("resource caps must be positive")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        if self.output_format not in ("json", "table"):
            raise ValueError("output_format must be 'json' or 'table'")

    def with_overrides(self, **kwargs) -> "RunConfig":
        kwargs = {k: v for k, v in kwargs.items() if v is not None}
        return replace(self, **kwargs) if kwargs else self


def config_from_env(base: RunConfig | None = None) -> RunConfig:
    """Apply GRIDTHETA_MAX_K / _MAX_K_BUCKET / _WORKERS / _SEED overrides."""
    cfg = base or RunConfig()
    mapping = {
        "MAX_K": "max_k_full",
        "MAX_K_BUCKET": "max_k_bucket",
        "MAX_BUCKET_STATES": "max_bucket_states",
        "WORKERS": "workers",
        "SEED": "seed",
    }
    overrides = {}
    for env_key, field in mapping.items():
        raw = os.environ.get(ENV_PREFIX + env_key)
        if raw is not None:
            try:
                overrides[field] = int(raw)
            except ValueError as exc:
                raise ValueError(f"{ENV_PREFIX}{env_key} must be an integer, got {raw!r}") from exc
    fmt = os.environ.get(ENV_PREFIX + "FORMAT")
    if fmt is not None:
        overrides["output_format"] = fmt
    return cfg.with_overrides(**overrides)


def config_from_file(path: str, base: RunConfig | None = None) -> RunConfig:
    """Read a simple key=value file (``max_k_full=8`` etc.; '#' comments)."""
    cfg = base or RunConfig()
    overrides = {}
    int_fields = {"max_k_full", "max_k_bucket", "max_bucket_states", "workers", "seed"}
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value, got {line!r}")
            key, value = (part.strip() for part in line.split("=", 1))
            if key in int_fields:
                overrides[key] = int(value)
            elif key == "output_format":
                overrides[key] = value
            else:
                raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
    return cfg.with_overrides(**overrides)


def sizing_estimate(k: int) -> str:
    """Human-readable state-count estimate for a k x k grid."""
    states = math.factorial(k)
    return f"grid size {k} has {states:.3e} generators (k!)" if states > 10**9 \
        else f"grid size {k} has {states} generators (k!)"
