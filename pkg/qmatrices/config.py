from __future__ import annotations

import os
from dataclasses import dataclass


def _env_bool(name: str, default: bool) -> bool:
    v = os.getenv(name)
    if v is None:
        return default
    return v.strip().lower() in ("1", "true", "yes", "on")


def _env_int(name: str, default: int) -> int:
    v = os.getenv(name)
    if v is None:
        return default
    try:
        return int(v)
    except ValueError:
        return default


def _env_str(name: str, default: str) -> str:
    v = os.getenv(name)
    return v if v is not None and v != "" else default


@dataclass(frozen=True)
class Settings:
    log_level: str
    log_json: bool

    default_n: int
    budget_ms: int
    stretch_budget_ms: int
    seed: int
    samples: int
    workers: int

    check_entrypoint_group: str

    @staticmethod
    def load() -> "Settings":
        default_n = _env_int("QMAT_DEFAULT_N", 2)
        if default_n < 1:
            default_n = 2
        return Settings(
            log_level=_env_str("QMAT_LOG_LEVEL", "INFO"),
            log_json=_env_bool("QMAT_LOG_JSON", False),
            default_n=default_n,
            budget_ms=max(0, _env_int("QMAT_BUDGET_MS", 300000)),
            stretch_budget_ms=max(0, _env_int("QMAT_STRETCH_BUDGET_MS", 600000)),
            seed=_env_int("QMAT_SEED", 0),
            samples=max(1, _env_int("QMAT_SAMPLES", 200)),
            workers=max(1, _env_int("QMAT_WORKERS", 1)),
            check_entrypoint_group=_env_str("QMAT_CHECK_ENTRYPOINT_GROUP", "qmatrices.checks"),
        )
