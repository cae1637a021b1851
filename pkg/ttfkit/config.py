# ttfkit/config.py
"""
Runtime settings.

Values come from ``TTFKIT_*`` environment variables, optionally loaded from a
``.env`` file in the working directory (see ``.env.example``).
"""
import os
from dataclasses import dataclass
from functools import lru_cache

from dotenv import load_dotenv


def _int_env(key, default):
    raw = os.getenv(key)
    if raw is None or raw.strip() == "":
        return default
    return int(raw)


@dataclass(frozen=True)
class Settings:
    coset_budget: int = 10**6
    witt_level_guard: int = 6
    sample_threshold: int = 2**16
    sample_size: int = 4096
    seed: int = 0
    full_symmetric_limit: int = 120
    associativity_limit: int = 64
    workers: int = 1
    log_file: str | None = None
    log_level: str = "WARNING"


@lru_cache(maxsize=1)
def get_settings():
    """Load ``.env`` once and build the process-wide Settings."""
    load_dotenv()
    return Settings(
        coset_budget=_int_env("TTFKIT_COSET_BUDGET", Settings.coset_budget),
        witt_level_guard=_int_env("TTFKIT_WITT_LEVEL_GUARD", Settings.witt_level_guard),
        sample_threshold=_int_env("TTFKIT_SAMPLE_THRESHOLD", Settings.sample_threshold),
        sample_size=_int_env("TTFKIT_SAMPLE_SIZE", Settings.sample_size),
        seed=_int_env("TTFKIT_SEED", Settings.seed),
        full_symmetric_limit=_int_env("TTFKIT_FULL_SYMMETRIC_LIMIT", Settings.full_symmetric_limit),
        associativity_limit=_int_env("TTFKIT_ASSOCIATIVITY_LIMIT", Settings.associativity_limit),
        workers=_int_env("TTFKIT_WORKERS", Settings.workers),
        log_file=os.getenv("TTFKIT_LOG_FILE") or None,
        log_level=os.getenv("TTFKIT_LOG_LEVEL", Settings.log_level).upper(),
    )
