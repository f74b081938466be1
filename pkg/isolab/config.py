# isolab/config.py

import os
from functools import lru_cache

from pydantic import BaseModel, ConfigDict, Field

from isolab.utils import paths


def _env_bool(name: str, default: bool) -> bool:
    raw = os.getenv(name)
    if raw is None:
        return default
    return raw.strip().lower() in {"1", "true", "yes", "on"}


class Settings(BaseModel):
    """
    Process-wide configuration resolved from the environment (and ``.env``).

    Attributes
    ----------
    workspace_dir, logs_dir, cache_dir : str
        Resolved directories, see :mod:`isolab.utils.paths`.
    default_prime : int
        Prime used by commands when ``--prime`` is omitted.
    default_precision : int
        Absolute p-adic precision used when ``--precision`` is omitted.
    witt_max_length : int
        Upper bound on Witt vector length accepted by ``structure_polys``.
    newton_max_size : int
        Upper bound on ``s * rank`` accepted by ``newton_slopes``.
    log_to_file : bool
        Whether the JSON-lines logger writes to disk.
    """

    model_config = ConfigDict(frozen=True)

    workspace_dir: str
    logs_dir: str
    cache_dir: str
    default_prime: int = Field(default=2, ge=2)
    default_precision: int = Field(default=10, ge=1)
    witt_max_length: int = Field(default=5, ge=1)
    newton_max_size: int = Field(default=12, ge=1)
    log_to_file: bool = True


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """Build (once) the settings object from environment variables."""
    return Settings(
        workspace_dir=paths.workspace_dir(),
        logs_dir=paths.logs_dir(),
        cache_dir=paths.cache_dir(),
        default_prime=int(os.getenv("ISOLAB_PRIME", "2")),
        default_precision=int(os.getenv("ISOLAB_PRECISION", "10")),
        witt_max_length=int(os.getenv("ISOLAB_WITT_MAX_LENGTH", "5")),
        newton_max_size=int(os.getenv("ISOLAB_NEWTON_MAX_SIZE", "12")),
        log_to_file=_env_bool("ISOLAB_LOG_TO_FILE", True),
    )


def reset_settings() -> None:
    """Drop the cached settings so the next call re-reads the environment."""
    get_settings.cache_clear()
