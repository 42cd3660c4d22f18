from typing import Optional

from pydantic import BaseModel, ConfigDict, Field

DEFAULT_FACTOR_LIMIT = 2**32


class Settings(BaseModel):
    """
    Run-wide knobs. Populated from command-line flags only.
    """

    factor_limit: int = Field(DEFAULT_FACTOR_LIMIT, ge=2)  # largest trial divisor tried
    workers: int = Field(1, ge=1)  # threads used by the searches
    log_level: str = "WARNING"
    monitor_connection_string: Optional[str] = None

    model_config = ConfigDict(extra="forbid", frozen=True)


_settings: Optional[Settings] = None


def get_settings() -> Settings:
    global _settings
    if _settings is None:
        _settings = Settings()
    return _settings


def configure(**overrides) -> Settings:
    """Replace the active settings; unspecified fields keep their defaults."""
    global _settings
    _settings = Settings(**overrides)
    return _settings
