# shared/config/settings.py
# Runtime knobs, read from the environment (and an optional .env file).
# Size caps are read at call time, so overrides apply to every constructor.

import os
from typing import Optional

from dotenv import load_dotenv
from pydantic import BaseModel, Field

load_dotenv()


class Settings(BaseModel):
    max_elements: int = Field(4096, ge=1)   # guards every ring/module constructor
    oracle_cap:   int = Field(64,   ge=1)   # all_ideals / brute-force distributivity
    iso_cap:      int = Field(256,  ge=1)   # ring_isomorphic
    table_cap:    int = Field(4096, ge=1)   # lazy add/mul row memoisation
    seed:         int = 0
    log_level:    str = "WARNING"


def _from_env() -> Settings:
    return Settings(
        max_elements = int(os.getenv("BIAMALG_MAX_ELEMENTS", "4096")),
        oracle_cap   = int(os.getenv("BIAMALG_ORACLE_CAP", "64")),
        iso_cap      = int(os.getenv("BIAMALG_ISO_CAP", "256")),
        table_cap    = int(os.getenv("BIAMALG_TABLE_CAP", "4096")),
        seed         = int(os.getenv("BIAMALG_SEED", "0")),
        log_level    = os.getenv("LOG_LEVEL", "WARNING"),
    )


_settings: Optional[Settings] = None


def get_settings() -> Settings:
    global _settings
    if _settings is None:
        _settings = _from_env()
    return _settings


def override_settings(**fields) -> Settings:
    """
    Installs a copy of the current settings with `fields` replaced.
    Returns the previous settings so callers can restore them.
    """
    global _settings
    previous  = get_settings()
    _settings = previous.model_copy(update=fields)
    return previous


def restore_settings(previous: Settings) -> None:
    global _settings
    _settings = previous
