"""
Configuration for char2orth
Values come from the environment (optionally a .env file at the repository root)
"""

import os
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict

from dotenv import load_dotenv
from pydantic import BaseModel, Field

ROOT_DIR = Path(__file__).parent.parent
load_dotenv(ROOT_DIR / '.env')


def _env_bool(name: str, default: bool) -> bool:
    value = os.environ.get(name)
    if value is None:
        return default
    return value.strip().lower() in ("1", "true", "yes", "on")


class Settings(BaseModel):
    # n * log2|k| frontier for brute-force enumeration
    budget_bits: int = Field(default=14, ge=1)
    jobs: int = Field(default=1, ge=1)
    log_level: str = "INFO"
    log_json: bool = False
    # candidate cap for conjugator and Z searches
    search_limit: int = Field(default=200000, ge=1)
    # enumeration stops beyond this many group elements
    max_group_order: int = Field(default=1000000, ge=1)


# per-invocation overrides (CLI flags) applied on top of the environment
_overrides: Dict[str, Any] = {}


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    settings = Settings(
        budget_bits=int(os.environ.get('CHAR2ORTH_BUDGET_BITS', 14)),
        jobs=int(os.environ.get('CHAR2ORTH_JOBS', 1)),
        log_level=os.environ.get('CHAR2ORTH_LOG_LEVEL', 'INFO'),
        log_json=_env_bool('CHAR2ORTH_LOG_JSON', False),
        search_limit=int(os.environ.get('CHAR2ORTH_SEARCH_LIMIT', 200000)),
        max_group_order=int(os.environ.get('CHAR2ORTH_MAX_GROUP_ORDER', 1000000)),
    )
    if _overrides:
        return Settings(**{**settings.model_dump(), **_overrides})
    return settings


def override_settings(**values: Any) -> Settings:
    _overrides.update({k: v for k, v in values.items() if v is not None})
    get_settings.cache_clear()
    return get_settings()


def reset_settings() -> None:
    _overrides.clear()
    get_settings.cache_clear()
