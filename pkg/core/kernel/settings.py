"""Process-level settings: worker count, log level, progress bars.

Resolution order: explicit argument > environment (a .env file is loaded
first) > settings JSON file > defaults. Settings never influence numerical
results.
"""

from __future__ import annotations

import os
from typing import Any, Dict, Optional

from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, Field, field_validator
from pydantic import ValidationError as PydanticValidationError

from core.kernel.manifest_store import read_json
from core.kernel.types import ValidationError, error_from_pydantic


ENV_THREADS = "ACMAC_THREADS"
ENV_LOG_LEVEL = "ACMAC_LOG_LEVEL"
ENV_PROGRESS = "ACMAC_PROGRESS"

_TRUE = {"1", "true", "yes", "on"}


class Settings(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    threads: int = Field(default=1, ge=1, le=256)
    log_level: str = "WARNING"
    progress: bool = False

    @field_validator("log_level")
    @classmethod
    def _upper(cls, v: str) -> str:
        v = v.strip().upper()
        if v not in {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}:
            raise ValueError(f"unknown log level {v!r}")
        return v


def _env(name: str) -> Optional[str]:
    v = (os.environ.get(name) or "").strip()
    return v or None


def load_settings(
    threads: Optional[int] = None,
    log_level: Optional[str] = None,
    progress: Optional[bool] = None,
    settings_path: Optional[str] = None,
    dotenv_path: Optional[str] = None,
) -> Settings:
    load_dotenv(dotenv_path=dotenv_path, override=False)
    raw: Dict[str, Any] = {}
    if settings_path:
        obj = read_json(settings_path)
        if not isinstance(obj, dict):
            raise ValidationError("settings file must hold a JSON object", {"path": settings_path})
        raw.update(obj)

    env_progress = _env(ENV_PROGRESS)
    for key, arg, env in (
        ("threads", threads, _env(ENV_THREADS)),
        ("log_level", log_level, _env(ENV_LOG_LEVEL)),
        ("progress", progress, None if env_progress is None else env_progress.lower() in _TRUE),
    ):
        if arg is not None:
            raw[key] = arg
        elif env is not None:
            raw[key] = env
    try:
        return Settings.model_validate(raw)
    except PydanticValidationError as exc:
        raise error_from_pydantic(exc, "settings") from exc
