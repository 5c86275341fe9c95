import logging
import os
import sys

from dotenv import load_dotenv
from pydantic import BaseModel, Field, ValidationError, field_validator

from dsi_hurst.errors import ConfigError

load_dotenv()

LOG_FORMAT = "%(asctime)s [%(levelname)s] %(name)s: %(message)s"


class Settings(BaseModel):
    """Runtime settings read from the environment (and a local ``.env``)."""

    log_level: str = Field(
        "WARNING",
        description="Logging level for the CLI and the HTTP server (DSI_HURST_LOG_LEVEL)."
    )
    workers: int = Field(
        1, ge=1,
        description="Threads used by the benchmark harness (DSI_HURST_WORKERS)."
    )
    api_token: str | None = Field(
        None,
        description="Bearer token required by the HTTP endpoints (DSI_HURST_API_TOKEN or DB_TOKEN)."
    )
    port: int = Field(5000, description="Port of the development server (PORT).")

    @field_validator("log_level")
    @classmethod
    def _known_level(cls, value):
        value = value.upper()
        if not isinstance(logging.getLevelName(value), int):
            raise ValueError(f"unknown log level '{value}'")
        return value


def get_settings():
    raw = {
        "log_level": os.getenv("DSI_HURST_LOG_LEVEL", "WARNING"),
        "workers": os.getenv("DSI_HURST_WORKERS", "1"),
        "api_token": os.getenv("DSI_HURST_API_TOKEN") or os.getenv("DB_TOKEN"),
        "port": os.getenv("PORT", "5000"),
    }
    try:
        return Settings(**raw)
    except ValidationError as e:
        names = {
            "log_level": "DSI_HURST_LOG_LEVEL",
            "workers": "DSI_HURST_WORKERS",
            "api_token": "DSI_HURST_API_TOKEN",
            "port": "PORT",
        }
        bad = ", ".join(names.get(str(err["loc"][0]), str(err["loc"][0])) for err in e.errors())
        raise ConfigError(f"invalid environment setting(s): {bad}") from e


def configure_logging(level="WARNING"):
    """Send library logs to stderr; stdout stays reserved for data."""
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    root = logging.getLogger("dsi_hurst")
    root.handlers[:] = [handler]
    root.setLevel(level)
    root.propagate = False
    return root
