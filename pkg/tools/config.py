"""Runtime settings read from the environment (and a local .env in development)."""

import os
from pathlib import Path

from dotenv import load_dotenv
from pydantic import BaseModel, Field

BUNDLED_FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


class Settings(BaseModel):
    nmax: int = Field(default=8, ge=1)
    fixture_dir: Path = BUNDLED_FIXTURES
    log_level: str = "WARNING"
    cache_size: int = Field(default=4096, ge=1)

    @classmethod
    def from_env(cls) -> "Settings":
        load_dotenv()
        values = {
            "nmax": os.getenv("LUKA_NMAX"),
            "fixture_dir": os.getenv("LUKA_FIXTURE_DIR"),
            "log_level": os.getenv("LUKA_LOG_LEVEL"),
            "cache_size": os.getenv("LUKA_CACHE_SIZE"),
        }
        return cls(**{k: v for k, v in values.items() if v})
