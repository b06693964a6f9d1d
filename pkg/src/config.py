"""Configuration management for the learning engine."""

from functools import lru_cache
from typing import Optional

from dotenv import load_dotenv
from pydantic import Field
from pydantic_settings import BaseSettings

# Load environment variables from .env file
load_dotenv()


class Settings(BaseSettings):
    """Engine settings loaded from environment variables."""

    # Search caps
    max_base_atoms: int = Field(default=24, alias="POSSIB_MAX_BASE")
    max_space: int = Field(default=2**14, alias="POSSIB_MAX_SPACE")

    # Hypothesis language
    allow_hypothesis_constants: bool = Field(
        default=False,
        alias="POSSIB_ALLOW_HYPOTHESIS_CONSTANTS"
    )

    # Weighted possibilities
    weight_tolerance: float = Field(default=1e-9, alias="POSSIB_WEIGHT_TOLERANCE")

    # Logging
    log_level: str = Field(default="WARNING", alias="POSSIB_LOG_LEVEL")

    @property
    def log_level_name(self) -> str:
        """Normalized logging level name."""
        return self.log_level.strip().upper()

    class Config:
        env_file = ".env"
        env_file_encoding = "utf-8"
        extra = "ignore"
        populate_by_name = True


@lru_cache
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()


def resolve_cap(override: Optional[int], default: int) -> int:
    """Return an explicit cap override, or the configured default."""
    return default if override is None else override
