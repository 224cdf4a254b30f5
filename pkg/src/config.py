"""
Configuration management for the Legendrian Cost toolkit.
"""
import logging
import os
from typing import Any, Dict

from dotenv import load_dotenv

# Load environment variables
load_dotenv()

logger = logging.getLogger(__name__)


def _int_env(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError:
        logger.warning(f"Ignoring non-integer value for {name}: {raw!r}")
        return default


class Config:
    """Centralized configuration management."""

    # Search budget defaults
    SEARCH_MAX_WIDTH: int = _int_env("SEARCH_MAX_WIDTH", 8)
    SEARCH_MAX_EVENTS: int = _int_env("SEARCH_MAX_EVENTS", 24)
    SEARCH_MAX_STATES: int = _int_env("SEARCH_MAX_STATES", 1_000_000)
    SEARCH_MAX_COST: int = _int_env("SEARCH_MAX_COST", 6)
    SEARCH_THREADS: int = _int_env("SEARCH_THREADS", 1)

    # Knot type data
    # Added to the pq - p - q peak constant of positive torus knots.
    TORUS_TB_SHIFT: int = _int_env("TORUS_TB_SHIFT", 0)

    # Generators
    RANDOM_SEED: int = _int_env("RANDOM_SEED", 2024)

    # Application Configuration
    LOG_LEVEL: str = os.getenv("LOG_LEVEL", "INFO").upper()
    HOST: str = os.getenv("HOST", "127.0.0.1")
    PORT: int = _int_env("PORT", 8000)
    DEBUG: bool = os.getenv("DEBUG", "False").lower() == "true"

    BUDGET_KEYS = (
        "SEARCH_MAX_WIDTH",
        "SEARCH_MAX_EVENTS",
        "SEARCH_MAX_STATES",
        "SEARCH_MAX_COST",
        "SEARCH_THREADS",
    )

    @classmethod
    def validate(cls) -> bool:
        """Validate that every budget value is a positive integer."""
        ok = True
        for key in cls.BUDGET_KEYS:
            if getattr(cls, key) <= 0:
                logger.warning(f"Configuration value {key} must be positive, got {getattr(cls, key)}")
                ok = False
        return ok

    @classmethod
    def default_budget(cls) -> Dict[str, int]:
        """Default search budget as keyword arguments for SearchBudget."""
        return {
            "max_width": cls.SEARCH_MAX_WIDTH,
            "max_events": cls.SEARCH_MAX_EVENTS,
            "max_states": cls.SEARCH_MAX_STATES,
            "max_cost": cls.SEARCH_MAX_COST,
        }

    @classmethod
    def describe(cls) -> Dict[str, Any]:
        """Snapshot of the active configuration."""
        return {
            **cls.default_budget(),
            "threads": cls.SEARCH_THREADS,
            "torus_tb_shift": cls.TORUS_TB_SHIFT,
            "random_seed": cls.RANDOM_SEED,
            "log_level": cls.LOG_LEVEL,
        }


# Global configuration instance
config = Config()
