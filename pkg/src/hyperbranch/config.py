"""Configuration management for hyperbranch runs."""

import os
from pathlib import Path

VALID_LOG_LEVELS = {"debug", "info", "warn", "warning", "error"}


def get_bool(key: str, default: bool = False) -> bool:
    """Get boolean environment variable with default."""
    value = os.getenv(key)
    if value is None:
        return default
    return value.lower() in ("true", "1", "yes", "on")


def get_int(key: str, default: int = 0) -> int:
    """Get integer environment variable with default."""
    value = os.getenv(key)
    if value is None:
        return default
    try:
        return int(value)
    except ValueError:
        return default


def get_float(key: str, default: float = 0.0) -> float:
    """Get float environment variable with default."""
    value = os.getenv(key)
    if value is None:
        return default
    try:
        return float(value)
    except ValueError:
        return default


def load_env_file(env_file: Path) -> None:
    """Load environment variables from .env file if it exists."""
    if not env_file.exists():
        return

    with open(env_file) as f:
        for line in f:
            line = line.strip()
            if line == "" or line.startswith("#"):
                continue

            if "=" in line:
                key, value = line.split("=", 1)
                key = key.strip()
                value = value.strip()

                if (value.startswith('"') and value.endswith('"')) or (
                    value.startswith("'") and value.endswith("'")
                ):
                    value = value[1:-1]

                # the process environment wins over the file
                if not os.getenv(key):
                    os.environ[key] = value


class HyperbranchConfig:
    """Settings shared by the CLI and the verification runner."""

    def __init__(self):
        self.log_level = os.getenv(
            "HYPERBRANCH_LOG_LEVEL", os.getenv("LOG_LEVEL", "info")
        ).lower()
        self.json_logging = get_bool(
            "HYPERBRANCH_JSON_LOGGING", get_bool("JSON_LOGGING", False)
        )
        self.seed = get_int("HYPERBRANCH_SEED", 7)
        self.param_points = get_int("HYPERBRANCH_PARAM_POINTS", 3)
        self.max_retries = get_int("HYPERBRANCH_MAX_RETRIES", 5)
        self.param_height = get_int("HYPERBRANCH_PARAM_HEIGHT", 12)
        self.workers = get_int("HYPERBRANCH_WORKERS", 1)
        self.halving_ratio_min = get_float("HYPERBRANCH_HALVING_RATIO_MIN", 1.5)
        self.halving_ratio_max = get_float("HYPERBRANCH_HALVING_RATIO_MAX", 3.0)
        self.degeneration_tolerance = get_float(
            "HYPERBRANCH_DEGENERATION_TOLERANCE", 1e-3
        )

    def validate_config(self) -> None:
        """Validate the configuration after loading."""
        if self.log_level not in VALID_LOG_LEVELS:
            raise ValueError(
                f"Invalid log level: {self.log_level}. "
                f"Must be one of {VALID_LOG_LEVELS}"
            )
        if self.param_points < 1:
            raise ValueError("HYPERBRANCH_PARAM_POINTS must be at least 1")
        if self.max_retries < 0:
            raise ValueError("HYPERBRANCH_MAX_RETRIES must be non-negative")
        if self.param_height < 2:
            raise ValueError("HYPERBRANCH_PARAM_HEIGHT must be at least 2")
        if self.workers < 1:
            raise ValueError("HYPERBRANCH_WORKERS must be at least 1")
        if not 1.0 < self.halving_ratio_min < self.halving_ratio_max:
            raise ValueError(
                "Invalid halving ratio window: "
                f"[{self.halving_ratio_min}, {self.halving_ratio_max}]"
            )
        if not 0.0 < self.degeneration_tolerance < 1.0:
            raise ValueError("HYPERBRANCH_DEGENERATION_TOLERANCE must lie in (0, 1)")


def load_config() -> HyperbranchConfig:
    """Load configuration for hyperbranch."""
    return HyperbranchConfig()
