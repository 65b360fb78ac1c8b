"""
Configuration settings for the DDS semantic information toolkit
Runtime settings come from the environment, model defaults are named constants
"""

from pathlib import Path
from typing import Optional

from pydantic import field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


# Default scenario
DEFAULT_TAU = 20e-3  # s
DEFAULT_LAMBDA = 1000.0  # particles / s
DEFAULT_K_D = 2e4  # 1/s
DEFAULT_K_F = 1e-14  # m^3 / (particle s)
DEFAULT_K_B = 2e4  # 1/s
DEFAULT_K_I = 1e3  # 1/s
DEFAULT_D = 5e-9  # m^2 / s
DEFAULT_A = 0.5e-6  # m
DEFAULT_R0 = 1e-6  # m
DEFAULT_C_TH = 0.05  # particles / cell
DEFAULT_HILL_N = 10.0
DEFAULT_EPSILON = 1e-2

# Simulation plumbing
DEFAULT_DT = 1e-6  # s
DEFAULT_TRIALS = 100_000
DEFAULT_TIME_POINTS = 200
DEFAULT_BLOCK_SIZE = 16_384
DEFAULT_SEED = 20250101

# Intervention ranges: parameter -> (min, max, scale)
DEFAULT_INTERVENTION_RANGES = {
    "lambda": (1000.0, 4000.0, "linear"),
    "k_d": (1000.0, 20000.0, "linear"),
    "k_f": (1e-14, 4e-14, "log"),
    "k_b": (5000.0, 20000.0, "linear"),
    "k_i": (1000.0, 5000.0, "linear"),
}
DEFAULT_GRID_POINTS = 61

# Temporal profile: 10 to 25 ms
DEFAULT_TAU_GRID = tuple(round(1e-3 * ms, 6) for ms in range(10, 26))


class Settings(BaseSettings):
    # Environment
    ENVIRONMENT: str = "development"

    # Logging
    LOG_LEVEL: str = "INFO"
    LOG_JSON: bool = False

    # Execution
    THREADS: int = 1
    OUTPUT_DIR: Optional[Path] = None

    # Diagnostics
    P_BIND_WARNING_THRESHOLD: float = 0.5
    CONFIG_PATH: Optional[Path] = None

    model_config = SettingsConfigDict(
        env_prefix="DDS_",
        env_file=".env",
        case_sensitive=True,
        extra="ignore",
    )

    @field_validator("ENVIRONMENT")
    @classmethod
    def validate_environment(cls, v):
        if v not in ["development", "test", "production"]:
            raise ValueError("ENVIRONMENT must be development, test, or production")
        return v

    @field_validator("LOG_LEVEL")
    @classmethod
    def validate_log_level(cls, v):
        level = v.upper()
        if level not in ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]:
            raise ValueError(f"Unknown LOG_LEVEL: {v}")
        return level

    @field_validator("THREADS")
    @classmethod
    def validate_threads(cls, v):
        if v < 1:
            raise ValueError("THREADS must be at least 1")
        return v

    @field_validator("P_BIND_WARNING_THRESHOLD")
    @classmethod
    def validate_threshold(cls, v):
        if not 0.0 < v <= 1.0:
            raise ValueError("P_BIND_WARNING_THRESHOLD must lie in (0, 1]")
        return v


# Global settings instance
settings = Settings()


def is_production() -> bool:
    """Check if running in production environment"""
    return settings.ENVIRONMENT == "production"


def use_json_logs() -> bool:
    """JSON log lines in production or when explicitly requested"""
    return settings.LOG_JSON or is_production()
