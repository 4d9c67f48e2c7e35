"""
Runtime settings for the BFHP toolkit.

Environment variables:
    BFHP_MR_ROUNDS: Miller-Rabin rounds per primality test (default: 40)
    BFHP_COPRIME_ATTEMPTS: Attempt budget of the coprime sampler (default: 10000)
    BFHP_KEYGEN_ATTEMPTS: Rejection budget for private scalars and lifts (default: 1000)
    BFHP_T_CAP: Largest t-range the box solver will enumerate (default: 2^20)
    BFHP_J_CAP: Largest j-range the RSA-BFHP search will scan (default: 2^20)
    BFHP_BENCH_RUNS: Timed runs per benchmarked operation (default: 11)
    BFHP_BENCH_WARMUPS: Untimed warmup runs per operation (default: 3)
    BFHP_METRICS_ENABLED: Record Prometheus metrics if available (default: true)
    BFHP_LOG_LEVEL: Logging level used by the CLI (default: WARNING)
"""

import logging
import os
from functools import lru_cache
from typing import Any

from dotenv import load_dotenv
from pydantic import BaseModel, Field, ValidationError, field_validator

from .errors import ConfigurationError

# Load environment variables from .env if available
load_dotenv()

MR_ROUNDS = int(os.getenv("BFHP_MR_ROUNDS", "40"))
COPRIME_ATTEMPTS = int(os.getenv("BFHP_COPRIME_ATTEMPTS", "10000"))
KEYGEN_ATTEMPTS = int(os.getenv("BFHP_KEYGEN_ATTEMPTS", "1000"))
T_CAP = int(os.getenv("BFHP_T_CAP", str(1 << 20)))
J_CAP = int(os.getenv("BFHP_J_CAP", str(1 << 20)))
BENCH_RUNS = int(os.getenv("BFHP_BENCH_RUNS", "11"))
BENCH_WARMUPS = int(os.getenv("BFHP_BENCH_WARMUPS", "3"))
METRICS_ENABLED = os.getenv("BFHP_METRICS_ENABLED", "true").lower() == "true"
LOG_LEVEL = os.getenv("BFHP_LOG_LEVEL", "WARNING")


class BfhpSettings(BaseModel):
    """Validated toolkit settings."""

    mr_rounds: int = Field(default=40, ge=40, le=256)
    coprime_attempts: int = Field(default=10_000, ge=1)
    keygen_attempts: int = Field(default=1_000, ge=1)
    t_cap: int = Field(default=1 << 20, ge=1)
    j_cap: int = Field(default=1 << 20, ge=1)
    bench_runs: int = Field(default=11, ge=11)
    bench_warmups: int = Field(default=3, ge=3)
    metrics_enabled: bool = Field(default=True)
    log_level: str = Field(default="WARNING")

    model_config = {"frozen": True}

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        level = v.strip().upper()
        if level not in logging.getLevelNamesMapping():
            raise ValueError(f"Unknown log level: {v}")
        return level


def validate_settings(overrides: dict[str, Any]) -> BfhpSettings:
    """
    Validate a settings mapping.

    Raises:
        ConfigurationError: If any field is out of range
    """
    try:
        return BfhpSettings.model_validate(overrides)
    except ValidationError as e:
        raise ConfigurationError(str(e)) from e


@lru_cache(maxsize=1)
def get_settings() -> BfhpSettings:
    """Settings built from the environment, cached for the process."""
    return validate_settings(
        {
            "mr_rounds": MR_ROUNDS,
            "coprime_attempts": COPRIME_ATTEMPTS,
            "keygen_attempts": KEYGEN_ATTEMPTS,
            "t_cap": T_CAP,
            "j_cap": J_CAP,
            "bench_runs": BENCH_RUNS,
            "bench_warmups": BENCH_WARMUPS,
            "metrics_enabled": METRICS_ENABLED,
            "log_level": LOG_LEVEL,
        }
    )
