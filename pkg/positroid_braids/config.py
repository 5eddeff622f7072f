"""Configuration management for the positroid braids toolkit"""

from __future__ import annotations

import json
import logging
import os
from typing import Any, Dict, List, Literal, Optional

from dotenv import load_dotenv
from pydantic import BaseModel, Field

from .const import (
    DEFAULT_LOG_LEVEL,
    DEFAULT_MAX_ASSIGNMENTS,
    DEFAULT_MAX_EXTRA_LENGTH,
    DEFAULT_MAX_STATES,
    DEFAULT_PRIMES,
    DEFAULT_SET_T,
    DEFAULT_T_MODE,
    DEFAULT_THREADS,
    ENV_LOG_LEVEL,
    ENV_MAX_ASSIGNMENTS,
    ENV_MAX_STATES,
    ENV_THREADS,
)

_LOGGER = logging.getLogger(__name__)


class CheckConfig(BaseModel):
    """Base configuration for checks"""
    enabled: bool = True


class SearchConfig(BaseModel):
    """Bounds for the equivalence search"""
    max_extra_length: int = Field(default=DEFAULT_MAX_EXTRA_LENGTH, ge=0, le=12)
    max_states: int = Field(default=DEFAULT_MAX_STATES, ge=1)
    use_burau_filter: bool = Field(default=True)


class CountConfig(BaseModel):
    """Bounds for finite-field point counting"""
    max_assignments: int = Field(default=DEFAULT_MAX_ASSIGNMENTS, ge=1)
    primes: List[int] = Field(default_factory=lambda: list(DEFAULT_PRIMES))
    t_mode: Literal["pm1", "range"] = DEFAULT_T_MODE


class DGAConfig(BaseModel):
    """Options for the braid DG-algebra"""
    set_t: Literal["symbolic", "pm1"] = DEFAULT_SET_T
    verify_d_squared: bool = False


class RunnerConfig(BaseModel):
    """Parallelism for the check runner"""
    threads: int = Field(default=DEFAULT_THREADS, ge=1, le=64)


class IntroCheckConfig(CheckConfig):
    """Configuration for the worked example reproduction"""
    f: Optional[List[int]] = None


class TheoremCheckConfig(CheckConfig):
    """Configuration for a theorem instance check"""
    instance: Dict[str, Any] = Field(default_factory=dict)
    q: List[int] = Field(default_factory=lambda: [2])


class ChecksConfig(BaseModel):
    """Configuration for all checks"""
    intro: IntroCheckConfig = Field(default_factory=IntroCheckConfig)
    main1_i: TheoremCheckConfig = Field(default_factory=lambda: TheoremCheckConfig(enabled=False))
    main1_ii: TheoremCheckConfig = Field(default_factory=lambda: TheoremCheckConfig(enabled=False))
    rich_vs_juggling: TheoremCheckConfig = Field(default_factory=lambda: TheoremCheckConfig(enabled=False))
    brick_strata: TheoremCheckConfig = Field(default_factory=lambda: TheoremCheckConfig(enabled=False))
    trace: TheoremCheckConfig = Field(default_factory=lambda: TheoremCheckConfig(enabled=False))


class Config(BaseModel):
    """Main configuration class"""
    log_level: str = Field(default=DEFAULT_LOG_LEVEL)
    search: SearchConfig = Field(default_factory=SearchConfig)
    count: CountConfig = Field(default_factory=CountConfig)
    dga: DGAConfig = Field(default_factory=DGAConfig)
    runner: RunnerConfig = Field(default_factory=RunnerConfig)
    checks: ChecksConfig = Field(default_factory=ChecksConfig)

    @classmethod
    def from_file(cls, file_path: str) -> "Config":
        """Load configuration from JSON file"""
        try:
            with open(file_path, "r") as f:
                data = json.load(f)
            return cls(**data)
        except FileNotFoundError:
            # Return default config if file doesn't exist
            return cls()
        except Exception as e:
            raise ValueError(f"Error loading configuration: {e}")

    @classmethod
    def from_env(cls, file_path: Optional[str] = None, dotenv_path: Optional[str] = None) -> "Config":
        """Load configuration from an optional JSON file, then apply POSITROID_* overrides"""
        load_dotenv(dotenv_path)
        config = cls.from_file(file_path) if file_path else cls()
        return config.with_overrides(
            threads=os.getenv(ENV_THREADS),
            max_assignments=os.getenv(ENV_MAX_ASSIGNMENTS),
            max_states=os.getenv(ENV_MAX_STATES),
            log_level=os.getenv(ENV_LOG_LEVEL),
        )

    def with_overrides(
        self,
        threads: Any = None,
        max_assignments: Any = None,
        max_states: Any = None,
        log_level: Optional[str] = None,
    ) -> "Config":
        """Return a copy with the given values replaced; None leaves a value untouched"""
        data = self.model_dump()
        if threads is not None:
            data["runner"]["threads"] = int(threads)
        if max_assignments is not None:
            data["count"]["max_assignments"] = int(max_assignments)
        if max_states is not None:
            data["search"]["max_states"] = int(max_states)
        if log_level:
            data["log_level"] = log_level.upper()
        _LOGGER.debug(f"Configuration overrides applied: {data['runner']}, {data['count']}, {data['search']}")
        return Config(**data)

    def to_file(self, file_path: str) -> None:
        """Save configuration to JSON file"""
        with open(file_path, "w") as f:
            json.dump(self.model_dump(), f, indent=2)
