"""
Error categories used across the application.

Config problems and numerical failures are kept apart so the CLI can map
them to distinct exit codes.
"""
from typing import Optional


class GPCoverageError(Exception):
    """Base class for all application errors."""


class ConfigError(GPCoverageError):
    """Invalid configuration: unknown keys, bad values, unreadable files."""


class DomainError(ConfigError, ValueError):
    """An argument lies outside the supported domain of an operation."""


class NumericalError(GPCoverageError):
    """A factorization or evaluation failed numerically."""


class ReplicateError(NumericalError):
    """A numerical failure inside one replicate of a simulation run."""

    def __init__(self, replicate_index: int, message: str, cause: Optional[Exception] = None):
        super().__init__(f"replicate {replicate_index}: {message}")
        self.replicate_index = replicate_index
        self.cause = cause
