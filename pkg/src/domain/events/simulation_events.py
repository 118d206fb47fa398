"""
Events raised while a replicated experiment runs.
"""
from dataclasses import dataclass
from datetime import datetime
from typing import Dict, Optional


@dataclass
class SimulationEvent:
    """Base class for simulation events."""
    timestamp: datetime

    def __init__(self, timestamp: datetime = None):
        """Initialize with an optional timestamp that defaults to now."""
        self.timestamp = timestamp or datetime.now()


@dataclass
class ReplicateCompleted(SimulationEvent):
    """Event raised when one replicate has been evaluated."""
    index: int
    total: int
    covered: Dict[float, bool]  # level -> simultaneous coverage of f*

    def __init__(self, index: int, total: int, covered: Dict[float, bool], timestamp: datetime = None):
        super().__init__(timestamp)
        self.index = index
        self.total = total
        self.covered = covered


@dataclass
class ReplicateFailed(SimulationEvent):
    """Event raised when a replicate could not be evaluated."""
    index: int
    error_message: str
    exception: Optional[Exception] = None

    def __init__(self, index: int, error_message: str,
                 exception: Optional[Exception] = None, timestamp: datetime = None):
        super().__init__(timestamp)
        self.index = index
        self.error_message = error_message
        self.exception = exception


@dataclass
class ExperimentCompleted(SimulationEvent):
    """Event raised when a whole coverage cell has finished."""
    label: str
    elapsed_seconds: float

    def __init__(self, label: str, elapsed_seconds: float, timestamp: datetime = None):
        super().__init__(timestamp)
        self.label = label
        self.elapsed_seconds = elapsed_seconds
