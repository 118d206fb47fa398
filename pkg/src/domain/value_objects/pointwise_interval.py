"""
PointwiseInterval is a posterior-mean-centred credible interval at one location.
"""
from dataclasses import dataclass

from ..errors import DomainError


@dataclass(frozen=True)
class PointwiseInterval:
    """Value object for CI_n(x; β) = [center − l_n, center + l_n]."""
    center: float
    half_length: float
    level: float

    def __post_init__(self):
        if self.half_length < 0:
            raise DomainError("Half-length cannot be negative")
        if not 0 < self.level < 1:
            raise DomainError(f"Credible level must lie in (0, 1), got {self.level}")

    @property
    def lower(self) -> float:
        return self.center - self.half_length

    @property
    def upper(self) -> float:
        return self.center + self.half_length

    def contains(self, value: float) -> bool:
        return abs(value - self.center) <= self.half_length
