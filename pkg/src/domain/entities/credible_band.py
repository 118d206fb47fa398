"""
CredibleBand entity is a sup-norm ball around the posterior mean.
"""
from dataclasses import dataclass

import numpy as np

from ..errors import DomainError


@dataclass(frozen=True, eq=False)
class CredibleBand:
    """CB_n(β) = {f : ‖f − center‖_∞ ≤ radius} restricted to a grid."""
    grid: np.ndarray
    center: np.ndarray
    radius: float
    level: float
    draws: int

    def __post_init__(self):
        if self.radius < 0:
            raise DomainError("Band radius cannot be negative")
        if not 0 < self.level < 1:
            raise DomainError(f"Credible level must lie in (0, 1), got {self.level}")
        if np.size(self.grid) != np.size(self.center):
            raise DomainError("Band center does not match the grid")

    @property
    def lower(self) -> np.ndarray:
        return np.asarray(self.center) - self.radius

    @property
    def upper(self) -> np.ndarray:
        return np.asarray(self.center) + self.radius
