"""
Dataset entity holds the regression sample D_n = {(X_i, Y_i)}.
"""
from dataclasses import dataclass

import numpy as np

from ..errors import DomainError


@dataclass(frozen=True, eq=False)
class Dataset:
    """Design points in [0, 1] and their responses."""
    X: np.ndarray
    Y: np.ndarray

    def __post_init__(self):
        X = np.array(self.X, dtype=float).ravel()
        Y = np.array(self.Y, dtype=float).ravel()
        if X.size == 0:
            raise DomainError("Dataset must contain at least one observation")
        if X.size != Y.size:
            raise DomainError(f"X and Y lengths differ ({X.size} vs {Y.size})")
        if np.any(X < 0.0) or np.any(X > 1.0):
            raise DomainError("Design points must lie in [0, 1]")
        if not np.all(np.isfinite(Y)):
            raise DomainError("Responses must be finite")
        X.setflags(write=False)
        Y.setflags(write=False)
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "Y", Y)

    @property
    def n(self) -> int:
        return self.X.size
