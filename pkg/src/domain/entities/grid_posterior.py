"""
GridPosterior is the posterior restricted to a finite grid.
"""
from dataclasses import dataclass

import numpy as np

from ..errors import DomainError


@dataclass(frozen=True, eq=False)
class GridPosterior:
    """Mean vector and covariance matrix of f | D_n on m grid points."""
    grid: np.ndarray
    mean: np.ndarray
    cov: np.ndarray  # jitter already added to the diagonal
    jitter: float = 0.0

    def __post_init__(self):
        grid = np.array(self.grid, dtype=float).ravel()
        mean = np.array(self.mean, dtype=float).ravel()
        cov = np.array(self.cov, dtype=float)
        m = grid.size
        if m < 1:
            raise DomainError("Grid must contain at least one point")
        if mean.size != m or cov.shape != (m, m):
            raise DomainError("Mean and covariance do not match the grid size")
        for array in (grid, mean, cov):
            array.setflags(write=False)
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "cov", cov)

    @property
    def size(self) -> int:
        return self.grid.size

    @property
    def variance(self) -> np.ndarray:
        """Pointwise posterior variance without the jitter."""
        return np.maximum(np.diag(self.cov) - self.jitter, 0.0)

    def raw_cov(self) -> np.ndarray:
        return self.cov - self.jitter * np.eye(self.size)

    def shifted(self, offset: float) -> 'GridPosterior':
        return GridPosterior(self.grid, self.mean + offset, self.cov, self.jitter)
