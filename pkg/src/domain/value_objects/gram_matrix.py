"""
GramMatrix holds a kernel matrix together with the points it was built on.
"""
from dataclasses import dataclass

import numpy as np
from scipy import linalg

from ..errors import DomainError

SYMMETRY_TOLERANCE = 1e-12
PSD_TOLERANCE = 1e-8


@dataclass(frozen=True, eq=False)
class GramMatrix:
    """Value object for K(points, points)."""
    entries: np.ndarray
    points: np.ndarray

    def __post_init__(self):
        """Validate shape and symmetry."""
        entries = np.array(self.entries, dtype=float)
        points = np.array(self.points, dtype=float).ravel()
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise DomainError(f"Gram matrix must be square, got shape {entries.shape}")
        if entries.shape[0] != points.size:
            raise DomainError("Gram matrix size does not match the number of points")
        scale = max(1.0, float(np.max(np.abs(entries)))) if entries.size else 1.0
        if not np.allclose(entries, entries.T, rtol=0.0, atol=SYMMETRY_TOLERANCE * scale):
            raise DomainError("Gram matrix is not symmetric")
        entries.setflags(write=False)
        points.setflags(write=False)
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "points", points)

    @property
    def size(self) -> int:
        return self.points.size

    def min_eigenvalue(self) -> float:
        return float(linalg.eigvalsh(self.entries)[0])

    def is_psd(self) -> bool:
        """Minimum eigenvalue ≥ −10⁻⁸ times the largest diagonal entry."""
        max_diag = float(np.max(np.diag(self.entries)))
        return self.min_eigenvalue() >= -PSD_TOLERANCE * max(max_diag, 0.0)

    def with_jitter(self, jitter: float) -> np.ndarray:
        return self.entries + jitter * np.eye(self.size)
