"""
FunctionCoeffs stores a function through its coordinates in the Fourier basis.
"""
from dataclasses import dataclass
from enum import Enum, auto

import numpy as np

from ..errors import DomainError


class SmoothnessClass(Enum):
    """Smoothness classes defined through weighted coefficient sums."""
    SOBOLEV = auto()
    HOLDER = auto()

    @classmethod
    def from_string(cls, value: str) -> 'SmoothnessClass':
        value = value.strip().upper().replace("Ö", "O")
        for member in cls:
            if member.name == value:
                return member
        raise DomainError(f"Unknown smoothness class: {value}")

    def __str__(self) -> str:
        return self.name.lower()


@dataclass(frozen=True, eq=False)
class FunctionCoeffs:
    """Value object for f = Σ f_j ψ_j with finitely many stored coefficients."""
    coeffs: np.ndarray

    def __post_init__(self):
        coeffs = np.array(self.coeffs, dtype=float).ravel()
        if coeffs.size == 0:
            raise DomainError("At least one coefficient is required")
        if not np.all(np.isfinite(coeffs)):
            raise DomainError("Coefficients must be finite")
        coeffs.setflags(write=False)
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def zeros(cls, truncation: int) -> 'FunctionCoeffs':
        return cls(np.zeros(truncation))

    @classmethod
    def holder_ball(cls, alpha: float, radius: float, truncation: int = 200) -> 'FunctionCoeffs':
        """A function with Hölder norm Σ j^α |f_j| just below `radius`.

        Coefficients f_j = radius · sin(j) · j^(−α−2) / ζ(2) keep every weighted
        term summable while exercising all frequencies.
        """
        j = np.arange(1, truncation + 1, dtype=float)
        return cls(radius * np.sin(j) * j ** (-alpha - 2.0) / (np.pi ** 2 / 6.0))

    @classmethod
    def sobolev_ball(cls, alpha: float, radius: float, truncation: int = 200) -> 'FunctionCoeffs':
        """A function with Sobolev norm (Σ j^(2α) f_j²)^(1/2) below `radius`."""
        j = np.arange(1, truncation + 1, dtype=float)
        return cls(radius * np.sin(j) * j ** (-alpha - 1.0) / np.sqrt(np.pi ** 2 / 6.0))

    @property
    def truncation(self) -> int:
        return self.coeffs.size

    def sobolev_norm(self, alpha: float) -> float:
        j = np.arange(1, self.truncation + 1, dtype=float)
        return float(np.sqrt(np.sum(j ** (2.0 * alpha) * self.coeffs ** 2)))

    def holder_norm(self, alpha: float) -> float:
        j = np.arange(1, self.truncation + 1, dtype=float)
        return float(np.sum(j ** alpha * np.abs(self.coeffs)))

    def padded(self, truncation: int) -> 'FunctionCoeffs':
        """Zero-extend to `truncation` coefficients."""
        if truncation < self.truncation:
            raise DomainError(f"Cannot pad {self.truncation} coefficients down to {truncation}")
        out = np.zeros(truncation)
        out[: self.truncation] = self.coeffs
        return FunctionCoeffs(out)

    def __add__(self, other: 'FunctionCoeffs') -> 'FunctionCoeffs':
        size = max(self.truncation, other.truncation)
        return FunctionCoeffs(self.padded(size).coeffs + other.padded(size).coeffs)
