"""
CoverageReport entity aggregates a replicated coverage experiment.
"""
from dataclasses import dataclass, field
from typing import Any, Dict, List

import numpy as np


def standard_error(p: float, replicates: int) -> float:
    """Monte-Carlo standard error √(p(1−p)/R)."""
    return float(np.sqrt(p * (1.0 - p) / replicates))


@dataclass
class CoverageReport:
    """Simultaneous and pointwise coverage fractions with theory predictions."""
    nu: float
    n: int
    replicates: int
    levels: List[float]
    grid: np.ndarray
    simultaneous: Dict[float, float]  # level -> fraction of replicates covered
    pointwise: Dict[float, np.ndarray]  # level -> per-grid-point fraction
    mean_radius: Dict[float, float]  # level -> average band radius
    mean_half_length: Dict[float, float]  # level -> average pointwise half-length
    narrow_band_fraction: Dict[float, float]  # level -> fraction of replicates with r_n ≤ min l_n
    lambda_: float
    theory: Dict[str, Any] = field(default_factory=dict)
    runtime: Dict[str, Any] = field(default_factory=dict)  # run_info.json only, never the reproducible files

    def simultaneous_se(self, level: float) -> float:
        return standard_error(self.simultaneous[level], self.replicates)

    def pointwise_se(self, level: float) -> np.ndarray:
        p = self.pointwise[level]
        return np.sqrt(p * (1.0 - p) / self.replicates)

    def to_dict(self) -> Dict[str, Any]:
        """JSON-ready view; keys are level strings formatted with repr."""
        def keyed(values: Dict[float, Any]) -> Dict[str, Any]:
            return {repr(float(level)): value for level, value in values.items()}

        return {
            "nu": self.nu,
            "n": self.n,
            "replicates": self.replicates,
            "lambda": self.lambda_,
            "levels": [float(level) for level in self.levels],
            "simultaneous": keyed(self.simultaneous),
            "simultaneous_se": keyed({level: self.simultaneous_se(level) for level in self.levels}),
            "mean_radius": keyed(self.mean_radius),
            "mean_half_length": keyed(self.mean_half_length),
            "narrow_band_fraction": keyed(self.narrow_band_fraction),
            "pointwise_min": keyed({level: float(np.min(p)) for level, p in self.pointwise.items()}),
            "pointwise_mean": keyed({level: float(np.mean(p)) for level, p in self.pointwise.items()}),
            "theory": self.theory,
        }
