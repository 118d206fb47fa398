"""
Multivariate-normal sampling of grid posteriors.
"""
import logging
from typing import Tuple, Union

import numpy as np
from scipy import linalg

from ...domain.entities.grid_posterior import GridPosterior
from ...domain.errors import DomainError, NumericalError

logger = logging.getLogger(__name__)

JITTER_START = 1e-10
JITTER_GROWTH = 10.0
JITTER_ESCALATIONS = 4


def jittered_cholesky(cov: np.ndarray, applied: float = 0.0) -> Tuple[np.ndarray, float]:
    """Lower Cholesky factor of cov, escalating the diagonal jitter ×10 from 10⁻¹⁰
    up to 10⁻⁶ times the largest diagonal entry.

    `applied` is jitter already present in cov. Returns (factor, extra jitter added).
    """
    scale = max(float(np.max(np.diag(cov))), 0.0)
    level = JITTER_START
    extra = 0.0
    for attempt in range(JITTER_ESCALATIONS + 1):
        try:
            return linalg.cholesky(cov + extra * np.eye(cov.shape[0]), lower=True), extra
        except linalg.LinAlgError:
            if attempt == JITTER_ESCALATIONS:
                break
            level *= JITTER_GROWTH
            extra = max(level * scale - applied, 0.0)
            logger.warning(f"Cholesky failed (attempt {attempt + 1}); raising jitter to {level:.0e} of max diagonal")
    raise NumericalError(f"covariance not factorizable with jitter {level:.0e} of max diagonal")


def sample_gaussian(mean: np.ndarray, factor: np.ndarray, draws: int,
                    rng: np.random.Generator) -> np.ndarray:
    """Rows mean + L ξ, ξ ~ N(0, I)."""
    xi = rng.standard_normal((draws, mean.size))
    return mean[None, :] + xi @ factor.T


def sample_posterior(gp: GridPosterior, draws: int,
                     seed: Union[int, np.random.Generator]) -> np.ndarray:
    """draws × m matrix of posterior draws on the grid, deterministic in (seed, draws, grid)."""
    if draws < 1:
        raise DomainError(f"draws must be at least 1, got {draws}")
    if not np.any(gp.raw_cov()):
        return np.tile(gp.mean, (draws, 1))
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    factor, extra = jittered_cholesky(gp.cov, gp.jitter)
    if extra > 0:
        logger.debug(f"Grid posterior sampled with extra jitter {extra:.3g}")
    return sample_gaussian(gp.mean, factor, draws, rng)
