"""
Pointwise credible intervals f̂_n(x) ± z_{(1+β)/2} √C̃^B_n(x, x).
"""
import math

import numpy as np

from ...domain.entities.grid_posterior import GridPosterior
from ...domain.value_objects.pointwise_interval import PointwiseInterval
from ..posterior.gp import PosteriorGP
from .quantiles import normal_quantile


def pointwise_interval(post: PosteriorGP, x: float, beta: float) -> PointwiseInterval:
    half_length = normal_quantile((1.0 + beta) / 2.0) * math.sqrt(max(post.cov_at(x, x), 0.0))
    return PointwiseInterval(center=post.mean_at(x), half_length=half_length, level=beta)


def pointwise_half_lengths(gp: GridPosterior, beta: float) -> np.ndarray:
    """l_n(x; β) at every grid point."""
    return normal_quantile((1.0 + beta) / 2.0) * np.sqrt(gp.variance)


def pointwise_covered(gp: GridPosterior, beta: float, truth: np.ndarray) -> np.ndarray:
    """Boolean mask: truth[i] inside the closed level-β interval at grid[i]."""
    return np.abs(np.asarray(truth) - gp.mean) <= pointwise_half_lengths(gp, beta)
