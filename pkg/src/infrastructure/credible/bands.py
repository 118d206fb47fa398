"""
Simultaneous credible bands CB_n(β) = {f : ‖f − f̂_n‖_∞ ≤ r_n(β)} on a grid, and
the population band coverage P[‖Ŵ‖_∞ ≤ q^B_n(β)] with W^B ~ GP(0, Ĉ^B_n),
Ŵ ~ GP(0, Ĉ_n).
"""
import logging
import math
from typing import Sequence, Union

import numpy as np

from ...domain.entities.credible_band import CredibleBand
from ...domain.entities.grid_posterior import GridPosterior
from ...domain.errors import DomainError
from ..posterior.sampling import JITTER_START, jittered_cholesky, sample_gaussian, sample_posterior
from ..spectral.model import SpectralModel
from .quantiles import empirical_quantile

logger = logging.getLogger(__name__)

MIN_BAND_DRAWS = 100
MIN_LIMIT_DRAWS = 1000

Seed = Union[int, np.random.Generator]


def _generator(seed: Seed) -> np.random.Generator:
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def sup_deviations(draws: np.ndarray, center: np.ndarray) -> np.ndarray:
    """max_i |draw_i − center_i| for every row."""
    return np.max(np.abs(np.asarray(draws) - np.asarray(center)[None, :]), axis=1)


def simultaneous_radii(gp: GridPosterior, levels: Sequence[float], draws: int,
                       seed: Seed) -> np.ndarray:
    """r_n(β) for several levels from one shared set of posterior draws."""
    if draws < MIN_BAND_DRAWS:
        raise DomainError(f"simultaneous bands need at least {MIN_BAND_DRAWS} draws, got {draws}")
    deviations = sup_deviations(sample_posterior(gp, draws, _generator(seed)), gp.mean)
    return np.array([empirical_quantile(deviations, beta) for beta in levels])


def simultaneous_radius(gp: GridPosterior, beta: float, draws: int, seed: Seed) -> float:
    """Empirical β-quantile of ‖f − f̂_n‖_∞ over posterior draws on the grid."""
    return float(simultaneous_radii(gp, [beta], draws, seed)[0])


def credible_band(gp: GridPosterior, beta: float, draws: int, seed: Seed) -> CredibleBand:
    radius = simultaneous_radius(gp, beta, draws, seed)
    return CredibleBand(grid=gp.grid, center=gp.mean, radius=radius, level=beta, draws=draws)


def band_contains(band: CredibleBand, f_values) -> bool:
    """Closed-band membership: max_i |f_i − center_i| ≤ radius."""
    f_values = np.asarray(f_values, dtype=float).ravel()
    if f_values.size != np.size(band.center):
        raise DomainError(f"expected {np.size(band.center)} values, got {f_values.size}")
    return bool(np.max(np.abs(f_values - band.center)) <= band.radius)


def sup_samples(cov: np.ndarray, draws: int, rng: np.random.Generator) -> np.ndarray:
    """Samples of sup_i |W_i| for W ~ N(0, cov)."""
    cov = 0.5 * (cov + cov.T)
    jitter = JITTER_START * max(float(np.max(np.diag(cov))), 0.0)
    cov = cov + jitter * np.eye(cov.shape[0])
    factor, _ = jittered_cholesky(cov, jitter)
    return np.max(np.abs(sample_gaussian(np.zeros(cov.shape[0]), factor, draws, rng)), axis=1)


def coverage_of_sup_quantile(cov_reference: np.ndarray, cov_target: np.ndarray, beta: float,
                             draws: int, seed: Seed) -> float:
    """Fraction of sup|target| ≤ the β-quantile of sup|reference|."""
    rng = _generator(seed)
    quantile = empirical_quantile(sup_samples(cov_reference, draws, rng), beta)
    return float(np.mean(sup_samples(cov_target, draws, rng) <= quantile))


def population_band_quantile(model: SpectralModel, grid, beta: float, draws: int, seed: Seed) -> float:
    """q^B_n(β), the β-quantile of ‖W^B‖_∞ on the grid."""
    grid = np.asarray(grid, dtype=float).ravel()
    return empirical_quantile(sup_samples(model.c_hat_B_matrix(grid), draws, _generator(seed)), beta)


def band_coverage_limit(model: SpectralModel, n: int, grid, beta: float, draws: int, seed: Seed) -> float:
    """P[‖Ŵ‖_∞ ≤ q^B_n(β)] by Monte Carlo on the grid."""
    if draws < MIN_LIMIT_DRAWS:
        raise DomainError(f"band coverage limit needs at least {MIN_LIMIT_DRAWS} draws, got {draws}")
    if not 0.0 < beta < 1.0:
        raise DomainError(f"credible level must lie in (0, 1), got {beta}")
    grid = np.asarray(grid, dtype=float).ravel()
    rng = _generator(seed)
    reference = sup_samples(model.c_hat_B_matrix(grid), draws, rng)
    quantile = empirical_quantile(reference, beta)
    coverage = float(np.mean(sup_samples(model.c_hat_matrix(grid), draws, rng) <= quantile))
    logger.debug(f"Band limit for {model.describe()}: q={quantile:.4g}, "
                 f"implied radius {quantile / math.sqrt(n * model.h):.4g}, coverage {coverage:.4f}")
    return coverage
