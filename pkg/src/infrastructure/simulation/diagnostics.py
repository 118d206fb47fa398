"""
Finite-n checks of the equivalent-kernel approximation σ⁻²n·C̃^B ≈ K̃ and of the
closeness of the sup laws of √(nh)(f − f̂_n) and of W^B ~ GP(0, Ĉ^B_n).

Both use the period-1 spectral kernel, for which the basis is orthonormal under
the uniform design.
"""
import logging
import math
from dataclasses import dataclass
from typing import Dict, List, Sequence

import numpy as np

from ...domain.entities.dataset import Dataset
from ...domain.value_objects.function_coeffs import SmoothnessClass
from ...domain.value_objects.kernel_spec import KernelSpec
from ..credible.bands import sup_samples, simultaneous_radius, sup_deviations
from ..credible.distance import kolmogorov_distance
from ..credible.quantiles import empirical_quantile
from ..posterior.gp import fit
from ..posterior.sampling import sample_posterior
from ..spectral.model import SpectralModel
from ..spectral.rates import bandwidth_for_class
from .seeding import Stream, derived_rng

logger = logging.getLogger(__name__)

DIAGNOSTIC_PERIOD = 1.0
DIAGNOSTIC_TRUNCATION = 2000
SUP_LAW_DRAWS = 10_000


@dataclass(frozen=True)
class TrendRow:
    n: int
    h: float
    values: List[float]  # one per seed

    @property
    def median(self) -> float:
        return float(np.median(self.values))


def strictly_decreasing(rows: Sequence[TrendRow]) -> bool:
    medians = [row.median for row in rows]
    return all(later < earlier for earlier, later in zip(medians, medians[1:]))


def _setup(n: int, alpha: float, sigma: float):
    h = min(bandwidth_for_class(n, alpha, 1.0, sigma, SmoothnessClass.HOLDER), 1.0)
    model = SpectralModel(alpha=alpha, h=h, sigma2=sigma ** 2, truncation=DIAGNOSTIC_TRUNCATION,
                          period=DIAGNOSTIC_PERIOD)
    kernel = KernelSpec.spectral(alpha, model.truncation, DIAGNOSTIC_PERIOD)
    return h, model, kernel


def _design(base_seed: int, n: int, seed: int, sigma: float) -> Dataset:
    rng = derived_rng(base_seed, Stream.DATA, n * 1_000_003 + seed)
    X = rng.uniform(0.0, 1.0, size=n)
    return Dataset(X, sigma * rng.standard_normal(n))


def equivalence_experiment(ns: Sequence[int], alpha: float = 2.0, seeds: int = 10, grid_size: int = 50,
                           sigma: float = 0.1, base_seed: int = 0) -> List[TrendRow]:
    """sup_grid |σ⁻²n·C̃^B − K̃| / sup_grid K̃ per n and seed."""
    grid = np.linspace(0.0, 1.0, grid_size)
    rows = []
    for n in ns:
        h, model, kernel = _setup(n, alpha, sigma)
        target = model.equivalent_kernel_matrix(grid)
        scale = float(np.max(np.abs(target)))
        values = []
        for seed in range(seeds):
            post = fit(_design(base_seed, n, seed, sigma), kernel, model.lambda_, sigma ** 2)
            scaled = post.cov_matrix(grid) * n / sigma ** 2
            values.append(float(np.max(np.abs(scaled - target))) / scale)
        row = TrendRow(n=n, h=h, values=values)
        logger.info(f"Equivalent-kernel error n={n}, h={h:.4g}: median {row.median:.4g}")
        rows.append(row)
    return rows


@dataclass(frozen=True)
class SupLawRow(TrendRow):
    population_quantile: float = 0.0  # q^B_n(β)
    scaled_radius: float = 0.0  # √(nh)·r_n(β), median over seeds


def sup_law_experiment(ns: Sequence[int], alpha: float = 2.0, seeds: int = 5, grid_size: int = 50,
                       draws: int = SUP_LAW_DRAWS, sigma: float = 0.1, level: float = 0.95,
                       base_seed: int = 0) -> List[SupLawRow]:
    """Kolmogorov distance between sup|√(nh)(f − f̂_n)| under the posterior and sup|W^B|."""
    grid = np.linspace(0.0, 1.0, grid_size)
    rows = []
    for n in ns:
        h, model, kernel = _setup(n, alpha, sigma)
        theory_rng = derived_rng(base_seed, Stream.THEORY, n)
        reference = sup_samples(model.c_hat_B_matrix(grid), draws, theory_rng)
        quantile = empirical_quantile(reference, level)
        distances, radii = [], []
        for seed in range(seeds):
            post = fit(_design(base_seed, n, seed, sigma), kernel, model.lambda_, sigma ** 2)
            gp = post.grid_posterior(grid)
            rng = derived_rng(base_seed, Stream.POSTERIOR, n * 1_000_003 + seed)
            scaled = math.sqrt(n * h) * sup_deviations(sample_posterior(gp, draws, rng), gp.mean)
            distances.append(kolmogorov_distance(scaled, reference))
            radii.append(math.sqrt(n * h) * simultaneous_radius(gp, level, draws, rng))
        row = SupLawRow(n=n, h=h, values=distances, population_quantile=quantile,
                        scaled_radius=float(np.median(radii)))
        logger.info(f"Sup-law distance n={n}: median {row.median:.4g}, "
                    f"q_B={quantile:.4g}, sqrt(nh) r_n={row.scaled_radius:.4g}")
        rows.append(row)
    return rows


def trend_summary(rows: Sequence[TrendRow]) -> Dict[str, object]:
    return {"medians": {str(row.n): row.median for row in rows}, "strictly_decreasing": strictly_decreasing(rows)}
