"""
Sup-norm convergence rate of the posterior mean over a grid of sample sizes.
"""
import logging
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence

import numpy as np
from scipy import stats

from ...domain.entities.dataset import Dataset
from ...domain.errors import DomainError
from ...domain.value_objects.function_coeffs import FunctionCoeffs, SmoothnessClass
from ...domain.value_objects.kernel_spec import KernelSpec
from ..kernels.fourier import expand
from ..posterior.gp import fit
from ..spectral.model import SpectralModel
from ..spectral.rates import bandwidth_for_class, rates
from .harness import posterior_noise_variance
from .seeding import Stream, derived_rng

logger = logging.getLogger(__name__)

MIN_SAMPLE_SIZES = 4
CLASS_TRUTH_TRUNCATION = 200


@dataclass(frozen=True)
class RateRow:
    n: int
    h: float
    lambda_: float
    median_error: float
    gamma_n: float
    delta_n: float
    bias_supnorm: float


@dataclass(frozen=True)
class RateResult:
    alpha: float
    smoothness_class: str
    rows: List[RateRow]
    slope: float
    intercept: float
    slope_stderr: float
    slope_ci: tuple  # 95% Student-t interval
    target_slope: float  # −α/(2α+1)


def class_truth(alpha: float, radius: float, smoothness_class: SmoothnessClass) -> FunctionCoeffs:
    if smoothness_class is SmoothnessClass.SOBOLEV:
        return FunctionCoeffs.sobolev_ball(alpha, radius, CLASS_TRUTH_TRUNCATION)
    return FunctionCoeffs.holder_ball(alpha, radius, CLASS_TRUTH_TRUNCATION)


def fit_slope(ns: Sequence[int], errors: Sequence[float]):
    """Least-squares slope of log error on log n with its 95% interval."""
    result = stats.linregress(np.log(ns), np.log(errors))
    t = stats.t.ppf(0.975, len(ns) - 2)
    ci = (result.slope - t * result.stderr, result.slope + t * result.stderr)
    return result.slope, result.intercept, result.stderr, ci


def rate_experiment(ns: Sequence[int], alpha: float, smoothness_class: SmoothnessClass, seeds: int,
                    sigma: float = 0.1, radius: float = 1.0, base_seed: int = 0, grid_size: int = 200,
                    bandwidth_rule: Optional[Callable[[int], float]] = None) -> RateResult:
    """Median grid-sup error of f̂_n against a class truth for each n, and the log-log slope.

    The prior is Matérn with ν = α − ½ and λ = h^(2α) at the class bandwidth, unless
    `bandwidth_rule` maps n to h directly.
    """
    ns = sorted(set(int(n) for n in ns))
    if len(ns) < MIN_SAMPLE_SIZES:
        raise DomainError(f"rate experiment needs at least {MIN_SAMPLE_SIZES} distinct sample sizes")
    if seeds < 1:
        raise DomainError("rate experiment needs at least one seed per sample size")
    if bandwidth_rule is None and not sigma > 0:
        raise DomainError("class bandwidth needs a positive noise level; pass a bandwidth rule")
    kernel = KernelSpec.matern(alpha - 0.5)
    truth = class_truth(alpha, radius, smoothness_class)
    grid = np.linspace(0.0, 1.0, grid_size)
    truth_on_grid = expand(truth, grid)
    sigma2 = posterior_noise_variance(sigma)
    rows = []
    for n in ns:
        h = bandwidth_rule(n) if bandwidth_rule else bandwidth_for_class(n, alpha, radius, sigma, smoothness_class)
        lambda_ = h ** (2.0 * alpha)
        errors = []
        for seed in range(seeds):
            rng = derived_rng(base_seed, Stream.DATA, n * 1_000_003 + seed)
            X = rng.uniform(0.0, 1.0, size=n)
            Y = expand(truth, X) + sigma * rng.standard_normal(n)
            post = fit(Dataset(X, Y), kernel, lambda_, sigma2)
            errors.append(float(np.max(np.abs(post.mean_at(grid) - truth_on_grid))))
        bundle = rates(n, SpectralModel(alpha=alpha, h=min(h, 1.0), sigma2=sigma2), truth)
        row = RateRow(n=n, h=h, lambda_=lambda_, median_error=float(np.median(errors)),
                      gamma_n=bundle.gamma_n, delta_n=bundle.delta_n, bias_supnorm=bundle.bias_supnorm)
        logger.info(f"Rate n={n}: h={h:.4g}, median sup error={row.median_error:.4g}")
        rows.append(row)
    slope, intercept, stderr, ci = fit_slope([r.n for r in rows], [r.median_error for r in rows])
    target = -alpha / (2.0 * alpha + 1.0)
    logger.info(f"Fitted slope {slope:.4f} (95% CI {ci[0]:.4f}..{ci[1]:.4f}), target {target:.4f}")
    return RateResult(alpha=alpha, smoothness_class=str(smoothness_class), rows=rows, slope=slope,
                      intercept=intercept, slope_stderr=stderr, slope_ci=ci, target_slope=target)


def noiseless_bandwidth(alpha: float) -> Callable[[int], float]:
    """h(n) = n^(−1/(2α+1)), usable when σ = 0."""
    return lambda n: n ** (-1.0 / (2.0 * alpha + 1.0))
