"""
Replicated coverage experiments: draw data around f*, fit the posterior, and
check whether f* lies in the pointwise intervals and in the simultaneous band.
"""
import logging
import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional

import numpy as np
from scipy import linalg

from ...domain.entities.coverage_report import CoverageReport
from ...domain.errors import DomainError, NumericalError, ReplicateError
from ...domain.events.simulation_events import (
    ExperimentCompleted,
    ReplicateCompleted,
    ReplicateFailed,
    SimulationEvent,
)
from ...domain.settings import SimConfig
from ...domain.value_objects.function_coeffs import SmoothnessClass
from ...domain.value_objects.kernel_spec import KernelKind
from ..credible.bands import band_coverage_limit, population_band_quantile, simultaneous_radii
from ..credible.intervals import pointwise_half_lengths
from ..kernels.gram import equivalent_bandwidth
from ..posterior.gp import default_lambda, fit, scaled_lambda
from ..spectral.model import SpectralModel
from ..spectral.rates import bandwidth_for_class
from ..spectral.theory import (
    INFLATION_LINEAR,
    INFLATION_SQRT,
    asymptotic_pointwise_coverage,
    coverage_prediction,
)
from .seeding import Stream, derived_rng
from .truth import generate_data, true_function, truth_coefficients

logger = logging.getLogger(__name__)

# posterior noise variance when the data are noiseless
FALLBACK_NOISE_VARIANCE = 0.01
THEORY_TRUTH_TRUNCATION = 2000
THEORY_PERIOD = 1.0

EventListener = Callable[[SimulationEvent], None]


def resolve_workers(workers: int) -> int:
    """0 means one worker per available core."""
    return workers if workers > 0 else (os.cpu_count() or 1)


def posterior_noise_variance(sigma: float) -> float:
    return sigma ** 2 if sigma > 0 else FALLBACK_NOISE_VARIANCE


def resolve_lambda(config: SimConfig) -> float:
    """λ from the configured rule.

    scaled: s·κ·n^(−2α/(2α+1)) with κ the eigenvalue constant of the kernel; rate: n^(−2α/(2α+1));
    explicit: the configured value; class: h^(2α) at the class bandwidth.
    """
    alpha = config.kernel.smoothness_index
    if config.lambda_rule == "explicit":
        return config.lambda_value
    if config.lambda_rule == "class":
        sigma = config.sigma if config.sigma > 0 else math.sqrt(FALLBACK_NOISE_VARIANCE)
        h = bandwidth_for_class(config.n, alpha, config.class_radius, sigma,
                                SmoothnessClass.from_string(config.smoothness_class))
        return h ** (2.0 * alpha)
    if config.lambda_rule == "scaled":
        return scaled_lambda(config.n, config.kernel, config.lambda_scale)
    if config.lambda_rule == "rate":
        return default_lambda(config.n, alpha)
    raise DomainError(f"unknown lambda rule: {config.lambda_rule}")


@dataclass
class ReplicateOutcome:
    index: int
    simultaneous: Dict[float, bool]
    pointwise: Dict[float, np.ndarray]
    radius: Dict[float, float]
    half_length: Dict[float, float]  # mean over the grid
    narrow_band: Dict[float, bool]  # r_n ≤ min_x l_n(x)


class CoverageSimulation:
    """Runs the replicates of one SimConfig and assembles a CoverageReport."""

    def __init__(self, config: SimConfig, workers: int = 1, listener: Optional[EventListener] = None):
        self.config = config
        self.workers = resolve_workers(workers)
        self.listener = listener
        self.grid = np.linspace(0.0, 1.0, config.grid_size)
        self.truth = true_function(self.grid, config.truth_terms)
        self.lambda_ = resolve_lambda(config)
        self.sigma2 = posterior_noise_variance(config.sigma)

    def _emit(self, event: SimulationEvent) -> None:
        if self.listener is not None:
            self.listener(event)

    def run_replicate(self, index: int) -> ReplicateOutcome:
        config = self.config
        try:
            data = generate_data(config.n, config.sigma, derived_rng(config.base_seed, Stream.DATA, index),
                                 config.truth_terms)
            post = fit(data, config.kernel, self.lambda_, self.sigma2)
            gp = post.grid_posterior(self.grid)
            radii = simultaneous_radii(gp, config.levels, config.draws,
                                       derived_rng(config.base_seed, Stream.POSTERIOR, index))
        except (NumericalError, linalg.LinAlgError, FloatingPointError) as e:
            self._emit(ReplicateFailed(index, str(e), e))
            raise ReplicateError(index, str(e), e) from e
        sup_error = float(np.max(np.abs(self.truth - gp.mean)))
        outcome = ReplicateOutcome(index, {}, {}, {}, {}, {})
        for level, radius in zip(config.levels, radii):
            half = pointwise_half_lengths(gp, level)
            outcome.simultaneous[level] = sup_error <= radius
            outcome.pointwise[level] = np.abs(self.truth - gp.mean) <= half
            outcome.radius[level] = float(radius)
            outcome.half_length[level] = float(np.mean(half))
            outcome.narrow_band[level] = bool(radius <= np.min(half))
        logger.debug(f"Replicate {index + 1}/{config.replicates}: covered={outcome.simultaneous}")
        self._emit(ReplicateCompleted(index, config.replicates, dict(outcome.simultaneous)))
        return outcome

    def run(self) -> CoverageReport:
        config = self.config
        started = time.perf_counter()
        logger.info(f"Coverage run: {config.kernel.describe()}, n={config.n}, R={config.replicates}, "
                    f"lambda={self.lambda_:.4g}, workers={self.workers}")
        indices = range(config.replicates)
        if self.workers == 1:
            outcomes = [self.run_replicate(i) for i in indices]
        else:
            # map yields in index order, so the reduction is independent of scheduling
            with ThreadPoolExecutor(max_workers=self.workers) as executor:
                outcomes = list(executor.map(self.run_replicate, indices))
        report = self._aggregate(outcomes)
        if config.theory:
            report.theory = self.theory()
        elapsed = time.perf_counter() - started
        report.runtime = {"elapsed_seconds": elapsed, "workers": self.workers}
        label = f"{config.kernel.describe()} n={config.n}"
        logger.info(f"Finished {label} in {elapsed:.1f}s: simultaneous={report.simultaneous}")
        self._emit(ExperimentCompleted(label, elapsed))
        return report

    def _aggregate(self, outcomes: List[ReplicateOutcome]) -> CoverageReport:
        levels = list(self.config.levels)
        count = len(outcomes)

        def average(attribute: str, level: float) -> float:
            return float(np.mean([getattr(o, attribute)[level] for o in outcomes]))

        return CoverageReport(
            nu=self.config.kernel.matern_smoothness if self.config.kernel.kind is KernelKind.MATERN
            else self.config.kernel.spectral_alpha - 0.5,
            n=self.config.n,
            replicates=count,
            levels=levels,
            grid=self.grid,
            simultaneous={level: average("simultaneous", level) for level in levels},
            pointwise={level: np.mean([o.pointwise[level] for o in outcomes], axis=0) for level in levels},
            mean_radius={level: average("radius", level) for level in levels},
            mean_half_length={level: average("half_length", level) for level in levels},
            narrow_band_fraction={level: average("narrow_band", level) for level in levels},
            lambda_=self.lambda_,
        )

    def theory(self) -> Dict[str, object]:
        """Population predictions at α = smoothness index of the prior and the bandwidth matching λ."""
        config = self.config
        alpha = config.kernel.smoothness_index
        h = min(equivalent_bandwidth(config.kernel, self.lambda_), 1.0)
        model = SpectralModel(alpha=alpha, h=h, sigma2=self.sigma2, period=THEORY_PERIOD)
        truth = truth_coefficients(min(model.truncation, THEORY_TRUTH_TRUNCATION), THEORY_PERIOD,
                                   config.truth_terms)
        rng = derived_rng(config.base_seed, Stream.THEORY, 0)
        per_level = {}
        for level in config.levels:
            prediction = coverage_prediction(model, self.grid, truth, config.n, level)
            quantile = population_band_quantile(model, self.grid, level, config.theory_draws, rng)
            per_level[repr(float(level))] = {
                "asymptotic_pointwise": asymptotic_pointwise_coverage(alpha, level, INFLATION_SQRT),
                "asymptotic_pointwise_linear": asymptotic_pointwise_coverage(alpha, level, INFLATION_LINEAR),
                "predicted_pointwise_min": float(np.min(prediction)),
                "predicted_pointwise_mean": float(np.mean(prediction)),
                "band_coverage_limit": band_coverage_limit(model, config.n, self.grid, level,
                                                           config.theory_draws, rng),
                "population_band_quantile": quantile,
                "implied_radius": quantile / math.sqrt(config.n * h),
            }
        logger.info(f"Theory for alpha={alpha:g}, h={h:.4g}: C_IR={model.c_ir():.4f}")
        return {"alpha": alpha, "h": h, "c_ir": model.c_ir(), "truncation": model.truncation,
                "relative_tail": model.relative_tail(), "tail_corrected": model.corrects_tail,
                "levels": per_level}


def run_replicates(config: SimConfig, workers: int = 1,
                   listener: Optional[EventListener] = None) -> CoverageReport:
    return CoverageSimulation(config, workers, listener).run()
