"""
Frequentist coverage predicted from the population covariances.
"""
import logging
import math

import numpy as np
from scipy import integrate, stats

from ...domain.errors import DomainError
from ...domain.value_objects.function_coeffs import FunctionCoeffs
from .model import SpectralModel

logger = logging.getLogger(__name__)

INFLATION_SQRT = "sqrt"
INFLATION_LINEAR = "linear"


def check_level(beta: float) -> None:
    if not 0.0 < beta < 1.0:
        raise DomainError(f"credible level must lie in (0, 1), got {beta}")


def two_sided_quantile(beta: float) -> float:
    """z_{(1+β)/2}, the two-sided standard normal quantile."""
    check_level(beta)
    return float(stats.norm.ppf((1.0 + beta) / 2.0))


def c_ir_limit(alpha: float) -> float:
    """lim_{h→0} C_IR = 2α/(2α − 1)."""
    if not alpha > 0.5:
        raise DomainError(f"alpha must exceed 1/2, got {alpha}")
    return 2.0 * alpha / (2.0 * alpha - 1.0)


def c_ir_limit_quadrature(alpha: float) -> float:
    """∫ dt/(1 + t^m) over ∫ dt/(1 + t^m)², m = 2α, by numerical quadrature."""
    if not alpha > 0.5:
        raise DomainError(f"alpha must exceed 1/2, got {alpha}")
    m = 2.0 * alpha
    first, _ = integrate.quad(lambda t: 1.0 / (1.0 + t ** m), 0.0, np.inf, limit=200)
    second, _ = integrate.quad(lambda t: 1.0 / (1.0 + t ** m) ** 2, 0.0, np.inf, limit=200)
    return first / second


def asymptotic_pointwise_coverage(alpha: float, beta: float, inflation: str = INFLATION_SQRT) -> float:
    """Limit coverage 2Φ(√C·z) − 1 of the level-β interval under under-smoothing.

    `inflation="linear"` gives the variant 2Φ(C·z) − 1 with the ratio itself.
    """
    z = two_sided_quantile(beta)
    ratio = c_ir_limit(alpha)
    if inflation == INFLATION_SQRT:
        scale = math.sqrt(ratio)
    elif inflation == INFLATION_LINEAR:
        scale = ratio
    else:
        raise DomainError(f"inflation must be {INFLATION_SQRT} or {INFLATION_LINEAR}, got {inflation}")
    return float(2.0 * stats.norm.cdf(scale * z) - 1.0)


def standardized_bias(model: SpectralModel, x, f: FunctionCoeffs, n: int) -> np.ndarray:
    """b_n(x) = Ĉ_n(x, x)^(−1/2) · √(nh) · (P_λ f)(x)."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    variance = np.full(x.shape, model.c_hat(0.0, 0.0))
    return np.sqrt(n * model.h) * model.bias_at(f, x) / np.sqrt(variance)


def coverage_prediction(model: SpectralModel, x, f: FunctionCoeffs, n: int, beta: float):
    """Φ(u_n + b_n) − Φ(−u_n + b_n) with the inflated quantile u_n = √(Ĉ^B/Ĉ)·z.

    Ĉ^B and Ĉ are stationary, so u_n does not depend on x. Scalar x gives a float.
    """
    if n < 1:
        raise DomainError(f"sample size must be positive, got {n}")
    scalar = np.ndim(x) == 0
    u = math.sqrt(model.c_hat_B(0.0, 0.0) / model.c_hat(0.0, 0.0)) * two_sided_quantile(beta)
    b = standardized_bias(model, x, f, n)
    values = stats.norm.cdf(u + b) - stats.norm.cdf(-u + b)
    logger.debug(f"Coverage prediction for n={n}, beta={beta}: u_n={u:.4f}, max |b_n|={np.max(np.abs(b)):.4g}")
    return float(values[0]) if scalar else values
