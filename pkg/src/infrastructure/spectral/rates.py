"""
Smoothness-class norms, class bandwidths and the rate quantities γ_n, δ_n.
"""
import math

from ...domain.errors import DomainError
from ...domain.value_objects.function_coeffs import FunctionCoeffs, SmoothnessClass
from ...domain.value_objects.rates_bundle import RatesBundle
from .model import SpectralModel


def class_norm(f: FunctionCoeffs, alpha: float, smoothness_class: SmoothnessClass) -> float:
    if not alpha > 0:
        raise DomainError(f"alpha must be positive, got {alpha}")
    if smoothness_class is SmoothnessClass.SOBOLEV:
        return f.sobolev_norm(alpha)
    return f.holder_norm(alpha)


def bandwidth_for_class(n: int, alpha: float, radius: float, sigma: float,
                        smoothness_class: SmoothnessClass) -> float:
    """Minimax bandwidth h = (B²n/(σ² log n))^(−1/(2α)) for Sobolev, ^(−1/(2α+1)) for Hölder."""
    if n < 2:
        raise DomainError(f"bandwidth rule needs n >= 2, got {n}")
    if not radius > 0 or not sigma > 0:
        raise DomainError("class radius and noise level must be positive")
    base = radius ** 2 * n / (sigma ** 2 * math.log(n))
    if smoothness_class is SmoothnessClass.SOBOLEV:
        return base ** (-1.0 / (2.0 * alpha))
    return base ** (-1.0 / (2.0 * alpha + 1.0))


def gamma_n(n: int, alpha: float, h: float) -> float:
    log_n = math.log(n)
    factor = max(1.0, n ** (-1.0 + 1.0 / (2.0 * alpha)) * h ** (-1.0 / (2.0 * alpha)) * math.sqrt(log_n))
    return factor * math.sqrt(log_n / (n * h))


def rates(n: int, model: SpectralModel, f: FunctionCoeffs) -> RatesBundle:
    """γ_n, δ_n = γ_n (‖P_λ f‖_∞ + σ √(log n/(nh))) and the bias bound, constants set to 1."""
    if n < 2:
        raise DomainError(f"rates need n >= 2, got {n}")
    gamma = gamma_n(n, model.alpha, model.h)
    bias = model.bias_supnorm_bound(f)
    sigma = math.sqrt(model.sigma2)
    delta = gamma * (bias + sigma * math.sqrt(math.log(n) / (n * model.h)))
    return RatesBundle(gamma_n=gamma, delta_n=delta, bias_supnorm=bias)
