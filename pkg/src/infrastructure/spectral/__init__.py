"""Equivalent-kernel quantities, coverage theory and rate quantities."""
from .model import MAX_TRUNCATION, SpectralModel, default_truncation, pairwise_differences
from .rates import bandwidth_for_class, class_norm, gamma_n, rates
from .theory import (
    asymptotic_pointwise_coverage,
    c_ir_limit,
    c_ir_limit_quadrature,
    coverage_prediction,
    standardized_bias,
    two_sided_quantile,
)

__all__ = [
    'MAX_TRUNCATION',
    'SpectralModel',
    'asymptotic_pointwise_coverage',
    'bandwidth_for_class',
    'c_ir_limit',
    'c_ir_limit_quadrature',
    'class_norm',
    'coverage_prediction',
    'default_truncation',
    'gamma_n',
    'pairwise_differences',
    'rates',
    'standardized_bias',
    'two_sided_quantile',
]
