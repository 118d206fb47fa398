"""Pointwise intervals, simultaneous bands and sup-law comparisons."""
from .bands import (
    band_contains,
    band_coverage_limit,
    coverage_of_sup_quantile,
    credible_band,
    population_band_quantile,
    simultaneous_radii,
    simultaneous_radius,
    sup_deviations,
    sup_samples,
)
from .distance import kolmogorov_distance
from .intervals import pointwise_covered, pointwise_half_lengths, pointwise_interval
from .quantiles import empirical_quantile, normal_quantile

__all__ = [
    'band_contains',
    'band_coverage_limit',
    'coverage_of_sup_quantile',
    'credible_band',
    'empirical_quantile',
    'kolmogorov_distance',
    'normal_quantile',
    'pointwise_covered',
    'pointwise_half_lengths',
    'pointwise_interval',
    'population_band_quantile',
    'simultaneous_radii',
    'simultaneous_radius',
    'sup_deviations',
    'sup_samples',
]
