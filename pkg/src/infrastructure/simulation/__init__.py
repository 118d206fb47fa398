"""Data generation, replicated coverage runs, rate and trend experiments."""
from .diagnostics import SupLawRow, TrendRow, equivalence_experiment, strictly_decreasing, sup_law_experiment
from .harness import CoverageSimulation, resolve_lambda, resolve_workers, run_replicates
from .rates_experiment import RateResult, RateRow, fit_slope, noiseless_bandwidth, rate_experiment
from .seeding import Stream, derived_rng
from .truth import TRUTH_TERMS, generate_data, true_function, truncation_error_bound, truth_coefficients

__all__ = [
    'CoverageSimulation',
    'RateResult',
    'RateRow',
    'Stream',
    'SupLawRow',
    'TRUTH_TERMS',
    'TrendRow',
    'derived_rng',
    'equivalence_experiment',
    'fit_slope',
    'generate_data',
    'noiseless_bandwidth',
    'rate_experiment',
    'resolve_lambda',
    'resolve_workers',
    'run_replicates',
    'strictly_decreasing',
    'sup_law_experiment',
    'true_function',
    'truncation_error_bound',
    'truth_coefficients',
]
