"""GP posterior fitting and grid sampling."""
from .gp import PosteriorGP, default_lambda, fit, scaled_lambda
from .sampling import jittered_cholesky, sample_gaussian, sample_posterior

__all__ = [
    'PosteriorGP',
    'default_lambda',
    'fit',
    'jittered_cholesky',
    'sample_gaussian',
    'sample_posterior',
    'scaled_lambda',
]
