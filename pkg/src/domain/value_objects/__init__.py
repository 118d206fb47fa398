"""
Value objects for the domain layer.
Value objects are immutable objects representing concepts with no identity.
"""
from .function_coeffs import FunctionCoeffs, SmoothnessClass
from .gram_matrix import GramMatrix
from .kernel_spec import KernelKind, KernelSpec
from .pointwise_interval import PointwiseInterval
from .rates_bundle import RatesBundle

__all__ = [
    'FunctionCoeffs',
    'GramMatrix',
    'KernelKind',
    'KernelSpec',
    'PointwiseInterval',
    'RatesBundle',
    'SmoothnessClass',
]
