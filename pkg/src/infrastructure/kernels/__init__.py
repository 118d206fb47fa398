"""Kernel evaluation: Matérn, the Fourier eigenbasis and Gram matrices."""
from .fourier import (
    basis_matrix,
    expand,
    fourier_basis,
    paired_eigenvalues,
    weighted_basis_diagonal,
    weighted_basis_sum,
)
from .gram import (
    eigenvalue_constant,
    equivalent_bandwidth,
    gram,
    kernel_diagonal,
    kernel_eval,
    kernel_matrix,
    spectral_kernel_eval,
)
from .matern import MATERN_NU_RANGE, bessel_form, matern_correlation, matern_eigenvalue_constant, matern_eval

__all__ = [
    'MATERN_NU_RANGE',
    'basis_matrix',
    'bessel_form',
    'eigenvalue_constant',
    'equivalent_bandwidth',
    'expand',
    'fourier_basis',
    'gram',
    'kernel_diagonal',
    'kernel_eval',
    'kernel_matrix',
    'matern_correlation',
    'matern_eigenvalue_constant',
    'matern_eval',
    'paired_eigenvalues',
    'spectral_kernel_eval',
    'weighted_basis_diagonal',
    'weighted_basis_sum',
]
