"""
Kernel evaluation dispatch and Gram matrices.
"""
import logging

import numpy as np

from ...domain.errors import DomainError
from ...domain.value_objects.gram_matrix import GramMatrix
from ...domain.value_objects.kernel_spec import KernelKind, KernelSpec
from .fourier import paired_eigenvalues, weighted_basis_diagonal, weighted_basis_sum
from .matern import matern_correlation, matern_eigenvalue_constant

logger = logging.getLogger(__name__)


def spectral_kernel_eval(spec: KernelSpec, x: float, y: float) -> float:
    """Σ_{j ≤ J} μ_j ψ_j(x) ψ_j(y) with paired eigenvalues."""
    if spec.kind is not KernelKind.SPECTRAL:
        raise DomainError(f"Expected a spectral kernel, got {spec.describe()}")
    return float(kernel_matrix([x], [y], spec)[0, 0])


def kernel_matrix(a, b, spec: KernelSpec) -> np.ndarray:
    """Cross-kernel matrix K(a, b) of shape (len(a), len(b))."""
    a = np.asarray(a, dtype=float).ravel()
    b = np.asarray(b, dtype=float).ravel()
    if spec.kind is KernelKind.MATERN:
        return matern_correlation(a[:, None] - b[None, :], spec.matern_smoothness)
    mu = paired_eigenvalues(spec.spectral_alpha, spec.spectral_truncation)
    return weighted_basis_sum(a, b, mu, spec.spectral_period)


def kernel_eval(spec: KernelSpec, x: float, y: float) -> float:
    return float(kernel_matrix([x], [y], spec)[0, 0])


def kernel_diagonal(points, spec: KernelSpec) -> np.ndarray:
    """K(x, x) for every point."""
    points = np.asarray(points, dtype=float).ravel()
    if spec.kind is KernelKind.MATERN:
        return np.ones(points.size)
    mu = paired_eigenvalues(spec.spectral_alpha, spec.spectral_truncation)
    return weighted_basis_diagonal(points, mu, spec.spectral_period)


def gram(points, spec: KernelSpec) -> GramMatrix:
    """K(points, points), symmetrized to machine precision."""
    points = np.asarray(points, dtype=float).ravel()
    if np.any(points < 0.0) or np.any(points > 1.0):
        raise DomainError("Gram points must lie in [0, 1]")
    entries = kernel_matrix(points, points, spec)
    entries = 0.5 * (entries + entries.T)
    logger.debug(f"Built {points.size}x{points.size} Gram matrix for {spec.describe()}")
    return GramMatrix(entries=entries, points=points)


def eigenvalue_constant(spec: KernelSpec) -> float:
    """κ in the single-index eigenvalue law μ_j ≈ κ j^(−2α).

    The paired law μ_(2k−1) = μ_(2k) = k^(−2α) reads μ_j ≈ (j/2)^(−2α), so κ = 2^(2α).
    """
    if spec.kind is KernelKind.MATERN:
        return matern_eigenvalue_constant(spec.matern_smoothness)
    return 2.0 ** (2.0 * spec.spectral_alpha)


def equivalent_bandwidth(spec: KernelSpec, lambda_: float) -> float:
    """h of the unit-constant paired spectral model whose weights match the kernel's at λ.

    Solves 1/(1 + λ/(κ(2k)^(−2α))) = 1/(1 + (hk)^(2α)); equals λ^(1/(2α)) for spectral kernels.
    """
    if lambda_ <= 0.0:
        raise DomainError(f"lambda must be positive, got {lambda_}")
    alpha = spec.smoothness_index
    return 2.0 * (lambda_ / eigenvalue_constant(spec)) ** (1.0 / (2.0 * alpha))
