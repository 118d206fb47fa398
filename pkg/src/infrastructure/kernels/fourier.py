"""
Fourier eigenbasis and the paired eigenvalue law of the spectral kernel.

With period p the basis is ψ_{2k−1}(x) = √2 sin(2πkx/p), ψ_{2k}(x) = √2 cos(2πkx/p).
The default p = 2 gives √2 sin(πkx), √2 cos(πkx).
"""
from typing import Iterator, Tuple

import numpy as np

from ...domain.errors import DomainError
from ...domain.value_objects.function_coeffs import FunctionCoeffs

DEFAULT_PERIOD = 2.0
BLOCK_SIZE = 2048


def basis_frequency(j: np.ndarray, period: float = DEFAULT_PERIOD) -> np.ndarray:
    """Angular frequency 2πk/p of ψ_j, k = ⌈j/2⌉."""
    k = (np.asarray(j) + 1) // 2
    return 2.0 * np.pi * k / period


def fourier_basis(j: int, x, period: float = DEFAULT_PERIOD):
    """ψ_j(x); accepts scalar or array x."""
    if j < 1:
        raise DomainError(f"Basis index must be at least 1, got {j}")
    omega = float(basis_frequency(j, period))
    x = np.asarray(x, dtype=float)
    values = np.sqrt(2.0) * (np.sin(omega * x) if j % 2 == 1 else np.cos(omega * x))
    return float(values) if values.ndim == 0 else values


def basis_matrix(x: np.ndarray, first: int, last: int, period: float = DEFAULT_PERIOD) -> np.ndarray:
    """Columns ψ_first … ψ_last evaluated at x, shape (len(x), last − first + 1)."""
    x = np.asarray(x, dtype=float).ravel()
    j = np.arange(first, last + 1)
    phase = np.outer(x, basis_frequency(j, period))
    odd = (j % 2 == 1)
    return np.sqrt(2.0) * np.where(odd[None, :], np.sin(phase), np.cos(phase))


def iter_basis_blocks(x: np.ndarray, truncation: int, period: float = DEFAULT_PERIOD,
                      block_size: int = BLOCK_SIZE) -> Iterator[Tuple[slice, np.ndarray]]:
    """Yield (column slice, basis block) pairs covering ψ_1 … ψ_truncation."""
    for start in range(0, truncation, block_size):
        stop = min(start + block_size, truncation)
        yield slice(start, stop), basis_matrix(x, start + 1, stop, period)


def paired_eigenvalues(alpha: float, truncation: int) -> np.ndarray:
    """μ_{2k−1} = μ_{2k} = k^(−2α) for j = 1 … truncation."""
    k = (np.arange(1, truncation + 1) + 1) // 2
    return k.astype(float) ** (-2.0 * alpha)


def weighted_basis_sum(x: np.ndarray, y: np.ndarray, weights: np.ndarray,
                       period: float = DEFAULT_PERIOD) -> np.ndarray:
    """Σ_j w_j ψ_j(x_a) ψ_j(y_b) as a (len(x), len(y)) matrix."""
    x = np.asarray(x, dtype=float).ravel()
    y = np.asarray(y, dtype=float).ravel()
    out = np.zeros((x.size, y.size))
    truncation = weights.size
    for columns, phi_x in iter_basis_blocks(x, truncation, period):
        phi_y = basis_matrix(y, columns.start + 1, columns.stop, period)
        out += (phi_x * weights[columns]) @ phi_y.T
    return out


def expand(coeffs: FunctionCoeffs, x, period: float = DEFAULT_PERIOD) -> np.ndarray:
    """Evaluate Σ f_j ψ_j(x)."""
    x = np.asarray(x, dtype=float)
    flat = x.ravel()
    values = np.zeros(flat.size)
    for columns, phi in iter_basis_blocks(flat, coeffs.truncation, period):
        values += phi @ coeffs.coeffs[columns]
    return values.reshape(x.shape)


def weighted_basis_diagonal(x: np.ndarray, weights: np.ndarray,
                            period: float = DEFAULT_PERIOD) -> np.ndarray:
    """Σ_j w_j ψ_j(x)² for every x."""
    x = np.asarray(x, dtype=float).ravel()
    out = np.zeros(x.size)
    for columns, phi in iter_basis_blocks(x, weights.size, period):
        out += (phi ** 2) @ weights[columns]
    return out
