"""
Gaussian-process posterior f | D_n ~ GP(f̂_n, C̃^B_n) with noise variance σ²
and prior covariance σ²(nλ)⁻¹K.

    f̂_n(x)       = K(x, X)[K(X, X) + nλI]⁻¹ Y
    C̃^B_n(x, x′) = σ²(nλ)⁻¹ {K(x, x′) − K(x, X)[K(X, X) + nλI]⁻¹ K(X, x′)}

The system matrix is factorized once (Cholesky); every covariance goes through
triangular solves.
"""
import logging
from dataclasses import dataclass

import numpy as np
from scipy import linalg

from ...domain.entities.dataset import Dataset
from ...domain.entities.grid_posterior import GridPosterior
from ...domain.errors import DomainError, NumericalError
from ...domain.value_objects.kernel_spec import KernelSpec
from ..kernels.gram import eigenvalue_constant, gram, kernel_diagonal, kernel_matrix

logger = logging.getLogger(__name__)

GRID_JITTER = 1e-10
DEFAULT_LAMBDA_SCALE = 1.5


@dataclass(frozen=True, eq=False)
class PosteriorGP:
    dataset: Dataset
    kernel: KernelSpec
    lambda_: float
    sigma2: float
    factor: np.ndarray  # lower Cholesky factor of K(X, X) + nλI
    weights: np.ndarray  # [K(X, X) + nλI]⁻¹ Y

    @property
    def n(self) -> int:
        return self.dataset.n

    @property
    def prior_scale(self) -> float:
        """σ²/(nλ)."""
        return self.sigma2 / (self.n * self.lambda_)

    def _solve_half(self, x) -> np.ndarray:
        """L⁻¹ K(X, x)."""
        cross = kernel_matrix(self.dataset.X, x, self.kernel)
        return linalg.solve_triangular(self.factor, cross, lower=True, check_finite=False)

    def _solve(self, rhs: np.ndarray) -> np.ndarray:
        return linalg.cho_solve((self.factor, True), rhs, check_finite=False)

    def mean_at(self, x):
        """f̂_n at scalar or array x."""
        scalar = np.ndim(x) == 0
        values = kernel_matrix(x if not scalar else [x], self.dataset.X, self.kernel) @ self.weights
        return float(values[0]) if scalar else values

    def cov_matrix(self, xs, ys=None) -> np.ndarray:
        """C̃^B_n(xs, ys) as a matrix; ys defaults to xs and the result is symmetrized."""
        xs = np.asarray(xs, dtype=float).ravel()
        half_x = self._solve_half(xs)
        if ys is None:
            out = kernel_matrix(xs, xs, self.kernel) - half_x.T @ half_x
            out = 0.5 * (out + out.T)
        else:
            ys = np.asarray(ys, dtype=float).ravel()
            out = kernel_matrix(xs, ys, self.kernel) - half_x.T @ self._solve_half(ys)
        return self.prior_scale * out

    def cov_at(self, x: float, x_prime: float) -> float:
        return float(self.cov_matrix([x], [x_prime])[0, 0])

    def variance(self, xs) -> np.ndarray:
        """Pointwise posterior variance C̃^B_n(x, x), clipped at zero."""
        xs = np.asarray(xs, dtype=float).ravel()
        half = self._solve_half(xs)
        values = kernel_diagonal(xs, self.kernel) - np.sum(half ** 2, axis=0)
        return self.prior_scale * np.maximum(values, 0.0)

    def noiseless_krr(self, x: float, query) -> np.ndarray:
        """K̂_x(query) = K(query, X)[K(X, X) + nλI]⁻¹ K(X, x)."""
        query = np.asarray(query, dtype=float).ravel()
        coefficients = self._solve(kernel_matrix(self.dataset.X, [x], self.kernel)[:, 0])
        return kernel_matrix(query, self.dataset.X, self.kernel) @ coefficients

    def grid_posterior(self, grid) -> GridPosterior:
        """Mean and covariance on `grid` with 10⁻¹⁰·max-diag jitter on the diagonal."""
        grid = np.asarray(grid, dtype=float).ravel()
        if grid.size < 1:
            raise DomainError("Grid must contain at least one point")
        cov = self.cov_matrix(grid)
        max_diag = float(np.max(np.diag(cov)))
        jitter = GRID_JITTER * max(max_diag, 0.0)
        if jitter > 0:
            cov = cov + jitter * np.eye(grid.size)
        return GridPosterior(grid=grid, mean=self.mean_at(grid), cov=cov, jitter=jitter)


def fit(data: Dataset, kernel: KernelSpec, lambda_: float, sigma2: float) -> PosteriorGP:
    """Factorize K(X, X) + nλI and solve it against Y."""
    if not lambda_ > 0:
        raise DomainError(f"lambda must be positive, got {lambda_}")
    if not sigma2 > 0:
        raise DomainError(f"noise variance must be positive, got {sigma2}")
    system = gram(data.X, kernel).with_jitter(data.n * lambda_)
    try:
        factor = linalg.cholesky(system, lower=True, check_finite=True)
    except (linalg.LinAlgError, ValueError) as e:
        logger.error(f"Cholesky factorization failed for {kernel.describe()}, n={data.n}: {e}")
        raise NumericalError(f"kernel system is not positive definite: {e}") from e
    weights = linalg.cho_solve((factor, True), data.Y, check_finite=False)
    logger.debug(f"Fitted posterior: n={data.n}, {kernel.describe()}, lambda={lambda_:.4g}")
    return PosteriorGP(dataset=data, kernel=kernel, lambda_=float(lambda_), sigma2=float(sigma2),
                       factor=factor, weights=weights)


def default_lambda(n: int, smoothness_index: float) -> float:
    """λ = n^(−2α/(2α+1))."""
    if n < 1:
        raise DomainError(f"sample size must be positive, got {n}")
    return float(n ** (-2.0 * smoothness_index / (2.0 * smoothness_index + 1.0)))


def scaled_lambda(n: int, kernel: KernelSpec, scale: float = DEFAULT_LAMBDA_SCALE) -> float:
    """λ = s·κ·n^(−2α/(2α+1)) with κ the eigenvalue constant of the kernel.

    Keeps about s^(−1/(2α))·n^(1/(2α+1)) effective frequencies whatever κ is; the
    unscaled rate rule over-regularizes kernels with small κ such as rough Matérn ones.
    """
    if not scale > 0:
        raise DomainError(f"lambda scale must be positive, got {scale}")
    return float(scale * eigenvalue_constant(kernel) * default_lambda(n, kernel.smoothness_index))
