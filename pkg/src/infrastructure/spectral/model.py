"""
SpectralModel holds the regularized spectrum ν_j = μ_j/(μ_j + λ), λ = h^(2α), and
everything built from it: the equivalent kernel K̃, the operators F_λ and P_λ,
and the population covariances Ĉ^B_n and Ĉ_n.
"""
import logging
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Tuple

import numpy as np
from scipy import special

from ...domain.errors import DomainError
from ...domain.value_objects.function_coeffs import FunctionCoeffs
from ..kernels.fourier import DEFAULT_PERIOD, basis_frequency, expand, paired_eigenvalues

logger = logging.getLogger(__name__)

TAIL_TOLERANCE = 1e-4
MIN_TRUNCATION = 2000
MAX_TRUNCATION = 400_000
# upper bound on (number of distinct differences) × (pairs per block)
PROFILE_BLOCK_ELEMENTS = 4_000_000


def default_truncation(h: float, alpha: float, tolerance: float = TAIL_TOLERANCE) -> int:
    """Smallest even J ≥ max(2000, 20⌈1/h⌉) whose tail Σ_{j>J} ν_j is below
    `tolerance` times Σ_j ν_j, capped at MAX_TRUNCATION.
    """
    base = max(MIN_TRUNCATION, 20 * math.ceil(1.0 / h))
    m = 2.0 * alpha
    lam = h ** m
    total = (2.0 / h) * (math.pi / m) / math.sin(math.pi / m)
    # Σ_{k>K} 2 k^(−2α)/λ ≤ 2 K^(1−2α) / ((2α−1) λ)
    log_pairs = -math.log(tolerance * total * (m - 1.0) * lam / 2.0) / (m - 1.0)
    if log_pairs > math.log(MAX_TRUNCATION / 2):
        logger.warning(f"Tail tolerance {tolerance} needs more than {MAX_TRUNCATION} terms "
                       f"(alpha={alpha}, h={h}); truncating at {MAX_TRUNCATION}")
        return MAX_TRUNCATION
    truncation = max(base, 2 * math.ceil(math.exp(log_pairs)))
    return truncation + truncation % 2


def pairwise_differences(xs: np.ndarray, ys: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Distinct values of x_a − y_b and the index array mapping them back to (a, b)."""
    if xs.size > 1 and xs.shape == ys.shape and np.array_equal(xs, ys):
        step = (xs[-1] - xs[0]) / (xs.size - 1)
        if step > 0 and np.allclose(np.diff(xs), step, rtol=1e-9, atol=0.0):
            lags = np.arange(-(xs.size - 1), xs.size)
            positions = np.arange(xs.size)
            index = positions[:, None] - positions[None, :] + xs.size - 1
            return lags * step, index
    diff = xs[:, None] - ys[None, :]
    unique, inverse = np.unique(diff, return_inverse=True)
    return unique, inverse.reshape(diff.shape)


@dataclass(frozen=True)
class SpectralModel:
    """Paired spectrum μ_{2k−1} = μ_{2k} = k^(−2α) regularized at λ = h^(2α).

    The truncation J is always even so every sine term has its cosine partner;
    then Σ_j w_j ψ_j(x)ψ_j(x′) = Σ_k 2 w_{2k} cos(ω_k (x − x′)) is stationary.

    With the default truncation the sums over j > J are added back in closed form on
    the diagonal (lag 0) and in C_IR, so a capped J leaves no bias there; an explicit
    truncation is taken literally.
    """
    alpha: float
    h: float
    sigma2: float = 0.01
    truncation: int = 0  # 0 selects default_truncation
    period: float = DEFAULT_PERIOD
    corrects_tail: bool = field(default=False, init=False)

    def __post_init__(self):
        if not self.alpha > 0.5:
            raise DomainError(f"alpha must exceed 1/2, got {self.alpha}")
        if not 0.0 < self.h <= 1.0:
            raise DomainError(f"bandwidth h must lie in (0, 1], got {self.h}")
        if not self.sigma2 > 0:
            raise DomainError("noise variance must be positive")
        if self.truncation < 0:
            raise DomainError("truncation cannot be negative")
        object.__setattr__(self, "corrects_tail", self.truncation == 0)
        truncation = self.truncation or default_truncation(self.h, self.alpha)
        object.__setattr__(self, "truncation", int(truncation + truncation % 2))

    @property
    def lambda_(self) -> float:
        return self.h ** (2.0 * self.alpha)

    @cached_property
    def eigenvalues(self) -> np.ndarray:
        return paired_eigenvalues(self.alpha, self.truncation)

    @cached_property
    def weights(self) -> np.ndarray:
        """ν_j for j = 1 … J."""
        mu = self.eigenvalues
        return mu / (mu + self.lambda_)

    def nu(self, j: int) -> float:
        if not 1 <= j <= self.truncation:
            raise DomainError(f"index {j} outside truncation range 1..{self.truncation}")
        return float(self.weights[j - 1])

    def tail_bound(self) -> float:
        """Upper bound on Σ_{j>J} ν_j."""
        m = 2.0 * self.alpha
        pairs = self.truncation // 2
        return 2.0 * pairs ** (1.0 - m) / ((m - 1.0) * self.lambda_)

    def relative_tail(self) -> float:
        return self.tail_bound() / float(np.sum(self.weights))

    def tail_sum(self, power: int = 1) -> float:
        """Σ_{j>J} ν_j^power, as the midpoint integral ∫_{K+½}^∞ 2(1 + λt^(2α))^(−power) dt.

        K = J/2 pairs; the integral is 2λ^(−q) a^(1−p)/(p−1) · ₂F₁(q, b; b+1; −1/(λa^m)) with
        q = power, m = 2α, p = qm, b = (p−1)/m and a = K + ½.
        """
        m = 2.0 * self.alpha
        start = self.truncation // 2 + 0.5
        p = power * m
        b = (p - 1.0) / m
        hypergeometric = special.hyp2f1(power, b, b + 1.0, -1.0 / (self.lambda_ * start ** m))
        return float(2.0 * self.lambda_ ** (-power) * start ** (1.0 - p) / (p - 1.0) * hypergeometric)

    def _tail(self, power: int) -> float:
        return self.tail_sum(power) if self.corrects_tail else 0.0

    # -- stationary sums ------------------------------------------------------

    def _profile(self, differences: np.ndarray, power: int) -> np.ndarray:
        """Σ_k 2 ν_(2k)^power cos(ω_k d) for each d, plus the tail sum at d = 0."""
        differences = np.asarray(differences, dtype=float).ravel()
        pair_weights = self.weights[1::2] ** power
        omega = basis_frequency(np.arange(2, self.truncation + 1, 2), self.period)
        block = max(1, PROFILE_BLOCK_ELEMENTS // max(differences.size, 1))
        out = np.zeros(differences.size)
        for start in range(0, omega.size, block):
            stop = min(start + block, omega.size)
            out += np.cos(np.outer(differences, omega[start:stop])) @ (2.0 * pair_weights[start:stop])
        out[differences == 0.0] += self._tail(power)
        return out

    def _stationary_matrix(self, xs, ys, power: int) -> np.ndarray:
        xs = np.asarray(xs, dtype=float).ravel()
        ys = xs if ys is None else np.asarray(ys, dtype=float).ravel()
        values, index = pairwise_differences(xs, ys)
        return self._profile(values, power)[index]

    def _stationary_value(self, x: float, y: float, power: int) -> float:
        return float(self._profile(np.array([float(x) - float(y)]), power)[0])

    # -- equivalent kernel and population covariances -------------------------

    def equivalent_kernel(self, s: float, t: float) -> float:
        """K̃(s, t) = Σ ν_j ψ_j(s) ψ_j(t)."""
        return self._stationary_value(s, t, 1)

    def equivalent_kernel_matrix(self, xs, ys=None) -> np.ndarray:
        return self._stationary_matrix(xs, ys, 1)

    def c_hat_B(self, x: float, x_prime: float) -> float:
        """Ĉ^B_n(x, x′) = σ² h Σ ν_j ψ_j(x) ψ_j(x′)."""
        return self.sigma2 * self.h * self._stationary_value(x, x_prime, 1)

    def c_hat(self, x: float, x_prime: float) -> float:
        """Ĉ_n(x, x′) = σ² h Σ ν_j² ψ_j(x) ψ_j(x′)."""
        return self.sigma2 * self.h * self._stationary_value(x, x_prime, 2)

    def c_hat_B_matrix(self, xs, ys=None) -> np.ndarray:
        return self.sigma2 * self.h * self._stationary_matrix(xs, ys, 1)

    def c_hat_matrix(self, xs, ys=None) -> np.ndarray:
        return self.sigma2 * self.h * self._stationary_matrix(xs, ys, 2)

    def c_ir(self) -> float:
        """Variance inflation ratio Σ ν_j / Σ ν_j²; always above 1."""
        weights = self.weights
        return float((np.sum(weights) + self._tail(1)) / (np.sum(weights ** 2) + self._tail(2)))

    # -- smoothing and bias operators -----------------------------------------

    def _check_coefficients(self, f: FunctionCoeffs) -> None:
        if f.truncation > self.truncation:
            raise DomainError(f"function has {f.truncation} coefficients, model keeps {self.truncation}")

    def apply_F_lambda(self, f: FunctionCoeffs) -> FunctionCoeffs:
        """F_λ f = Σ ν_j f_j ψ_j."""
        self._check_coefficients(f)
        return FunctionCoeffs(self.weights[: f.truncation] * f.coeffs)

    def apply_P_lambda(self, f: FunctionCoeffs) -> FunctionCoeffs:
        """P_λ f = Σ (1 − ν_j) f_j ψ_j."""
        self._check_coefficients(f)
        mu = self.eigenvalues[: f.truncation]
        return FunctionCoeffs(self.lambda_ / (mu + self.lambda_) * f.coeffs)

    def bias_at(self, f: FunctionCoeffs, x) -> np.ndarray:
        """(P_λ f)(x)."""
        return expand(self.apply_P_lambda(f), x, self.period)

    def bias_supnorm_bound(self, f: FunctionCoeffs) -> float:
        """√2 Σ (1 − ν_j)|f_j| ≥ ‖P_λ f‖_∞."""
        return float(np.sqrt(2.0) * np.sum(np.abs(self.apply_P_lambda(f).coeffs)))

    def describe(self) -> str:
        return (f"SpectralModel(alpha={self.alpha:g}, h={self.h:g}, lambda={self.lambda_:.3g}, "
                f"J={self.truncation}, period={self.period:g})")
