"""
Simulation truth f*(x) = Σ_m m^(−1.7) sin(m) cos(π(m − ½)x) and data drawn around it.

The series is cut at TRUTH_TERMS; the sup truncation error is at most
Σ_{m > M} m^(−1.7) ≈ M^(−0.7)/0.7 (4.5·10⁻⁴ at M = 10⁵).
"""
import logging
from functools import lru_cache
from typing import Union

import numpy as np

from ...domain.entities.dataset import Dataset
from ...domain.errors import DomainError
from ...domain.value_objects.function_coeffs import FunctionCoeffs
from ..kernels.fourier import basis_frequency

logger = logging.getLogger(__name__)

TRUTH_TERMS = 100_000
TRUTH_DECAY = 1.7
# bounds the temporary (points × terms) cosine table
CHUNK_ELEMENTS = 2_000_000


def truth_amplitudes(terms: int = TRUTH_TERMS) -> np.ndarray:
    m = np.arange(1, terms + 1, dtype=float)
    return m ** (-TRUTH_DECAY) * np.sin(m)


def truth_frequencies(terms: int = TRUTH_TERMS) -> np.ndarray:
    return np.pi * (np.arange(1, terms + 1, dtype=float) - 0.5)


def truncation_error_bound(terms: int = TRUTH_TERMS) -> float:
    """Σ_{m > terms} m^(−1.7) ≤ terms^(−0.7)/0.7."""
    return terms ** (1.0 - TRUTH_DECAY) / (TRUTH_DECAY - 1.0)


def _evaluate(x: np.ndarray, terms: int) -> np.ndarray:
    amplitudes = truth_amplitudes(terms)
    frequencies = truth_frequencies(terms)
    values = np.zeros(x.size)
    block = max(1, CHUNK_ELEMENTS // max(x.size, 1))
    for start in range(0, terms, block):
        stop = min(start + block, terms)
        values += np.cos(np.outer(x, frequencies[start:stop])) @ amplitudes[start:stop]
    return values


@lru_cache(maxsize=32)
def _evaluate_cached(raw: bytes, terms: int) -> np.ndarray:
    values = _evaluate(np.frombuffer(raw, dtype=float), terms)
    values.setflags(write=False)
    return values


def true_function(x, terms: int = TRUTH_TERMS, cache: bool = True):
    """f*(x) for scalar or array x in [0, 1]; array grids are cached when `cache` is set."""
    if terms < 1:
        raise DomainError(f"truth needs at least one term, got {terms}")
    scalar = np.ndim(x) == 0
    flat = np.ascontiguousarray(np.atleast_1d(np.asarray(x, dtype=float)).ravel())
    if np.any(flat < 0.0) or np.any(flat > 1.0):
        raise DomainError("truth is defined on [0, 1]")
    values = _evaluate_cached(flat.tobytes(), terms) if cache else _evaluate(flat, terms)
    return float(values[0]) if scalar else np.array(values).reshape(np.shape(x))


def truth_coefficients(truncation: int, period: float = 1.0, terms: int = TRUTH_TERMS) -> FunctionCoeffs:
    """f_j = ∫₀¹ f*(x) ψ_j(x) dx for j = 1 … truncation, integrated term by term in closed form.

    These are expansion coefficients of f* only when the basis is orthonormal on [0, 1] (period 1).
    """
    amplitudes = truth_amplitudes(terms)
    b = truth_frequencies(terms)
    coeffs = np.zeros(truncation)
    for j in range(1, truncation + 1):
        c = float(basis_frequency(j, period))
        if j % 2 == 1:
            # ∫ cos(bx) sin(cx) dx
            integral = 0.5 * ((1.0 - np.cos(c + b)) / (c + b) + (1.0 - np.cos(c - b)) / (c - b))
        else:
            integral = 0.5 * (np.sin(b - c) / (b - c) + np.sin(b + c) / (b + c))
        coeffs[j - 1] = np.sqrt(2.0) * float(integral @ amplitudes)
    logger.debug(f"Projected truth onto {truncation} basis functions (period={period:g})")
    return FunctionCoeffs(coeffs)


def generate_data(n: int, sigma: float, seed: Union[int, np.random.Generator],
                  terms: int = TRUTH_TERMS) -> Dataset:
    """X_i ~ Unif(0, 1), Y_i = f*(X_i) + σ ξ_i."""
    if n < 1:
        raise DomainError(f"sample size must be positive, got {n}")
    if sigma < 0:
        raise DomainError("noise level cannot be negative")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    X = rng.uniform(0.0, 1.0, size=n)
    noise = rng.standard_normal(n)
    Y = true_function(X, terms, cache=False) + sigma * noise
    return Dataset(X, Y)
