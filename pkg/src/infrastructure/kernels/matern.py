"""
Matérn correlation K(x, y) = 2^(1−ν)/Γ(ν) · (√(2ν) r)^ν · B_ν(√(2ν) r), r = |x − y|.
"""
from typing import Callable, Dict

import numpy as np
from scipy import special

from ...domain.errors import DomainError

MATERN_NU_RANGE = (0.05, 5.0)


def _half_integer_forms() -> Dict[float, Callable[[np.ndarray], np.ndarray]]:
    sqrt3 = np.sqrt(3.0)
    sqrt5 = np.sqrt(5.0)
    return {
        0.5: lambda r: np.exp(-r),
        1.5: lambda r: (1.0 + sqrt3 * r) * np.exp(-sqrt3 * r),
        2.5: lambda r: (1.0 + sqrt5 * r + 5.0 * r ** 2 / 3.0) * np.exp(-sqrt5 * r),
    }


HALF_INTEGER_FORMS = _half_integer_forms()


def check_smoothness(nu: float) -> None:
    low, high = MATERN_NU_RANGE
    if not low <= nu <= high:
        raise DomainError(f"Matérn smoothness {nu} outside supported range [{low}, {high}]")


def bessel_form(r: np.ndarray, nu: float) -> np.ndarray:
    """Evaluate the Matérn correlation through the modified Bessel function."""
    r = np.abs(np.asarray(r, dtype=float))
    z = np.sqrt(2.0 * nu) * r
    out = np.ones_like(z)
    positive = z > 0.0
    zp = z[positive]
    bessel = special.kv(nu, zp)
    with np.errstate(invalid="ignore", over="ignore"):
        values = (2.0 ** (1.0 - nu) / special.gamma(nu)) * zp ** nu * bessel
    # B_ν overflows only for astronomically small z, where the correlation is 1
    out[positive] = np.where(np.isfinite(bessel), values, 1.0)
    return out


def matern_correlation(r: np.ndarray, nu: float) -> np.ndarray:
    """Vectorized Matérn correlation as a function of distance."""
    check_smoothness(nu)
    r = np.abs(np.asarray(r, dtype=float))
    closed_form = HALF_INTEGER_FORMS.get(float(nu))
    if closed_form is not None:
        return closed_form(r)
    return bessel_form(r, nu)


def matern_eval(x: float, y: float, nu: float) -> float:
    """K(x, y) for the Matérn kernel of smoothness ν; equals 1 at x = y."""
    return float(matern_correlation(np.abs(float(x) - float(y)), nu))


def matern_eigenvalue_constant(nu: float) -> float:
    """κ_ν with μ_j ≈ κ_ν j^(−2α), α = ν + ½, for the Matérn operator on [0, 1].

    The spectral density S(ω) = Γ(ν+½)(2ν)^ν / (Γ(ν)√π) · (2ν + ω²)^(−ν−½) places one
    eigenvalue 2π·S(πj) at each frequency step π.
    """
    check_smoothness(nu)
    density = special.gamma(nu + 0.5) * (2.0 * nu) ** nu / (special.gamma(nu) * np.sqrt(np.pi))
    return float(2.0 * density * np.pi ** (-2.0 * nu))
