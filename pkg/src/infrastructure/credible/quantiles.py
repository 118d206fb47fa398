import math

import numpy as np
from scipy import stats

from ...domain.errors import DomainError

# absorbs rounding in β·N so that e.g. 0.95·1000 selects the 950th value
INDEX_SLACK = 1e-9


def normal_quantile(gamma: float) -> float:
    """z_γ with Φ(z_γ) = γ."""
    if not 0.0 < gamma < 1.0:
        raise DomainError(f"probability must lie in (0, 1), got {gamma}")
    return float(stats.norm.ppf(gamma))


def empirical_quantile(values: np.ndarray, beta: float) -> float:
    """Order statistic at 1-based index ⌈β·N⌉ of `values`."""
    if not 0.0 < beta < 1.0:
        raise DomainError(f"quantile level must lie in (0, 1), got {beta}")
    values = np.sort(np.asarray(values, dtype=float).ravel())
    if values.size == 0:
        raise DomainError("cannot take a quantile of an empty sample")
    index = max(1, math.ceil(beta * values.size - INDEX_SLACK))
    return float(values[index - 1])
