import numpy as np
from scipy import stats

from ...domain.errors import DomainError


def kolmogorov_distance(samples_a, samples_b) -> float:
    """sup_t |F_A(t) − F_B(t)| between the two empirical CDFs."""
    samples_a = np.asarray(samples_a, dtype=float).ravel()
    samples_b = np.asarray(samples_b, dtype=float).ravel()
    if samples_a.size == 0 or samples_b.size == 0:
        raise DomainError("Kolmogorov distance needs two nonempty samples")
    return float(stats.ks_2samp(samples_a, samples_b).statistic)
