"""
RatesBundle collects the rate quantities of the sup-norm theory at one n.
"""
from dataclasses import dataclass

from ..errors import DomainError


@dataclass(frozen=True)
class RatesBundle:
    """Value object for γ_n, δ_n and the sup-norm bias bound."""
    gamma_n: float
    delta_n: float
    bias_supnorm: float  # upper bound on ‖P_λ f*‖_∞

    def __post_init__(self):
        for name in ("gamma_n", "delta_n", "bias_supnorm"):
            if getattr(self, name) < 0:
                raise DomainError(f"{name} cannot be negative")
