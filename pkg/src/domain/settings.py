from dataclasses import dataclass, field
from typing import List, Optional

from .errors import ConfigError
from .value_objects.kernel_spec import KernelKind, KernelSpec

LAMBDA_RULES = ("scaled", "rate", "explicit", "class")


@dataclass
class KernelSettings:
    kind: str = "matern"
    nu: float = 0.1  # Matérn smoothness
    alpha: float = 2.0  # spectral kernel smoothness
    truncation: int = 0  # 0 selects the default truncation rule
    period: float = 2.0


@dataclass
class SimulationSettings:
    """Settings for data generation and the posterior fit"""
    n: int = 200
    sigma: float = 0.1
    replicates: int = 200
    grid_size: int = 200
    truth_terms: int = 100000
    lambda_rule: str = "scaled"  # scaled | rate | explicit | class
    lambda_scale: float = 1.5  # s in λ = s·κ·n^(−2α/(2α+1)), scaled rule only
    lambda_value: float = 0.0  # used when lambda_rule is explicit
    smoothness_class: str = "holder"  # used when lambda_rule is class
    class_radius: float = 1.0
    data_file: str = ""  # fit only; empty means synthetic data


@dataclass
class CredibleSettings:
    levels: List[float] = field(default_factory=lambda: [0.8, 0.9])
    fit_level: float = 0.95
    draws: int = 1000
    theory_draws: int = 2000


@dataclass
class FitSettings:
    """Single-dataset fit; extra priors are written as separate plot-data files"""
    figure_nus: List[float] = field(default_factory=lambda: [0.6, 1.7])


@dataclass
class CoverageSettings:
    """Grid of Table-1 cells run by the coverage subcommand"""
    nus: List[float] = field(default_factory=lambda: [0.1, 0.15, 1.2])
    sample_sizes: List[int] = field(default_factory=lambda: [200, 500])
    theory: bool = True


@dataclass
class RateSettings:
    sample_sizes: List[int] = field(default_factory=lambda: [100, 200, 400, 800, 1600])
    alpha: float = 1.2
    smoothness_class: str = "holder"
    class_radius: float = 1.0
    seeds: int = 20


@dataclass
class AsymptoticSettings:
    alpha: float = 2.0
    level: float = 0.95
    h: float = 0.05


@dataclass
class DiagnosticSettings:
    """Settings for the equivalent-kernel and sup-law trend experiments"""
    sample_sizes: List[int] = field(default_factory=lambda: [100, 400, 1600])
    alpha: float = 2.0
    seeds: int = 10
    grid_size: int = 50
    draws: int = 10000  # posterior draws per sup-law comparison
    level: float = 0.95


@dataclass
class OutputSettings:
    directory: str = "results"


@dataclass
class RuntimeSettings:
    seed: int = 20240607
    workers: int = 0  # 0 means one worker per available core
    log_level: str = "INFO"


@dataclass
class ExperimentSettings:
    kernel: KernelSettings = None
    simulation: SimulationSettings = None
    credible: CredibleSettings = None
    fit: FitSettings = None
    coverage: CoverageSettings = None
    rates: RateSettings = None
    asymptotic: AsymptoticSettings = None
    diagnostics: DiagnosticSettings = None
    output: OutputSettings = None
    runtime: RuntimeSettings = None

    def __post_init__(self):
        if self.kernel is None:
            self.kernel = KernelSettings()
        if self.simulation is None:
            self.simulation = SimulationSettings()
        if self.credible is None:
            self.credible = CredibleSettings()
        if self.fit is None:
            self.fit = FitSettings()
        if self.coverage is None:
            self.coverage = CoverageSettings()
        if self.rates is None:
            self.rates = RateSettings()
        if self.asymptotic is None:
            self.asymptotic = AsymptoticSettings()
        if self.diagnostics is None:
            self.diagnostics = DiagnosticSettings()
        if self.output is None:
            self.output = OutputSettings()
        if self.runtime is None:
            self.runtime = RuntimeSettings()

    def validate(self) -> None:
        """Raise ConfigError on values no experiment can run with."""
        sim = self.simulation
        if sim.n < 1:
            raise ConfigError("simulation.n must be at least 1")
        if sim.replicates < 1:
            raise ConfigError("simulation.replicates must be at least 1")
        if sim.grid_size < 2:
            raise ConfigError("simulation.grid_size must be at least 2")
        if sim.sigma < 0:
            raise ConfigError("simulation.sigma cannot be negative")
        if sim.lambda_rule not in LAMBDA_RULES:
            raise ConfigError(f"simulation.lambda_rule must be one of {', '.join(LAMBDA_RULES)}, "
                              f"got {sim.lambda_rule}")
        if not sim.lambda_scale > 0:
            raise ConfigError("simulation.lambda_scale must be positive")
        if sim.lambda_rule == "explicit" and not sim.lambda_value > 0:
            raise ConfigError("simulation.lambda_value must be positive when lambda_rule is explicit")
        for level in list(self.credible.levels) + [self.credible.fit_level, self.asymptotic.level,
                                                   self.diagnostics.level]:
            if not 0 < level < 1:
                raise ConfigError(f"credible levels must lie in (0, 1), got {level}")
        if self.diagnostics.draws < 1000:
            raise ConfigError("diagnostics.draws must be at least 1000")
        if self.credible.draws < 100:
            raise ConfigError("credible.draws must be at least 100")
        if self.coverage.theory and self.credible.theory_draws < 1000:
            raise ConfigError("credible.theory_draws must be at least 1000 when coverage.theory is on")
        for n in list(self.coverage.sample_sizes) + list(self.rates.sample_sizes) + list(self.diagnostics.sample_sizes):
            if n < 2:
                raise ConfigError(f"sample sizes must be at least 2, got {n}")
        if self.rates.seeds < 1 or self.diagnostics.seeds < 1:
            raise ConfigError("seed counts must be at least 1")
        if self.runtime.workers < 0:
            raise ConfigError("runtime.workers cannot be negative")
        KernelKind.from_string(self.kernel.kind)

    def kernel_spec(self, nu: Optional[float] = None) -> KernelSpec:
        """KernelSpec for the configured family; `nu` overrides the Matérn smoothness."""
        kind = KernelKind.from_string(self.kernel.kind)
        if kind is KernelKind.MATERN:
            return KernelSpec.matern(self.kernel.nu if nu is None else nu)
        truncation = self.kernel.truncation or 2000
        return KernelSpec.spectral(self.kernel.alpha, truncation, self.kernel.period)

    def sim_config(self, n: Optional[int] = None, nu: Optional[float] = None) -> 'SimConfig':
        """Freeze one coverage cell."""
        sim = self.simulation
        return SimConfig(
            n=sim.n if n is None else n,
            kernel=self.kernel_spec(nu),
            levels=tuple(float(level) for level in self.credible.levels),
            replicates=sim.replicates,
            grid_size=sim.grid_size,
            sigma=sim.sigma,
            draws=self.credible.draws,
            lambda_rule=sim.lambda_rule,
            lambda_value=sim.lambda_value,
            lambda_scale=sim.lambda_scale,
            smoothness_class=sim.smoothness_class,
            class_radius=sim.class_radius,
            truth_terms=sim.truth_terms,
            base_seed=self.runtime.seed,
            theory=self.coverage.theory,
            theory_draws=self.credible.theory_draws,
        )


@dataclass(frozen=True)
class SimConfig:
    """One replicated coverage experiment, fully resolved."""
    n: int
    kernel: KernelSpec
    levels: tuple
    replicates: int = 200
    grid_size: int = 200
    sigma: float = 0.1
    draws: int = 1000
    lambda_rule: str = "scaled"
    lambda_scale: float = 1.5
    lambda_value: float = 0.0
    smoothness_class: str = "holder"
    class_radius: float = 1.0
    truth_terms: int = 100000
    base_seed: int = 0
    theory: bool = True
    theory_draws: int = 2000

    def __post_init__(self):
        if self.replicates < 1:
            raise ConfigError("replicates must be at least 1")
        if self.grid_size < 2:
            raise ConfigError("grid size must be at least 2")
        if not self.levels:
            raise ConfigError("at least one credible level is required")
        for level in self.levels:
            if not 0 < level < 1:
                raise ConfigError(f"credible levels must lie in (0, 1), got {level}")
