"""
ExperimentManager runs one subcommand against resolved settings and writes its files.
"""
import csv
import logging
import math
from dataclasses import asdict, replace
from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np
from scipy import stats

from .. import __version__
from ..domain.entities.coverage_report import CoverageReport
from ..domain.entities.dataset import Dataset
from ..domain.entities.run_manifest import RunManifest
from ..domain.errors import ConfigError
from ..domain.settings import ExperimentSettings
from ..domain.value_objects.function_coeffs import SmoothnessClass
from ..domain.value_objects.kernel_spec import KernelKind, KernelSpec
from ..infrastructure.credible.bands import simultaneous_radius
from ..infrastructure.credible.intervals import pointwise_half_lengths
from ..infrastructure.persistence.config_repository import ConfigRepository
from ..infrastructure.persistence.results_writer import ResultsWriter
from ..infrastructure.posterior.gp import fit
from ..infrastructure.simulation.diagnostics import equivalence_experiment, sup_law_experiment, trend_summary
from ..infrastructure.simulation.harness import posterior_noise_variance, resolve_lambda, resolve_workers, run_replicates
from ..infrastructure.simulation.rates_experiment import rate_experiment
from ..infrastructure.simulation.seeding import Stream, derived_rng
from ..infrastructure.simulation.truth import generate_data, true_function
from ..infrastructure.spectral.model import SpectralModel
from ..infrastructure.spectral.theory import (
    INFLATION_LINEAR,
    INFLATION_SQRT,
    asymptotic_pointwise_coverage,
    c_ir_limit,
    c_ir_limit_quadrature,
    two_sided_quantile,
)
from ..presentation.console import ProgressReporter

logger = logging.getLogger(__name__)


def read_dataset(path: Path) -> Dataset:
    """Two-column CSV with header x,y."""
    try:
        with open(path, "r", newline="", encoding="utf-8") as f:
            rows = [row for row in csv.DictReader(line for line in f if not line.startswith("#"))]
    except OSError as e:
        raise ConfigError(f"cannot read data file {path}: {e}") from e
    try:
        X = [float(row["x"]) for row in rows]
        Y = [float(row["y"]) for row in rows]
    except (KeyError, TypeError, ValueError) as e:
        raise ConfigError(f"data file {path} needs numeric columns x and y: {e}") from e
    return Dataset(X, Y)


class ExperimentManager:
    """Owns the settings of one run and the writer for its output directory."""

    def __init__(self, settings: ExperimentSettings, subcommand: str):
        self.settings = settings
        self.subcommand = subcommand
        self.seed = settings.runtime.seed
        self.workers = resolve_workers(settings.runtime.workers)
        self.output_dir = Path(settings.output.directory)
        self.manifest = RunManifest(subcommand=subcommand, config=ConfigRepository.reproducible(settings),
                                    version=__version__, base_seed=self.seed)
        self.writer = ResultsWriter(self.output_dir, self.manifest)

    def run(self) -> Dict[str, Any]:
        commands = {
            "fit": self.cmd_fit,
            "coverage": self.cmd_coverage,
            "asymptotic": self.cmd_asymptotic,
            "rates": self.cmd_rates,
            "diagnostics": self.cmd_diagnostics,
        }
        if self.subcommand not in commands:
            raise ConfigError(f"unknown subcommand {self.subcommand}")
        logger.info(f"Running {self.subcommand} with seed {self.seed}, output in {self.output_dir}")
        result = commands[self.subcommand]()
        ConfigRepository.save(self.settings, self.output_dir)
        self.manifest.finish()
        self.writer.write_run_info()
        logger.info(f"{self.subcommand} finished in {self.manifest.wall_clock()['elapsed_seconds']:.1f}s")
        return result

    # -- fit -------------------------------------------------------------------

    def _fit_grid(self, data: Dataset, kernel: KernelSpec, truth: Optional[np.ndarray]) -> Dict[str, Any]:
        settings = self.settings
        config = settings.sim_config(n=data.n)
        config = replace(config, kernel=kernel)
        lambda_ = resolve_lambda(config)
        post = fit(data, kernel, lambda_, posterior_noise_variance(config.sigma))
        grid = np.linspace(0.0, 1.0, config.grid_size)
        gp = post.grid_posterior(grid)
        level = settings.credible.fit_level
        half = pointwise_half_lengths(gp, level)
        radius = simultaneous_radius(gp, level, config.draws, derived_rng(self.seed, Stream.POSTERIOR, 0))
        truth = truth if truth is not None else np.full(grid.size, np.nan)
        return {"grid": grid, "gp": gp, "half": half, "radius": radius, "lambda": lambda_, "truth": truth}

    def _write_plot_data(self, name: str, fitted: Dict[str, Any]) -> Path:
        gp, half, radius = fitted["gp"], fitted["half"], fitted["radius"]
        rows = zip(fitted["grid"], fitted["truth"], gp.mean, gp.mean - half, gp.mean + half,
                   gp.mean - radius, gp.mean + radius)
        return self.writer.write_csv(name, ["x", "f_star", "mean", "ci_lo", "ci_hi", "band_lo", "band_hi"], rows)

    def cmd_fit(self) -> Dict[str, Any]:
        settings = self.settings
        sim = settings.simulation
        if sim.data_file:
            data = read_dataset(Path(sim.data_file))
            truth = None
        else:
            data = generate_data(sim.n, sim.sigma, derived_rng(self.seed, Stream.DATA, 0), sim.truth_terms)
            truth = true_function(np.linspace(0.0, 1.0, sim.grid_size), sim.truth_terms)
        kernel = settings.kernel_spec()
        fitted = self._fit_grid(data, kernel, truth)
        gp = fitted["gp"]
        files = [self.writer.write_csv(
            "posterior_grid.csv", ["x", "mean", "variance", "ci_half_length", "band_radius"],
            zip(fitted["grid"], gp.mean, gp.variance, fitted["half"], [fitted["radius"]] * gp.size))]
        files.append(self._write_plot_data("plot_data.csv", fitted))
        if kernel.kind is KernelKind.MATERN:
            for nu in settings.fit.figure_nus:
                extra = self._fit_grid(data, KernelSpec.matern(nu), truth)
                files.append(self._write_plot_data(f"plot_data_nu{nu:g}.csv", extra))
        return {
            "kernel": kernel.describe(),
            "n": data.n,
            "lambda": fitted["lambda"],
            "level": settings.credible.fit_level,
            "band_radius": fitted["radius"],
            "mean_half_length": float(np.mean(fitted["half"])),
            "files": [str(p) for p in files],
        }

    # -- coverage ----------------------------------------------------------------

    def cmd_coverage(self) -> List[CoverageReport]:
        settings = self.settings
        nus = settings.coverage.nus if KernelKind.from_string(settings.kernel.kind) is KernelKind.MATERN else [None]
        reporter = ProgressReporter()
        reports = []
        for nu in nus:
            for n in settings.coverage.sample_sizes:
                report = run_replicates(settings.sim_config(n=n, nu=nu), self.workers, reporter)
                self.writer.record_runtime({"nu": report.nu, "n": report.n}, report.runtime)
                reports.append(report)
        self._write_coverage(reports)
        return reports

    def _write_coverage(self, reports: List[CoverageReport]) -> None:
        levels = list(self.settings.credible.levels)
        sizes = list(self.settings.coverage.sample_sizes)
        nus = sorted({report.nu for report in reports})
        lookup = {(report.nu, report.n): report for report in reports}
        header = ["nu"] + [f"n={n} beta={level:g}" for n in sizes for level in levels]
        for name, value in (("table1.csv", lambda r, b: r.simultaneous[b]),
                            ("table1_se.csv", lambda r, b: r.simultaneous_se(b))):
            rows = [[nu] + [value(lookup[(nu, n)], level) for n in sizes for level in levels] for nu in nus]
            self.writer.write_csv(name, header, rows)
        pointwise_rows = []
        for report in reports:
            for level in levels:
                se = report.pointwise_se(level)
                for x, p, s in zip(report.grid, report.pointwise[level], se):
                    pointwise_rows.append([report.nu, report.n, level, x, p, s])
        self.writer.write_csv("pointwise_coverage.csv", ["nu", "n", "beta", "x", "coverage", "se"], pointwise_rows)
        self.writer.write_json("coverage_report.json", {"reports": [report.to_dict() for report in reports]})

    # -- asymptotic --------------------------------------------------------------

    def cmd_asymptotic(self) -> Dict[str, Any]:
        asymptotic = self.settings.asymptotic
        alpha, level, h = asymptotic.alpha, asymptotic.level, asymptotic.h
        model = SpectralModel(alpha=alpha, h=h, sigma2=posterior_noise_variance(self.settings.simulation.sigma))
        c_ir_finite = model.c_ir()
        result = {
            "alpha": alpha,
            "level": level,
            "h": h,
            "c_ir_limit": c_ir_limit(alpha),
            "c_ir_limit_quadrature": c_ir_limit_quadrature(alpha),
            "coverage_sqrt": asymptotic_pointwise_coverage(alpha, level, INFLATION_SQRT),
            "coverage_linear": asymptotic_pointwise_coverage(alpha, level, INFLATION_LINEAR),
            "c_ir_finite": c_ir_finite,
            "coverage_finite": float(2.0 * stats.norm.cdf(math.sqrt(c_ir_finite) * two_sided_quantile(level)) - 1.0),
            "truncation": model.truncation,
        }
        self.writer.write_json("asymptotic.json", result)
        return result

    # -- rates -------------------------------------------------------------------

    def cmd_rates(self) -> Dict[str, Any]:
        settings = self.settings
        rate = settings.rates
        result = rate_experiment(rate.sample_sizes, rate.alpha, SmoothnessClass.from_string(rate.smoothness_class),
                                 rate.seeds, sigma=settings.simulation.sigma, radius=rate.class_radius,
                                 base_seed=self.seed, grid_size=settings.simulation.grid_size)
        rows = [asdict(row) for row in result.rows]
        self.writer.write_csv("rates.csv", ["n", "h", "lambda", "median_error", "gamma_n", "delta_n", "bias_supnorm"],
                              [[r["n"], r["h"], r["lambda_"], r["median_error"], r["gamma_n"], r["delta_n"],
                                r["bias_supnorm"]] for r in rows])
        summary = {
            "alpha": result.alpha,
            "smoothness_class": result.smoothness_class,
            "slope": result.slope,
            "intercept": result.intercept,
            "slope_stderr": result.slope_stderr,
            "slope_ci": list(result.slope_ci),
            "target_slope": result.target_slope,
        }
        self.writer.write_json("rates_fit.json", summary)
        return {**summary, "rows": rows}

    # -- diagnostics -------------------------------------------------------------

    def cmd_diagnostics(self) -> Dict[str, Any]:
        diag = self.settings.diagnostics
        sigma = self.settings.simulation.sigma or math.sqrt(posterior_noise_variance(0.0))
        equivalence = equivalence_experiment(diag.sample_sizes, diag.alpha, diag.seeds, diag.grid_size,
                                             sigma, self.seed)
        sup_law = sup_law_experiment(diag.sample_sizes, diag.alpha, diag.seeds, diag.grid_size,
                                     diag.draws, sigma, diag.level, self.seed)
        rows = []
        for name, trend in (("equivalence", equivalence), ("sup_law", sup_law)):
            for row in trend:
                rows.extend([name, row.n, row.h, seed, value] for seed, value in enumerate(row.values))
        self.writer.write_csv("diagnostics.csv", ["experiment", "n", "h", "seed", "value"], rows)
        result = {
            "equivalence": trend_summary(equivalence),
            "sup_law": {
                **trend_summary(sup_law),
                "population_quantile": {str(r.n): r.population_quantile for r in sup_law},
                "scaled_radius": {str(r.n): r.scaled_radius for r in sup_law},
            },
        }
        self.writer.write_json("diagnostics.json", result)
        return result
