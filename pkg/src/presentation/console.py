"""
Plain-text rendering of experiment results on stdout, and progress reporting.
"""
import logging
import sys
import threading
from typing import Any, Dict, List, Optional, TextIO

from ..domain.entities.coverage_report import CoverageReport
from ..domain.events.simulation_events import (
    ExperimentCompleted,
    ReplicateCompleted,
    ReplicateFailed,
    SimulationEvent,
)

logger = logging.getLogger(__name__)


class ProgressReporter:
    """Logs replicate progress roughly every tenth of a run; safe to call from worker threads."""

    def __init__(self):
        self.failures = 0
        self._lock = threading.Lock()

    def __call__(self, event: SimulationEvent) -> None:
        if isinstance(event, ReplicateCompleted):
            step = max(1, event.total // 10)
            if (event.index + 1) % step == 0:
                logger.info(f"Replicate {event.index + 1}/{event.total} done")
        elif isinstance(event, ReplicateFailed):
            with self._lock:
                self.failures += 1
            logger.error(f"Replicate {event.index} failed: {event.error_message}")
        elif isinstance(event, ExperimentCompleted):
            logger.info(f"{event.label} completed in {event.elapsed_seconds:.1f}s")


class ConsoleView:
    def __init__(self, stream: Optional[TextIO] = None):
        self.stream = stream or sys.stdout

    def _print(self, text: str = "") -> None:
        print(text, file=self.stream)

    def show_fit(self, summary: Dict[str, Any]) -> None:
        self._print(f"fit: {summary['kernel']}  n={summary['n']}  lambda={summary['lambda']:.6g}")
        self._print(f"  level {summary['level']}: band radius {summary['band_radius']:.6g}, "
                    f"mean interval half-length {summary['mean_half_length']:.6g}")
        for path in summary.get("files", []):
            self._print(f"  wrote {path}")

    def show_coverage(self, reports: List[CoverageReport]) -> None:
        if not reports:
            return
        levels = reports[0].levels
        self._print("simultaneous coverage (Monte-Carlo SE)")
        header = "  nu      n     " + "  ".join(f"beta={level:<14g}" for level in levels)
        self._print(header)
        for report in reports:
            cells = "  ".join(f"{report.simultaneous[level]:.3f} ({report.simultaneous_se(level):.3f})  "
                              for level in levels)
            self._print(f"  {report.nu:<7g} {report.n:<5d} {cells}")
            theory = report.theory.get("levels", {})
            for level in levels:
                prediction = theory.get(repr(float(level)))
                if prediction:
                    self._print(f"      beta={level:g}: band limit {prediction['band_coverage_limit']:.3f}, "
                                f"asymptotic pointwise {prediction['asymptotic_pointwise']:.4f} "
                                f"(linear inflation {prediction['asymptotic_pointwise_linear']:.4f})")

    def show_asymptotic(self, result: Dict[str, Any]) -> None:
        self._print(f"alpha={result['alpha']:g}  beta={result['level']:g}")
        self._print(f"  C_IR limit 2a/(2a-1)      = {result['c_ir_limit']:.6f}")
        self._print(f"  C_IR limit by quadrature  = {result['c_ir_limit_quadrature']:.6f}")
        self._print(f"  coverage 2Phi(sqrt(C) z)-1 = {result['coverage_sqrt']:.4f}")
        self._print(f"  coverage 2Phi(C z)-1       = {result['coverage_linear']:.4f}")
        self._print(f"  C_IR at h={result['h']:g}         = {result['c_ir_finite']:.6f} "
                    f"(coverage {result['coverage_finite']:.4f})")

    def show_rates(self, result: Dict[str, Any]) -> None:
        self._print("     n        h           median sup error  gamma_n     delta_n")
        for row in result["rows"]:
            self._print(f"  {row['n']:>6d}  {row['h']:<10.4g}  {row['median_error']:<16.6g}  "
                        f"{row['gamma_n']:<10.4g}  {row['delta_n']:<10.4g}")
        low, high = result["slope_ci"]
        self._print(f"  slope {result['slope']:.4f}  95% CI [{low:.4f}, {high:.4f}]  "
                    f"target {result['target_slope']:.4f}")

    def show_diagnostics(self, result: Dict[str, Any]) -> None:
        for name in ("equivalence", "sup_law"):
            summary = result[name]
            medians = ", ".join(f"n={n}: {value:.4g}" for n, value in summary["medians"].items())
            trend = "decreasing" if summary["strictly_decreasing"] else "not decreasing"
            self._print(f"{name}: {medians}  ({trend})")
