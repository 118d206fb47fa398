"""
AppBootstrap handles command-line parsing, configuration and the run lifecycle.
"""
import argparse
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

from .. import __version__
from ..domain.errors import ConfigError, NumericalError
from ..infrastructure.persistence.config_repository import ConfigRepository
from ..presentation.console import ConsoleView
from .experiment_manager import ExperimentManager

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_CONFIG_ERROR = 2
EXIT_NUMERICAL_ERROR = 3

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

# dedicated flags and the config key each one sets
COMMON_FLAGS = [
    ("--seed", "runtime.seed", int, "base seed of all random streams"),
    ("--workers", "runtime.workers", int, "parallel replicates (0 = all cores)"),
    ("--output", "output.directory", str, "output directory"),
    ("--log-level", "runtime.log_level", str, "DEBUG, INFO, WARNING or ERROR"),
]
SUBCOMMAND_FLAGS = {
    "fit": [
        ("--kernel", "kernel.kind", str, "matern or spectral"),
        ("--nu", "kernel.nu", float, "Matérn smoothness"),
        ("--n", "simulation.n", int, "sample size of synthetic data"),
        ("--sigma", "simulation.sigma", float, "noise standard deviation"),
        ("--data", "simulation.data_file", str, "CSV with columns x,y instead of synthetic data"),
        ("--level", "credible.fit_level", float, "credible level of intervals and band"),
    ],
    "coverage": [
        ("--nus", "coverage.nus", float, "Matérn smoothness values (rows)"),
        ("--sizes", "coverage.sample_sizes", int, "sample sizes (columns)"),
        ("--levels", "credible.levels", float, "credible levels"),
        ("--replicates", "simulation.replicates", int, "replicates per cell"),
        ("--draws", "credible.draws", int, "posterior draws per band"),
    ],
    "asymptotic": [
        ("--alpha", "asymptotic.alpha", float, "smoothness index"),
        ("--level", "asymptotic.level", float, "credible level"),
        ("--h", "asymptotic.h", float, "bandwidth for the finite-h inflation ratio"),
    ],
    "rates": [
        ("--alpha", "rates.alpha", float, "smoothness index of the class"),
        ("--sizes", "rates.sample_sizes", int, "sample sizes"),
        ("--seeds", "rates.seeds", int, "seeds per sample size"),
        ("--class", "rates.smoothness_class", str, "holder or sobolev"),
    ],
    "diagnostics": [
        ("--alpha", "diagnostics.alpha", float, "smoothness index of the spectral prior"),
        ("--sizes", "diagnostics.sample_sizes", int, "sample sizes"),
        ("--seeds", "diagnostics.seeds", int, "seeds per sample size"),
    ],
}
LIST_KEYS = {"coverage.nus", "coverage.sample_sizes", "credible.levels", "rates.sample_sizes",
             "diagnostics.sample_sizes"}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gpcover", description="GP credible sets and their frequentist coverage")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command, flags in SUBCOMMAND_FLAGS.items():
        sub = subparsers.add_parser(command)
        sub.add_argument("--config", type=Path, help="YAML config file (flat dotted keys)")
        sub.add_argument("--set", dest="assignments", action="append", default=[], metavar="KEY=VALUE",
                         help="override any config key; repeatable")
        for flag, key, kind, help_text in COMMON_FLAGS + flags:
            extra = {"nargs": "+"} if key in LIST_KEYS else {}
            sub.add_argument(flag, dest=key, type=kind, default=argparse.SUPPRESS, help=help_text, **extra)
        if command == "coverage":
            sub.add_argument("--no-theory", dest="coverage.theory", action="store_false", default=argparse.SUPPRESS,
                             help="skip population predictions")
    return parser


def configure_logging(level: str = "INFO", log_dir: Optional[Path] = None) -> None:
    """Root logging to a file under ~/.gpcover/logs and to stderr."""
    log_dir = log_dir or Path.home() / ".gpcover" / "logs"
    handlers: List[logging.Handler] = [logging.StreamHandler()]
    try:
        log_dir.mkdir(parents=True, exist_ok=True)
        handlers.insert(0, logging.FileHandler(log_dir / "gpcover.log", encoding="utf-8"))
    except OSError as e:
        print(f"Cannot create log directory {log_dir}: {e}", file=sys.stderr)
    logging.basicConfig(level=level, format=LOG_FORMAT, handlers=handlers)


class AppBootstrap:
    """Parses arguments, resolves configuration and runs one subcommand."""

    def __init__(self, argv: Optional[List[str]] = None, view: Optional[ConsoleView] = None):
        self.args = build_parser().parse_args(argv)
        self.view = view or ConsoleView()

    def overrides(self) -> Dict[str, Any]:
        """--set assignments first, dedicated flags on top."""
        values = dict(ConfigRepository.parse_assignment(text) for text in self.args.assignments)
        values.update({key: value for key, value in vars(self.args).items() if "." in key})
        return values

    def run(self) -> int:
        try:
            settings = ConfigRepository(self.args.config).load(self.overrides())
            level = logging.getLevelName(settings.runtime.log_level.upper())
            if not isinstance(level, int):
                raise ConfigError(f"unknown log level {settings.runtime.log_level}")
            logging.getLogger().setLevel(level)
            manager = ExperimentManager(settings, self.args.command)
            result = manager.run()
        except ConfigError as e:
            logger.error(f"Configuration error: {e}")
            return EXIT_CONFIG_ERROR
        except NumericalError as e:
            logger.error(f"Numerical failure: {e}")
            return EXIT_NUMERICAL_ERROR
        self._show(result)
        return EXIT_OK

    def _show(self, result: Any) -> None:
        command = self.args.command
        if command == "fit":
            self.view.show_fit(result)
        elif command == "coverage":
            self.view.show_coverage(result)
        elif command == "asymptotic":
            self.view.show_asymptotic(result)
        elif command == "rates":
            self.view.show_rates(result)
        elif command == "diagnostics":
            self.view.show_diagnostics(result)


def main(argv: Optional[List[str]] = None) -> int:
    return AppBootstrap(argv).run()


def run_application():
    """Console entry point."""
    configure_logging()

    def exception_hook(exc_type, exc_value, exc_traceback):
        logger.critical("Unhandled exception", exc_info=(exc_type, exc_value, exc_traceback))
        sys.__excepthook__(exc_type, exc_value, exc_traceback)

    sys.excepthook = exception_hook

    try:
        sys.exit(main())
    except SystemExit:
        raise
    except Exception as e:
        logger.critical(f"Unhandled exception in main: {e}", exc_info=True)
        sys.exit(EXIT_FAILURE)
