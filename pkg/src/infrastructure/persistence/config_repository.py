"""
YAML-backed experiment configuration with flat dotted keys (`simulation.n: 200`).

Precedence, lowest first: built-in defaults, environment (GPCOVER_SEED,
GPCOVER_WORKERS), the config file, command-line overrides.
"""
import logging
import os
from dataclasses import asdict, fields
from pathlib import Path
from typing import Any, Dict, Mapping, Optional

import yaml

from ...domain.errors import ConfigError
from ...domain.settings import ExperimentSettings

logger = logging.getLogger(__name__)

RESOLVED_CONFIG_NAME = "resolved_config.yaml"
ENV_OVERRIDES = {
    "GPCOVER_SEED": "runtime.seed",
    "GPCOVER_WORKERS": "runtime.workers",
}
# keys that change how a run executes but never what it produces
NON_REPRODUCIBLE_KEYS = ("runtime.workers", "runtime.log_level", "output.directory")


def _flatten_mapping(data: Mapping[str, Any], prefix: str = "") -> Dict[str, Any]:
    flat = {}
    for key, value in data.items():
        name = f"{prefix}{key}"
        if isinstance(value, Mapping):
            flat.update(_flatten_mapping(value, f"{name}."))
        else:
            flat[name] = value
    return flat


def _coerce(key: str, value: Any, default: Any) -> Any:
    """Convert `value` to the type of the field's default."""
    try:
        if isinstance(default, bool):
            if isinstance(value, bool):
                return value
            if isinstance(value, str) and value.lower() in ("true", "false", "yes", "no"):
                return value.lower() in ("true", "yes")
            raise ValueError(f"expected a boolean, got {value!r}")
        if isinstance(default, int):
            if isinstance(value, bool) or (isinstance(value, float) and not value.is_integer()):
                raise ValueError(f"expected an integer, got {value!r}")
            return int(value)
        if isinstance(default, float):
            if isinstance(value, bool):
                raise ValueError(f"expected a number, got {value!r}")
            return float(value)
        if isinstance(default, list):
            items = value if isinstance(value, list) else [value]
            element = default[0] if default else 0.0
            return [_coerce(key, item, element) for item in items]
        if value is None:
            return ""
        return str(value)
    except (TypeError, ValueError) as e:
        raise ConfigError(f"invalid value for {key}: {e}") from e


class ConfigRepository:
    def __init__(self, config_file: Optional[Path] = None, environ: Optional[Mapping[str, str]] = None):
        self.config_file = Path(config_file) if config_file else None
        self.environ = os.environ if environ is None else environ
        logger.debug(f"Config repository initialized with file: {self.config_file}")

    def load(self, overrides: Optional[Mapping[str, Any]] = None) -> ExperimentSettings:
        """Resolve settings from all layers and validate them."""
        settings = ExperimentSettings()
        self.apply(settings, self._environment_values(), source="environment")
        if self.config_file is not None:
            self.apply(settings, self.read_file(self.config_file), source=str(self.config_file))
        if overrides:
            self.apply(settings, dict(overrides), source="command line")
        settings.validate()
        logger.info(f"Configuration resolved: seed={settings.runtime.seed}, workers={settings.runtime.workers}")
        return settings

    def _environment_values(self) -> Dict[str, Any]:
        values = {}
        for variable, key in ENV_OVERRIDES.items():
            if self.environ.get(variable):
                values[key] = self.environ[variable]
                logger.info(f"Using {variable}={self.environ[variable]} for {key}")
        return values

    @staticmethod
    def read_file(path: Path) -> Dict[str, Any]:
        """Flat dotted-key mapping from a YAML file; nested sections are flattened."""
        logger.info(f"Loading config from {path}")
        try:
            with open(path, "r", encoding="utf-8") as f:
                data = yaml.safe_load(f)
        except OSError as e:
            raise ConfigError(f"cannot read config file {path}: {e}") from e
        except yaml.YAMLError as e:
            raise ConfigError(f"config file {path} is not valid YAML: {e}") from e
        if data is None:
            return {}
        if not isinstance(data, Mapping):
            raise ConfigError(f"config file {path} must contain a mapping of keys to values")
        return _flatten_mapping(data)

    @staticmethod
    def parse_assignment(text: str) -> tuple:
        """`key=value` from the command line; the value is parsed as YAML."""
        if "=" not in text:
            raise ConfigError(f"override must look like key=value, got {text!r}")
        key, raw = text.split("=", 1)
        try:
            value = yaml.safe_load(raw)
        except yaml.YAMLError as e:
            raise ConfigError(f"cannot parse override {text!r}: {e}") from e
        return key.strip(), value

    @staticmethod
    def apply(settings: ExperimentSettings, values: Mapping[str, Any], source: str = "") -> None:
        """Write dotted-key values into `settings`; unknown keys are errors."""
        for key, value in values.items():
            section_name, _, field_name = str(key).partition(".")
            section = getattr(settings, section_name, None) if field_name else None
            known = {f.name for f in fields(section)} if section is not None else set()
            if field_name not in known:
                raise ConfigError(f"unknown config key {key!r}" + (f" in {source}" if source else ""))
            setattr(section, field_name, _coerce(key, value, getattr(section, field_name)))

    @staticmethod
    def flatten(settings: ExperimentSettings) -> Dict[str, Any]:
        """Every key with its resolved value, defaults included."""
        return dict(sorted(_flatten_mapping(asdict(settings)).items()))

    @classmethod
    def reproducible(cls, settings: ExperimentSettings) -> Dict[str, Any]:
        """Resolved config without keys that cannot change results."""
        return {k: v for k, v in cls.flatten(settings).items() if k not in NON_REPRODUCIBLE_KEYS}

    @classmethod
    def save(cls, settings: ExperimentSettings, directory: Path) -> Path:
        """Write the resolved config so the run can be repeated with --config."""
        path = Path(directory) / RESOLVED_CONFIG_NAME
        path.parent.mkdir(parents=True, exist_ok=True)
        try:
            with open(path, "w", encoding="utf-8") as f:
                yaml.safe_dump(cls.flatten(settings), f, sort_keys=True, default_flow_style=None)
        except OSError as e:
            raise ConfigError(f"cannot write {path}: {e}") from e
        logger.info(f"Resolved config written to {path}")
        return path
