"""
Result files. CSVs open with a `# manifest: {json}` line; JSON files carry a
top-level `manifest` key. Wall-clock times go only to run_info.json so that
every other file is byte-identical across reruns.
"""
import csv
import json
import logging
from pathlib import Path
from typing import Any, Dict, Iterable, List, Sequence

import numpy as np

from ...domain.entities.run_manifest import RunManifest
from ...domain.errors import ConfigError

logger = logging.getLogger(__name__)

RUN_INFO_NAME = "run_info.json"


def format_value(value: Any) -> str:
    """17 significant digits for floats, plain text otherwise."""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".17g")
    return str(value)


def _jsonable(value: Any) -> Any:
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return [_jsonable(v) for v in value.tolist()]
    if isinstance(value, (np.bool_,)):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    return value


class ResultsWriter:
    """Writes the files of one run into its output directory."""

    def __init__(self, directory: Path, manifest: RunManifest):
        self.directory = Path(directory)
        self.manifest = manifest
        try:
            self.directory.mkdir(parents=True, exist_ok=True)
        except OSError as e:
            raise ConfigError(f"cannot create output directory {self.directory}: {e}") from e
        self.written = []
        self.cell_runtimes: List[Dict[str, Any]] = []

    def _manifest_json(self) -> str:
        return json.dumps(_jsonable(self.manifest.to_dict()), sort_keys=True, separators=(",", ":"))

    def write_csv(self, name: str, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> Path:
        path = self.directory / name
        with open(path, "w", newline="", encoding="utf-8") as f:
            f.write(f"# manifest: {self._manifest_json()}\r\n")
            writer = csv.writer(f, lineterminator="\r\n")
            writer.writerow(header)
            for row in rows:
                writer.writerow([format_value(value) for value in row])
        logger.info(f"Wrote {path}")
        self.written.append(path)
        return path

    def write_json(self, name: str, payload: Dict[str, Any]) -> Path:
        path = self.directory / name
        document = {"manifest": _jsonable(self.manifest.to_dict()), **_jsonable(payload)}
        with open(path, "w", encoding="utf-8") as f:
            json.dump(document, f, indent=2, sort_keys=True, allow_nan=True)
            f.write("\n")
        logger.info(f"Wrote {path}")
        self.written.append(path)
        return path

    def record_runtime(self, cell: Dict[str, Any], runtime: Dict[str, Any]) -> None:
        """Keep the timing of one experiment cell for run_info.json."""
        self.cell_runtimes.append({**cell, **runtime})

    def write_run_info(self) -> Path:
        """Manifest plus wall-clock times, per-cell runtimes and the list of written files."""
        path = self.directory / RUN_INFO_NAME
        document = {
            "manifest": _jsonable(self.manifest.to_dict()),
            "wall_clock": self.manifest.wall_clock(),
            "files": sorted(p.name for p in self.written),
            "cell_runtimes": _jsonable(self.cell_runtimes),
        }
        with open(path, "w", encoding="utf-8") as f:
            json.dump(document, f, indent=2, sort_keys=True)
            f.write("\n")
        return path


def read_manifest_line(path: Path) -> Dict[str, Any]:
    """The manifest embedded in the first line of a result CSV."""
    with open(path, "r", encoding="utf-8") as f:
        first = f.readline().strip()
    prefix = "# manifest: "
    if not first.startswith(prefix):
        raise ConfigError(f"{path} has no manifest line")
    return json.loads(first[len(prefix):])
