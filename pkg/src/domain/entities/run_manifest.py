"""
RunManifest records how a set of output files was produced.
"""
from dataclasses import dataclass, field
from datetime import datetime
from typing import Any, Dict, Optional


@dataclass
class RunManifest:
    """Subcommand, resolved config, tool version and base seed of a run."""
    subcommand: str
    config: Dict[str, Any]  # reproducibility-relevant keys, all defaults materialized
    version: str
    base_seed: int
    started_at: datetime = field(default_factory=datetime.now)
    finished_at: Optional[datetime] = None

    def to_dict(self) -> Dict[str, Any]:
        """The part embedded in result files; contains no wall-clock values."""
        return {
            "subcommand": self.subcommand,
            "version": self.version,
            "base_seed": self.base_seed,
            "config": dict(sorted(self.config.items())),
        }

    def finish(self) -> None:
        self.finished_at = datetime.now()

    def wall_clock(self) -> Dict[str, Any]:
        finished = self.finished_at or datetime.now()
        return {
            "started_at": self.started_at.isoformat(),
            "finished_at": finished.isoformat(),
            "elapsed_seconds": (finished - self.started_at).total_seconds(),
        }
