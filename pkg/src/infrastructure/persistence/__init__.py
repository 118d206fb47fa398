from .config_repository import ConfigRepository
from .results_writer import ResultsWriter, read_manifest_line

__all__ = ['ConfigRepository', 'ResultsWriter', 'read_manifest_line']
