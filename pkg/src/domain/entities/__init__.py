"""
Domain entities are the objects experiments produce and consume.
"""
from .coverage_report import CoverageReport, standard_error
from .credible_band import CredibleBand
from .dataset import Dataset
from .grid_posterior import GridPosterior
from .run_manifest import RunManifest

__all__ = ['CoverageReport', 'CredibleBand', 'Dataset', 'GridPosterior', 'RunManifest', 'standard_error']
