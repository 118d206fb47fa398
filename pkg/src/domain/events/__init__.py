"""
Domain events represent something significant that has happened in the domain.
They are used to report experiment progress to the application layer.
"""
from .simulation_events import ExperimentCompleted, ReplicateCompleted, ReplicateFailed, SimulationEvent

__all__ = ['ExperimentCompleted', 'ReplicateCompleted', 'ReplicateFailed', 'SimulationEvent']
