from .console import ConsoleView, ProgressReporter

__all__ = ['ConsoleView', 'ProgressReporter']
