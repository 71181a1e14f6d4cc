"""Sub-commands of the labelfrag command line."""

from . import allocate, annotate, fillers, fragment, generate, query, reassemble, stats

COMMANDS = (annotate, fragment, allocate, query, reassemble, stats, generate, fillers)

__all__ = ['COMMANDS']
