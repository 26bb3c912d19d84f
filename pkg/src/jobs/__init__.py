"""
Batch job runner
"""
from .cli import COMMANDS, EXIT_CHECK_FAILED, EXIT_INTERNAL, EXIT_INVALID, EXIT_OK, JobConfig, run

__all__ = [
    'COMMANDS',
    'EXIT_CHECK_FAILED',
    'EXIT_INTERNAL',
    'EXIT_INVALID',
    'EXIT_OK',
    'JobConfig',
    'run',
]
