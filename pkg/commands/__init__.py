"""
Commands Package
One handler per CLI subcommand, each returning a process exit code
"""

from .base import EXIT_BAD_INPUT, EXIT_FAILURE, EXIT_OK, resolve_config
from .chain_commands import cmd_compare_reset, cmd_simulate, cmd_sweep_load
from .digital_commands import cmd_emit_lut, cmd_modulate

__all__ = [
    'EXIT_BAD_INPUT',
    'EXIT_FAILURE',
    'EXIT_OK',
    'cmd_compare_reset',
    'cmd_emit_lut',
    'cmd_modulate',
    'cmd_simulate',
    'cmd_sweep_load',
    'resolve_config',
]
