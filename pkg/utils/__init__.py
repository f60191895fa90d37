"""
Utils Package
Kernel compilation options and artifact writers
"""

from .csv_export import format_value, read_columns, write_columns, write_key_values
from .jit import kernel_opts

__all__ = [
    'format_value',
    'kernel_opts',
    'read_columns',
    'write_columns',
    'write_key_values',
]
