"""
DDS Package
Pseudo-sine table and phase accumulator
"""

from .lut import (
    LutError,
    PhaseAccumulator,
    SineLut,
    build_lut,
    fundamental_hz,
    lut_spur_level,
    lut_stream,
    step_phase,
)

__all__ = [
    'LutError',
    'PhaseAccumulator',
    'SineLut',
    'build_lut',
    'fundamental_hz',
    'lut_spur_level',
    'lut_stream',
    'step_phase',
]
