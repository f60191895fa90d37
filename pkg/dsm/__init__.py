"""
DSM Package
Digital MASH 1-1-1 modulator and its dither generator
"""

from .lfsr import LFSR_PERIOD, LfsrError, lfsr_step
from .mash import (
    CODE_MAX,
    CODE_MIN,
    DAC_OFFSET,
    MODULUS,
    DsmCode,
    DsmError,
    MashRun,
    MashState,
    mash_step,
    modulate,
    modulate_channel,
    to_unsigned,
)

__all__ = [
    'LFSR_PERIOD',
    'LfsrError',
    'lfsr_step',
    'CODE_MAX',
    'CODE_MIN',
    'DAC_OFFSET',
    'MODULUS',
    'DsmCode',
    'DsmError',
    'MashRun',
    'MashState',
    'mash_step',
    'modulate',
    'modulate_channel',
    'to_unsigned',
]
