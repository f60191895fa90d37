"""
DEM Package
Dynamic element matching for the unit-element DAC
"""

from .benefit import dem_benefit, element_sum, mismatch_arms
from .dwa import (
    N_ELEMENTS,
    DemError,
    DwaState,
    dwa_encode,
    encode_stream,
    mask_bits,
    popcount,
    thermometer_stream,
)

__all__ = [
    'N_ELEMENTS',
    'DemError',
    'DwaState',
    'dem_benefit',
    'dwa_encode',
    'element_sum',
    'encode_stream',
    'mask_bits',
    'mismatch_arms',
    'popcount',
    'thermometer_stream',
]
