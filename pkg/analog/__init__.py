"""
Analog Package
Behavioral DAC, reconstruction filter and V-I output stage
"""

from .dac import dac_polarities, dac_waveform, draw_unit_caps
from .filters import lpf_apply, lpf_sos, soft_limit
from .models import AnalogConfig, AnalogConfigError, ResetMode, Waveform, WaveformError
from .vi_converter import driving_error, v_to_i

__all__ = [
    'AnalogConfig',
    'AnalogConfigError',
    'ResetMode',
    'Waveform',
    'WaveformError',
    'dac_polarities',
    'dac_waveform',
    'draw_unit_caps',
    'driving_error',
    'lpf_apply',
    'lpf_sos',
    'soft_limit',
    'v_to_i',
]
