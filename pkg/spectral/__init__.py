"""
Spectral Package
Coherent FFT metrics for DAC and current-generator outputs
"""

from .analyzer import (
    Metrics,
    SpectralError,
    Spectrum,
    analyze,
    inband_noise_power,
    noise_floor_delta,
    power_spectrum,
    sndr_db,
    write_spectrum,
)

__all__ = [
    'Metrics',
    'SpectralError',
    'Spectrum',
    'analyze',
    'inband_noise_power',
    'noise_floor_delta',
    'power_spectrum',
    'sndr_db',
    'write_spectrum',
]
