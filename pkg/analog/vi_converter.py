"""
V-I Converter
Transconductor with finite output resistance driving a resistive electrode load
"""
from typing import Tuple

from .models import AnalogConfig, Waveform, WaveformError


def driving_error(load_ohm: float, r_out_ohm: float) -> float:
    """Fraction of the ideal current lost in the r_out / load divider"""
    return load_ohm / (r_out_ohm + load_ohm)


def v_to_i(w: Waveform, load_ohm: float, cfg: AnalogConfig) -> Tuple[Waveform, float]:
    """
    Convert the filtered voltage into the delivered load current

    Args:
        w: Filter output in volts
        load_ohm: Load resistance, >= 0
        cfg: Supplies gm_a_per_v and r_out_ohm

    Returns:
        (current waveform in amperes, driving error as a fraction)
    """
    if load_ohm < 0:
        raise WaveformError(f"load must be >= 0 ohm, got {load_ohm}")
    error = driving_error(load_ohm, cfg.r_out_ohm)
    current = cfg.gm_a_per_v * w.samples * (1.0 - error)
    return Waveform(w.sample_rate_hz, current, unit="A"), error
