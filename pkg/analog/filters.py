"""
Reconstruction Filter
Second-order low-pass (gm-C) model and optional output-swing limiting
"""
import logging
import math

import numpy as np
from scipy import signal

from .models import AnalogConfig, AnalogConfigError, Waveform

logger = logging.getLogger(__name__)


def lpf_sos(fc_hz: float, q: float, sample_rate_hz: float) -> np.ndarray:
    """
    Bilinear-transform design of w0^2 / (s^2 + s*w0/Q + w0^2), prewarped at fc

    The numerator is renormalized so the DC gain is exactly one.
    """
    if fc_hz >= sample_rate_hz / 2:
        raise AnalogConfigError(
            "lpf_fc_hz", f"{fc_hz:g} Hz must be below Nyquist ({sample_rate_hz / 2:g} Hz)"
        )
    w0 = 2.0 * sample_rate_hz * math.tan(math.pi * fc_hz / sample_rate_hz)
    b, a = signal.bilinear([w0 * w0], [1.0, w0 / q, w0 * w0], fs=sample_rate_hz)
    b = b * (a.sum() / b.sum())
    return signal.tf2sos(b, a)


def lpf_apply(w: Waveform, cfg: AnalogConfig) -> Waveform:
    """Filter a waveform at its own sample rate from a zero initial state"""
    sos = lpf_sos(cfg.lpf_fc_hz, cfg.lpf_q, w.sample_rate_hz)
    filtered = signal.sosfilt(sos, w.samples)
    logger.debug(f"LPF fc={cfg.lpf_fc_hz:g} Hz Q={cfg.lpf_q:g} over {len(w)} samples")
    return Waveform(w.sample_rate_hz, filtered, w.unit)


def soft_limit(w: Waveform, swing_v: float) -> Waveform:
    """tanh compression to +/-swing_v; swing_v = 0 leaves the waveform untouched"""
    if swing_v < 0:
        raise AnalogConfigError("lpf_swing_v", f"must be >= 0, got {swing_v}")
    if swing_v == 0:
        return w
    return Waveform(w.sample_rate_hz, swing_v * np.tanh(w.samples / swing_v), w.unit)
