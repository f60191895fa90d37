"""
Analog Models
Configuration, reset modes and sampled waveforms for the analog back end
"""
import math
from dataclasses import dataclass, fields, replace
from enum import Enum
from typing import Optional

import numpy as np

# unit capacitors per polarity (3-bit thermometer code)
N_UNIT_ELEMENTS = 7


class AnalogConfigError(ValueError):
    """Invalid analog parameter; `key` names the offending field"""

    def __init__(self, key: str, reason: str):
        super().__init__(f"{key}: {reason}")
        self.key = key
        self.reason = reason


class WaveformError(ValueError):
    """Malformed waveform or mismatched stream lengths"""


class ResetMode(Enum):
    FULL_PERIOD = "FULL_PERIOD"
    HALF_PERIOD = "HALF_PERIOD"

    @classmethod
    def parse(cls, text: str) -> "ResetMode":
        try:
            return cls(str(text).strip().upper())
        except ValueError:
            choices = " | ".join(m.value for m in cls)
            raise ValueError(f"expected {choices}, got {text!r}") from None


_POSITIVE = ("clock_hz", "vref", "unit_cap_f", "lpf_fc_hz", "lpf_q", "gm_a_per_v", "r_out_ohm")
_NON_NEGATIVE = ("mismatch_sigma", "temperature_k", "settle_tau_s", "q_inject_v",
                 "glitch_area_vs", "lpf_swing_v")


@dataclass(frozen=True)
class AnalogConfig:
    """
    Behavioral DAC, filter and V-I parameters

    The unit capacitance and the non-ideality magnitudes are modeling
    assumptions; scripts/sweep_unit_cap.py shows how the HP-vs-FP gap moves with C.
    """
    clock_hz: float = 2.56e6
    sub_steps: int = 64
    vref: float = 0.5
    unit_cap_f: float = 1e-12
    mismatch_sigma: float = 0.005
    temperature_k: float = 300.0
    settle_tau_s: float = 1e-8
    q_inject_v: float = 2e-4
    glitch_area_vs: float = 8.5e-12
    reset_mode: ResetMode = ResetMode.HALF_PERIOD
    lpf_fc_hz: float = 40e3
    lpf_q: float = 0.7071
    lpf_swing_v: float = 0.0
    gm_a_per_v: float = 1.4e-5
    r_out_ohm: float = 2e5
    seed: int = 1

    def __post_init__(self):
        for key in _POSITIVE:
            value = getattr(self, key)
            if not math.isfinite(value) or value <= 0:
                raise AnalogConfigError(key, f"must be > 0, got {value}")
        for key in _NON_NEGATIVE:
            value = getattr(self, key)
            if not math.isfinite(value) or value < 0:
                raise AnalogConfigError(key, f"must be >= 0, got {value}")
        if self.sub_steps < 2 or self.sub_steps % 2:
            raise AnalogConfigError("sub_steps", f"must be even and >= 2, got {self.sub_steps}")
        if not isinstance(self.reset_mode, ResetMode):
            raise AnalogConfigError("reset_mode", f"must be a ResetMode, got {self.reset_mode!r}")
        if self.seed < 0:
            raise AnalogConfigError("seed", f"must be >= 0, got {self.seed}")

    @property
    def sample_rate_hz(self) -> float:
        return self.clock_hz * self.sub_steps

    @property
    def dt(self) -> float:
        return 1.0 / self.sample_rate_hz

    def with_mode(self, mode: ResetMode) -> "AnalogConfig":
        return replace(self, reset_mode=mode)

    def ideal(self) -> "AnalogConfig":
        """Same config with every DAC non-ideality switched off"""
        return replace(self, mismatch_sigma=0.0, temperature_k=0.0, settle_tau_s=0.0,
                       q_inject_v=0.0, glitch_area_vs=0.0)

    @classmethod
    def field_names(cls):
        return [f.name for f in fields(cls)]


@dataclass
class Waveform:
    """Uniformly sampled signal in volts or amperes"""
    sample_rate_hz: float
    samples: np.ndarray
    unit: str = "V"

    def __post_init__(self):
        self.samples = np.asarray(self.samples, dtype=np.float64)
        if self.samples.ndim != 1 or self.samples.size == 0:
            raise WaveformError(f"waveform needs a non-empty 1-D sample array, got shape {self.samples.shape}")
        if not self.sample_rate_hz > 0:
            raise WaveformError(f"sample rate must be positive, got {self.sample_rate_hz}")

    def __len__(self) -> int:
        return self.samples.size

    @property
    def duration_s(self) -> float:
        return self.samples.size / self.sample_rate_hz

    def times(self) -> np.ndarray:
        return np.arange(self.samples.size) / self.sample_rate_hz

    def window(self, start: int, count: Optional[int] = None) -> "Waveform":
        """Sub-record of `count` samples from `start` (to the end when count is None)"""
        stop = self.samples.size if count is None else start + count
        if start < 0 or stop > self.samples.size or stop <= start:
            raise WaveformError(f"window [{start}, {stop}) outside {self.samples.size} samples")
        return Waveform(self.sample_rate_hz, self.samples[start:stop].copy(), self.unit)

    def tail(self, count: int) -> "Waveform":
        return self.window(self.samples.size - count, count)
