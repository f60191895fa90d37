"""
Spectral Analyzer
Coherent rectangular-window FFT metrics: THD, SFDR, in-band spurs and noise
"""
import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Tuple, Union

import numpy as np

from analog.models import Waveform
from utils.csv_export import write_columns

logger = logging.getLogger(__name__)

N_HARMONICS = 20
COHERENCE_TOL = 1e-6


class SpectralError(ValueError):
    """Record cannot be analysed as requested"""


@dataclass
class Spectrum:
    """
    Single-sided spectrum of a coherent record

    power[k] is the mean-square content of bin k, so power.sum() equals the
    mean square of the record. mags_db is the same data relative to the
    fundamental bin.
    """
    bin_hz: float
    mags_db: np.ndarray
    fundamental_bin: int
    power: np.ndarray

    @property
    def n_bins(self) -> int:
        return self.power.size

    @property
    def freqs_hz(self) -> np.ndarray:
        return np.arange(self.power.size) * self.bin_hz

    @property
    def fundamental_power(self) -> float:
        return float(self.power[self.fundamental_bin])

    def band_bins(self, band_hz: float) -> np.ndarray:
        """Bins 1..floor(band/bin_hz); DC is never part of a band"""
        if band_hz < self.bin_hz:
            raise SpectralError(f"band {band_hz:g} Hz narrower than one bin ({self.bin_hz:g} Hz)")
        last = min(int(math.floor(band_hz / self.bin_hz + 1e-9)), self.power.size - 1)
        return np.arange(1, last + 1)

    def harmonic_bins(self, n_harmonics: int = N_HARMONICS) -> np.ndarray:
        """Bins of harmonics 2..n_harmonics, folded about Nyquist"""
        n_fft = 2 * (self.power.size - 1)
        bins = (np.arange(2, n_harmonics + 1) * self.fundamental_bin) % n_fft
        return np.where(bins > n_fft // 2, n_fft - bins, bins)

    def noise_bins(self, band_hz: float, n_harmonics: int = N_HARMONICS) -> np.ndarray:
        bins = self.band_bins(band_hz)
        excluded = np.append(self.harmonic_bins(n_harmonics), self.fundamental_bin)
        return bins[~np.isin(bins, excluded)]


@dataclass
class Metrics:
    thd_pct: float
    sfdr_dbc: float
    worst_spur_dbc: float
    inband_noise_dbc: float
    band_hz: float
    sndr_db: float
    fundamental_rms: float

    def as_dict(self) -> dict:
        return {
            "thd_pct": self.thd_pct,
            "sfdr_dbc": self.sfdr_dbc,
            "worst_spur_dbc": self.worst_spur_dbc,
            "inband_noise_dbc": self.inband_noise_dbc,
            "sndr_db": self.sndr_db,
            "fundamental_rms": self.fundamental_rms,
            "band_hz": self.band_hz,
        }


def _db(ratio: float) -> float:
    return 10.0 * math.log10(ratio) if ratio > 0 else float("-inf")


def power_spectrum(w: Waveform, f0: float) -> Spectrum:
    """
    Single-sided power spectrum of a coherent record

    Raises:
        SpectralError: f0 does not fall on an FFT bin, or has no energy
    """
    x = w.samples
    n = x.size
    exact_bin = f0 * n / w.sample_rate_hz
    k0 = int(round(exact_bin))
    if k0 < 1 or abs(exact_bin - k0) > COHERENCE_TOL:
        raise SpectralError(
            f"record of {n} samples at {w.sample_rate_hz:g} Hz holds {exact_bin:.6f} periods of "
            f"{f0:g} Hz; trim it to an integer number of periods"
        )
    if k0 >= n // 2:
        raise SpectralError(f"f0 {f0:g} Hz is not below Nyquist ({w.sample_rate_hz / 2:g} Hz)")

    power = np.abs(np.fft.rfft(x)) ** 2 / float(n) ** 2
    if n % 2 == 0:
        power[1:-1] *= 2.0
    else:
        power[1:] *= 2.0

    p1 = power[k0]
    if p1 <= 0:
        raise SpectralError("record has no energy at the fundamental")
    with np.errstate(divide="ignore"):
        mags_db = 10.0 * np.log10(power / p1)
    return Spectrum(bin_hz=w.sample_rate_hz / n, mags_db=mags_db, fundamental_bin=k0, power=power)


def analyze(w: Waveform, f0: float, band_hz: float,
            n_harmonics: int = N_HARMONICS) -> Tuple[Spectrum, Metrics]:
    """
    Analyse a coherent record

    Args:
        w: Waveform holding an integer number of f0 periods
        f0: Fundamental frequency
        band_hz: Upper edge of the band for SFDR, spurs and noise
        n_harmonics: Highest harmonic index counted in THD

    Returns:
        (Spectrum, Metrics)
    """
    if n_harmonics * f0 >= w.sample_rate_hz / 2:
        raise SpectralError(
            f"harmonic {n_harmonics} of {f0:g} Hz is not below Nyquist ({w.sample_rate_hz / 2:g} Hz)"
        )
    spec = power_spectrum(w, f0)
    power = spec.power
    p1 = spec.fundamental_power
    k0 = spec.fundamental_bin

    harmonics = spec.harmonic_bins(n_harmonics)
    thd_pct = 100.0 * math.sqrt(float(power[harmonics].sum()) / p1)

    band = spec.band_bins(band_hz)
    others = band[band != k0]
    sfdr = -_db(float(power[others].max()) / p1) if others.size else float("inf")

    inband_harmonics = harmonics[np.isin(harmonics, band)]
    worst_spur = _db(float(power[inband_harmonics].max()) / p1) if inband_harmonics.size else float("-inf")

    noise = float(power[spec.noise_bins(band_hz, n_harmonics)].sum())
    metrics = Metrics(
        thd_pct=thd_pct,
        sfdr_dbc=sfdr,
        worst_spur_dbc=worst_spur,
        inband_noise_dbc=_db(noise / p1),
        band_hz=band_hz,
        sndr_db=-_db(float(power[others].sum()) / p1),
        fundamental_rms=math.sqrt(p1),
    )
    logger.debug(
        f"Analysed {len(w)} samples: THD {thd_pct:.4f}% SFDR {sfdr:.2f} dBc "
        f"noise {metrics.inband_noise_dbc:.2f} dBc in {band_hz:g} Hz"
    )
    return spec, metrics


def sndr_db(w: Waveform, f0: float, band_hz: float) -> float:
    """Fundamental over everything else in (0, band_hz]"""
    spec = power_spectrum(w, f0)
    band = spec.band_bins(band_hz)
    others = band[band != spec.fundamental_bin]
    return -_db(float(spec.power[others].sum()) / spec.fundamental_power)


def inband_noise_power(spec: Spectrum, band_hz: float, n_harmonics: int = N_HARMONICS) -> float:
    return float(spec.power[spec.noise_bins(band_hz, n_harmonics)].sum())


def noise_floor_delta(spec_a: Spectrum, spec_b: Spectrum, band_hz: float,
                      n_harmonics: int = N_HARMONICS) -> float:
    """
    In-band noise of spec_a minus that of spec_b, in dB

    Fundamental, DC and harmonics 2..n_harmonics are excluded from both sums.
    """
    if spec_a.n_bins != spec_b.n_bins or not math.isclose(spec_a.bin_hz, spec_b.bin_hz, rel_tol=1e-12):
        raise SpectralError(
            f"bin grids differ: {spec_a.n_bins} x {spec_a.bin_hz:g} Hz vs "
            f"{spec_b.n_bins} x {spec_b.bin_hz:g} Hz"
        )
    noise_a = inband_noise_power(spec_a, band_hz, n_harmonics)
    noise_b = inband_noise_power(spec_b, band_hz, n_harmonics)
    if noise_a == noise_b:
        return 0.0
    if noise_b <= 0:
        return float("inf")
    if noise_a <= 0:
        return float("-inf")
    return 10.0 * math.log10(noise_a / noise_b)


def write_spectrum(path: Union[str, Path], spec: Spectrum, max_hz: float) -> Path:
    """Export freq_hz,dbc rows up to max_hz; empty bins are clamped to -400 dBc"""
    last = min(int(math.floor(max_hz / spec.bin_hz + 1e-9)), spec.n_bins - 1)
    freqs = spec.freqs_hz[:last + 1]
    dbc = np.maximum(spec.mags_db[:last + 1], -400.0)
    return write_columns(path, ["freq_hz", "dbc"], [freqs, dbc], ["%.6f", "%.6f"])
