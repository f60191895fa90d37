"""
Pseudo-Sine Lookup Table
Phase accumulator and quantized sine memory of the digital front end
"""
import logging
from dataclasses import dataclass
from typing import Tuple

import numpy as np

logger = logging.getLogger(__name__)


class LutError(ValueError):
    """Invalid table parameters or analysis request"""


@dataclass(frozen=True)
class SineLut:
    """
    Signed integer sine table, one entry per clock of an output period

    The table is built by build_lut; direct construction is validated so a
    hand-made table still honours the range and symmetry rules.
    """
    depth: int
    amp_bits: int
    amplitude: int
    table: np.ndarray

    def __post_init__(self):
        table = np.asarray(self.table, dtype=np.int64)
        object.__setattr__(self, "table", table)
        table.setflags(write=False)

        if table.shape != (self.depth,):
            raise LutError(f"table length {table.shape} does not match depth {self.depth}")
        limit = max_code(self.amp_bits)
        if np.any(np.abs(table) > limit):
            raise LutError(f"table codes exceed ±{limit} for {self.amp_bits}-bit storage")
        if self.depth % 4 != 0:
            raise LutError(f"depth must be a multiple of 4, got {self.depth}")
        half = self.depth // 2
        if not np.array_equal(table[half:], -table[:half]):
            raise LutError("table is not half-wave antisymmetric")
        # sin(pi - x) = sin(x): entry k mirrors entry half - k
        k = np.arange(1, self.depth // 4 + 1)
        if not np.array_equal(table[half - k], table[k]):
            raise LutError("table is not quarter-wave symmetric")

    def __len__(self) -> int:
        return self.depth

    def __getitem__(self, index: int) -> int:
        return int(self.table[index])


@dataclass(frozen=True)
class PhaseAccumulator:
    """Rotational counter addressing the table"""
    counter: int = 0
    depth: int = 128

    def __post_init__(self):
        if self.depth <= 0:
            raise LutError(f"accumulator depth must be positive, got {self.depth}")
        if not 0 <= self.counter < self.depth:
            raise LutError(f"counter {self.counter} outside [0, {self.depth})")


def max_code(amp_bits: int) -> int:
    """Largest magnitude a signed code of amp_bits can hold symmetrically"""
    return (1 << (amp_bits - 1)) - 1


def round_half_away(values: np.ndarray) -> np.ndarray:
    return np.sign(values) * np.floor(np.abs(values) + 0.5)


def build_lut(amp_bits: int = 9, depth: int = 128, amplitude: int = 255) -> SineLut:
    """
    Build the quantized sine table

    table[k] = round(amplitude * sin(2*pi*k/depth)), rounding half away from
    zero. Half-wave antisymmetry and quarter-wave symmetry then hold by
    construction because sin shares them and the rounding is odd.

    Args:
        amp_bits: Signed code width
        depth: Entries per period, divisible by 4
        amplitude: Peak code magnitude

    Returns:
        SineLut
    """
    if amp_bits < 2:
        raise LutError(f"amp_bits must be at least 2, got {amp_bits}")
    if depth <= 0 or depth % 4 != 0:
        raise LutError(f"depth must be a positive multiple of 4, got {depth}")
    if amplitude < 0 or amplitude > max_code(amp_bits):
        raise LutError(
            f"amplitude {amplitude} overflows {amp_bits}-bit codes (max {max_code(amp_bits)})"
        )

    k = np.arange(depth // 4 + 1)
    first_quarter = round_half_away(amplitude * np.sin(2.0 * np.pi * k / depth)).astype(np.int64)
    # exact quarter-wave mirror; avoids sin() rounding asymmetry near pi/2
    quarter = depth // 4
    first_half = np.concatenate([first_quarter, first_quarter[quarter - 1:0:-1]])
    table = np.concatenate([first_half, -first_half])

    logger.debug(f"Built {depth}-entry, {amp_bits}-bit sine table with amplitude {amplitude}")
    return SineLut(depth=depth, amp_bits=amp_bits, amplitude=amplitude, table=table)


def step_phase(acc: PhaseAccumulator) -> Tuple[PhaseAccumulator, int]:
    """Return the next accumulator and the pre-increment table index"""
    index = acc.counter
    return PhaseAccumulator(counter=(acc.counter + 1) % acc.depth, depth=acc.depth), index


def lut_stream(lut: SineLut, n_samples: int, start: int = 0) -> np.ndarray:
    """Table output for n_samples consecutive accumulator steps from counter `start`"""
    if n_samples < 0:
        raise LutError(f"n_samples must be non-negative, got {n_samples}")
    if not 0 <= start < lut.depth:
        raise LutError(f"start {start} outside [0, {lut.depth})")
    indices = (start + np.arange(n_samples, dtype=np.int64)) % lut.depth
    return lut.table[indices]


def fundamental_hz(lut: SineLut, clock_hz: float) -> float:
    return clock_hz / lut.depth


def lut_spur_level(lut: SineLut, band_hz: float, clock_hz: float, periods: int = 1) -> float:
    """
    Worst in-band spur of the table itself, in dBc

    Runs an exact-length FFT over `periods` full table periods (coherent,
    rectangular window) and returns the largest bin in (0, band_hz] other than
    the fundamental, relative to the fundamental.

    Args:
        lut: Table to analyse
        band_hz: Upper edge of the band
        clock_hz: Table read rate
        periods: Number of table periods in the record

    Returns:
        Worst spur in dBc (negative)
    """
    if periods < 1:
        raise LutError(f"periods must be >= 1, got {periods}")
    n = lut.depth * periods
    bin_hz = clock_hz / n
    if band_hz < bin_hz:
        raise LutError(f"band {band_hz:g} Hz narrower than one bin ({bin_hz:g} Hz)")
    if band_hz >= clock_hz / 2:
        raise LutError(f"band {band_hz:g} Hz must stay below Nyquist ({clock_hz / 2:g} Hz)")

    record = np.tile(lut.table.astype(np.float64), periods)
    power = np.abs(np.fft.rfft(record)) ** 2
    fundamental_bin = periods
    if power[fundamental_bin] == 0.0:
        raise LutError("table has no fundamental (amplitude 0)")

    last_bin = int(np.floor(band_hz / bin_hz + 1e-9))
    candidates = np.arange(1, last_bin + 1)
    candidates = candidates[candidates != fundamental_bin]
    if candidates.size == 0:
        return float("-inf")
    worst = power[candidates].max()
    if worst <= 0.0:
        return float("-inf")
    return float(10.0 * np.log10(worst / power[fundamental_bin]))
