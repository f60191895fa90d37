"""
MASH 1-1-1 Modulator
Error-feedback third-order digital delta-sigma modulator with LSB dither
"""
import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from numba import njit

from utils.jit import kernel_opts
from .lfsr import LFSR_BITS, FEEDBACK_TAP, STAGE3_TAP, lfsr_step, stage3_bit, validate_seed

logger = logging.getLogger(__name__)

ACC_BITS = 9
MODULUS = 1 << ACC_BITS
OFFSET = 1 << (ACC_BITS - 1)
CODE_MIN = -3
CODE_MAX = 4
# DsmCode value -3 maps to DAC code 0 (all elements off)
DAC_OFFSET = -CODE_MIN


class DsmError(ValueError):
    """Invalid modulator input or state"""


@dataclass(frozen=True)
class DsmCode:
    """One 8-level modulator output"""
    value: int

    def __post_init__(self):
        if not CODE_MIN <= self.value <= CODE_MAX:
            raise DsmError(f"code {self.value} outside [{CODE_MIN}, {CODE_MAX}]")

    @property
    def dac_code(self) -> int:
        return self.value + DAC_OFFSET


@dataclass(frozen=True)
class MashState:
    """
    Accumulator residues, carry delay line and dither register

    y3_delay holds (y3[n-1], y3[n-2]).
    """
    residue1: int = 0
    residue2: int = 0
    residue3: int = 0
    y2_delay: int = 0
    y3_delay: Tuple[int, int] = (0, 0)
    lfsr: int = 1

    def __post_init__(self):
        for name in ("residue1", "residue2", "residue3"):
            value = getattr(self, name)
            if not 0 <= value < MODULUS:
                raise DsmError(f"{name} {value} outside [0, {MODULUS})")
        delays = (self.y2_delay,) + tuple(self.y3_delay)
        if len(self.y3_delay) != 2 or any(d not in (0, 1) for d in delays):
            raise DsmError(f"delay registers must hold 0/1 values, got {delays}")
        try:
            validate_seed(self.lfsr)
        except ValueError as e:
            raise DsmError(str(e)) from e

    @classmethod
    def seeded(cls, lfsr_seed: int) -> "MashState":
        return cls(lfsr=lfsr_seed)


@dataclass
class MashRun:
    """Output of a modulate() call with per-cycle traces"""
    codes: np.ndarray
    residue3: np.ndarray
    dither2: np.ndarray
    dither3: np.ndarray
    state: MashState

    @property
    def dac_codes(self) -> np.ndarray:
        return self.codes + DAC_OFFSET


def mash_step(x: int, state: MashState, dither_on: bool = True) -> Tuple[DsmCode, MashState]:
    """
    One clock of the modulator (reference implementation of the kernel)

    Stage i adds its input to its residue; the carry out of the 9-bit sum is
    the stage output and the residue feeds the next stage in the same cycle.
    Dither bits enter at the LSB of the stage-2 and stage-3 inputs.

    Args:
        x: Unsigned stage-1 input in [0, 512)
        state: Current state
        dither_on: Inject LFSR dither

    Returns:
        (DsmCode, next MashState)
    """
    if not 0 <= x < MODULUS:
        raise DsmError(f"input {x} outside [0, {MODULUS})")

    lfsr = state.lfsr
    d2 = d3 = 0
    if dither_on:
        lfsr, d2 = lfsr_step(lfsr)
        d3 = stage3_bit(lfsr)

    s1 = state.residue1 + x
    y1, r1 = s1 >> ACC_BITS, s1 & (MODULUS - 1)
    s2 = state.residue2 + r1 + d2
    y2, r2 = s2 >> ACC_BITS, s2 & (MODULUS - 1)
    s3 = state.residue3 + r2 + d3
    y3, r3 = s3 >> ACC_BITS, s3 & (MODULUS - 1)

    y3_prev, y3_prev2 = state.y3_delay
    value = y1 + (y2 - state.y2_delay) + (y3 - 2 * y3_prev + y3_prev2)
    next_state = MashState(
        residue1=r1, residue2=r2, residue3=r3,
        y2_delay=y2, y3_delay=(y3, y3_prev), lfsr=lfsr,
    )
    return DsmCode(value), next_state


@njit(**kernel_opts())
def _mash_kernel(x, r1, r2, r3, y2d, y3d1, y3d2, lfsr, dither_on,
                 codes, r3_trace, d2_trace, d3_trace):
    mask = MODULUS - 1
    for n in range(x.shape[0]):
        d2 = 0
        d3 = 0
        if dither_on:
            d2 = lfsr & 1
            fb = (lfsr ^ (lfsr >> FEEDBACK_TAP)) & 1
            lfsr = (lfsr >> 1) | (fb << (LFSR_BITS - 1))
            d3 = (lfsr >> STAGE3_TAP) & 1

        s1 = r1 + x[n]
        y1 = s1 >> ACC_BITS
        r1 = s1 & mask
        s2 = r2 + r1 + d2
        y2 = s2 >> ACC_BITS
        r2 = s2 & mask
        s3 = r3 + r2 + d3
        y3 = s3 >> ACC_BITS
        r3 = s3 & mask

        codes[n] = y1 + (y2 - y2d) + (y3 - 2 * y3d1 + y3d2)
        y2d = y2
        y3d2 = y3d1
        y3d1 = y3

        r3_trace[n] = r3
        d2_trace[n] = d2
        d3_trace[n] = d3
    return r1, r2, r3, y2d, y3d1, y3d2, lfsr


def modulate(x: np.ndarray, state: Optional[MashState] = None, dither_on: bool = True) -> MashRun:
    """
    Run the modulator over an unsigned input stream

    Args:
        x: Integer stream in [0, 512)
        state: Initial state (all-zero residues, LFSR seed 1 when omitted)
        dither_on: Inject LFSR dither

    Returns:
        MashRun with codes in [-3, 4], the stage-3 residue, dither traces and
        the final state
    """
    state = state or MashState()
    x = np.ascontiguousarray(x, dtype=np.int64)
    if x.ndim != 1:
        raise DsmError(f"input must be one-dimensional, got shape {x.shape}")
    if x.size and (x.min() < 0 or x.max() >= MODULUS):
        raise DsmError(f"input outside [0, {MODULUS}): min {x.min()}, max {x.max()}")

    n = x.size
    codes = np.empty(n, dtype=np.int64)
    r3_trace = np.empty(n, dtype=np.int64)
    d2_trace = np.empty(n, dtype=np.int64)
    d3_trace = np.empty(n, dtype=np.int64)

    r1, r2, r3, y2d, y3d1, y3d2, lfsr = _mash_kernel(
        x, state.residue1, state.residue2, state.residue3,
        state.y2_delay, state.y3_delay[0], state.y3_delay[1],
        state.lfsr, bool(dither_on), codes, r3_trace, d2_trace, d3_trace,
    )
    final = MashState(
        residue1=int(r1), residue2=int(r2), residue3=int(r3),
        y2_delay=int(y2d), y3_delay=(int(y3d1), int(y3d2)), lfsr=int(lfsr),
    )
    return MashRun(codes=codes, residue3=r3_trace, dither2=d2_trace, dither3=d3_trace, state=final)


def to_unsigned(samples: np.ndarray) -> np.ndarray:
    """Offset signed table codes into the modulator's unsigned input range"""
    x = np.asarray(samples, dtype=np.int64) + OFFSET
    if x.size and (x.min() < 0 or x.max() >= MODULUS):
        raise DsmError(
            f"signed samples must lie in [{-OFFSET}, {OFFSET - 1}] before offsetting"
        )
    return x


def modulate_channel(samples: np.ndarray, state_p: MashState, state_n: MashState,
                     dither_on: bool = True) -> Tuple[MashRun, MashRun]:
    """
    Modulate the differential pair

    P modulates +samples and N modulates -samples, each with its own state
    (and so its own dither sequence).

    Returns:
        (P run, N run)
    """
    samples = np.asarray(samples, dtype=np.int64)
    run_p = modulate(to_unsigned(samples), state_p, dither_on)
    run_n = modulate(to_unsigned(-samples), state_n, dither_on)
    logger.debug(
        f"Modulated {samples.size} samples: P mean {run_p.codes.mean():+.4f}, "
        f"N mean {run_n.codes.mean():+.4f}"
    )
    return run_p, run_n
