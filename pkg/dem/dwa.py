"""
Data-Weighted Averaging
Rotating unit-element selection for the 7-element thermometer DAC
"""
import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from numba import njit

from utils.jit import kernel_opts

logger = logging.getLogger(__name__)

N_ELEMENTS = 7
FULL_MASK = (1 << N_ELEMENTS) - 1


class DemError(ValueError):
    """Invalid element code or encoder state"""


@dataclass(frozen=True)
class DwaState:
    """
    Rotation pointer plus per-element selection counts

    usage[i] counts how many cycles element i has been switched on since the
    state was created.
    """
    pointer: int = 0
    usage: Tuple[int, ...] = (0,) * N_ELEMENTS
    n_elements: int = N_ELEMENTS

    def __post_init__(self):
        if self.n_elements != N_ELEMENTS:
            raise DemError(f"encoder supports {N_ELEMENTS} elements, got {self.n_elements}")
        if not 0 <= self.pointer < self.n_elements:
            raise DemError(f"pointer {self.pointer} outside [0, {self.n_elements})")
        if len(self.usage) != self.n_elements:
            raise DemError(f"usage needs {self.n_elements} counters, got {len(self.usage)}")
        object.__setattr__(self, "usage", tuple(int(u) for u in self.usage))


def _check_codes(codes: np.ndarray) -> np.ndarray:
    codes = np.ascontiguousarray(codes, dtype=np.int64)
    if codes.ndim != 1:
        raise DemError(f"codes must be one-dimensional, got shape {codes.shape}")
    if codes.size and (codes.min() < 0 or codes.max() > N_ELEMENTS):
        raise DemError(f"element codes must lie in [0, {N_ELEMENTS}]: min {codes.min()}, max {codes.max()}")
    return codes


def dwa_encode(code: int, state: DwaState) -> Tuple[int, DwaState]:
    """
    Select `code` elements starting at the pointer and advance it

    Args:
        code: Element count in [0, 7] (DsmCode value + 3)
        state: Encoder state

    Returns:
        (element mask with bit i = element i, next DwaState)
    """
    if not 0 <= code <= state.n_elements:
        raise DemError(f"element code {code} outside [0, {state.n_elements}]")

    usage = list(state.usage)
    mask = 0
    for j in range(code):
        element = (state.pointer + j) % state.n_elements
        mask |= 1 << element
        usage[element] += 1
    pointer = (state.pointer + code) % state.n_elements
    return mask, DwaState(pointer=pointer, usage=tuple(usage), n_elements=state.n_elements)


@njit(**kernel_opts())
def _dwa_kernel(codes, pointer, n_elements, usage, masks):
    for n in range(codes.shape[0]):
        code = codes[n]
        mask = 0
        for j in range(code):
            element = (pointer + j) % n_elements
            mask |= 1 << element
            usage[element] += 1
        masks[n] = mask
        pointer = (pointer + code) % n_elements
    return pointer


def encode_stream(codes: np.ndarray, state: Optional[DwaState] = None) -> Tuple[np.ndarray, DwaState]:
    """Vectorized dwa_encode over a code stream; returns uint8 masks and the final state"""
    state = state or DwaState()
    codes = _check_codes(codes)
    usage = np.array(state.usage, dtype=np.int64)
    masks = np.empty(codes.size, dtype=np.uint8)
    pointer = _dwa_kernel(codes, state.pointer, state.n_elements, usage, masks)
    return masks, DwaState(pointer=int(pointer), usage=tuple(usage.tolist()), n_elements=state.n_elements)


def thermometer_stream(codes: np.ndarray) -> np.ndarray:
    """Fixed selection: elements 0..code-1 every cycle"""
    codes = _check_codes(codes)
    return ((1 << codes) - 1).astype(np.uint8)


def mask_bits(masks: np.ndarray) -> np.ndarray:
    """Unpack masks into a (cycles, 7) 0/1 matrix, column i = element i"""
    masks = np.asarray(masks, dtype=np.int64)
    return (masks[:, None] >> np.arange(N_ELEMENTS)) & 1


def popcount(masks: np.ndarray) -> np.ndarray:
    return mask_bits(masks).sum(axis=1)
