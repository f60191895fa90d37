"""
Dither PRNG
9-bit Fibonacci LFSR, polynomial x^9 + x^5 + 1
"""
from typing import Tuple

LFSR_BITS = 9
LFSR_MASK = (1 << LFSR_BITS) - 1
LFSR_PERIOD = LFSR_MASK  # 511 for a maximal-length 9-bit register
FEEDBACK_TAP = 5
# second dither output, read from the freshly shifted state
STAGE3_TAP = 4


class LfsrError(ValueError):
    """Invalid LFSR state"""


def validate_seed(state: int) -> int:
    if not isinstance(state, int) or isinstance(state, bool):
        raise LfsrError(f"LFSR state must be an int, got {type(state).__name__}")
    if state <= 0 or state > LFSR_MASK:
        raise LfsrError(f"LFSR state must be in [1, {LFSR_MASK}], got {state}")
    return state


def lfsr_step(state: int) -> Tuple[int, int]:
    """
    Advance the register by one shift

    Bit i of the state holds sequence element a[n+i]; the new element
    a[n+9] = a[n] xor a[n+5] enters at bit 8 and a[n] is shifted out.

    Returns:
        (new_state, shifted-out bit)
    """
    validate_seed(state)
    bit = state & 1
    feedback = (state ^ (state >> FEEDBACK_TAP)) & 1
    new_state = (state >> 1) | (feedback << (LFSR_BITS - 1))
    return new_state, bit


def stage3_bit(state: int) -> int:
    return (state >> STAGE3_TAP) & 1
