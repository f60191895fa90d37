"""
Capacitive DAC
Oversampled behavioral model of the differential 7-element DAC with reset
"""
import logging
import math
from typing import Tuple

import numpy as np
from numba import njit
from scipy import constants

from utils.jit import kernel_opts
from .models import N_UNIT_ELEMENTS, AnalogConfig, AnalogConfigError, ResetMode, Waveform, WaveformError

logger = logging.getLogger(__name__)


def draw_unit_caps(cfg: AnalogConfig) -> Tuple[np.ndarray, np.ndarray]:
    """
    Mismatched unit capacitors C(1 + eps_i) for the P and N arrays

    The draws depend only on cfg.seed and cfg.mismatch_sigma, so runs that
    differ in reset mode or unit_cap_f see the same relative errors.
    """
    mismatch_seq, _ = np.random.SeedSequence(cfg.seed).spawn(2)
    eps = np.random.default_rng(mismatch_seq).normal(0.0, 1.0, size=(2, N_UNIT_ELEMENTS)) * cfg.mismatch_sigma
    caps = cfg.unit_cap_f * (1.0 + eps)
    if np.any(caps <= 0):
        raise AnalogConfigError("mismatch_sigma", f"{cfg.mismatch_sigma} produced a non-positive capacitor")
    return caps[0], caps[1]


def reset_noise_draws(cfg: AnalogConfig, n_cycles: int) -> np.ndarray:
    """Standard-normal kT/C draws, one per cycle and polarity (row 0 = P)"""
    _, noise_seq = np.random.SeedSequence(cfg.seed).spawn(2)
    return np.random.default_rng(noise_seq).standard_normal(size=(2, n_cycles))


def ktc_sigma(cfg: AnalogConfig, caps: np.ndarray) -> float:
    if cfg.temperature_k == 0:
        return 0.0
    return math.sqrt(constants.k * cfg.temperature_k / float(caps.sum()))


@njit(**kernel_opts())
def _polarity_kernel(masks, caps, z, sigma_ktc, vref, sub_steps, alpha, q_inject,
                     glitch_area, dt, capture_tau, half_period, out):
    n_el = caps.shape[0]
    total = 0.0
    for i in range(n_el):
        total += caps[i]
    half = sub_steps // 2

    v = 0.0
    held = 0.0
    prev_mask = 0
    pending = False
    pending_cycle = 0
    for k in range(masks.shape[0]):
        m = np.int64(masks[k])
        toggled = m ^ prev_mask
        sel = 0.0
        toggles = 0
        for i in range(n_el):
            if (m >> i) & 1:
                sel += caps[i]
            if (toggled >> i) & 1:
                toggles += 1
        reset = m == 0

        # HP releases on the clock edge after every reset cycle; FP only once
        # a nonzero code switches the elements back on
        if pending and (half_period or not reset):
            if half_period:
                held = 0.5 * (q_inject + sigma_ktc * z[pending_cycle])
            else:
                held = q_inject + sigma_ktc * z[pending_cycle] + glitch_area * toggles / capture_tau
            pending = False

        target = vref * sel / total + held
        base = k * sub_steps
        for j in range(sub_steps):
            clamped = reset and (j >= half or not half_period)
            # the clamp discharges the plate with the same time constant
            goal = 0.0 if clamped else target
            v += alpha * (goal - v)
            sample = v
            if j == 0 and toggles > 0 and not clamped:
                sample += glitch_area * toggles / dt
            # supply rails
            out[base + j] = min(max(sample, 0.0), vref)

        if reset:
            pending = True
            pending_cycle = k
        prev_mask = m


def _check_masks(masks: np.ndarray, name: str) -> np.ndarray:
    masks = np.ascontiguousarray(masks, dtype=np.uint8)
    if masks.ndim != 1 or masks.size == 0:
        raise WaveformError(f"{name} masks must be a non-empty 1-D stream, got shape {masks.shape}")
    if masks.max() >= (1 << N_UNIT_ELEMENTS):
        raise WaveformError(f"{name} masks select elements beyond the {N_UNIT_ELEMENTS}-element array")
    return masks


def _run_polarity(masks: np.ndarray, caps: np.ndarray, z: np.ndarray, cfg: AnalogConfig) -> np.ndarray:
    dt = cfg.dt
    alpha = 1.0 if cfg.settle_tau_s == 0 else -math.expm1(-dt / cfg.settle_tau_s)
    out = np.empty(masks.size * cfg.sub_steps, dtype=np.float64)
    _polarity_kernel(
        masks, caps, z, ktc_sigma(cfg, caps), cfg.vref, cfg.sub_steps, alpha,
        cfg.q_inject_v, cfg.glitch_area_vs, dt, max(cfg.settle_tau_s, dt),
        cfg.reset_mode is ResetMode.HALF_PERIOD, out,
    )
    return out


def dac_polarities(p_masks: np.ndarray, n_masks: np.ndarray, cfg: AnalogConfig) -> Tuple[Waveform, Waveform]:
    """Single-ended P and N top-plate voltages at clock_hz * sub_steps"""
    p_masks = _check_masks(p_masks, "P")
    n_masks = _check_masks(n_masks, "N")
    if p_masks.size != n_masks.size:
        raise WaveformError(f"P/N mask streams differ in length: {p_masks.size} vs {n_masks.size}")

    caps_p, caps_n = draw_unit_caps(cfg)
    z = reset_noise_draws(cfg, p_masks.size)
    p_out = _run_polarity(p_masks, caps_p, z[0], cfg)
    n_out = _run_polarity(n_masks, caps_n, z[1], cfg)
    logger.debug(
        f"DAC {cfg.reset_mode.value}: {p_masks.size} cycles x {cfg.sub_steps} sub-steps, "
        f"kT/C sigma P {ktc_sigma(cfg, caps_p) * 1e6:.2f} uV"
    )
    rate = cfg.sample_rate_hz
    return Waveform(rate, p_out), Waveform(rate, n_out)


def dac_waveform(p_masks: np.ndarray, n_masks: np.ndarray, cfg: AnalogConfig) -> Waveform:
    """
    Differential DAC output (P minus N) in volts

    Args:
        p_masks: Element masks driving the P array, one per clock
        n_masks: Element masks driving the N array
        cfg: Analog parameters (reset mode, non-idealities, seed)

    Returns:
        Waveform sampled at clock_hz * sub_steps
    """
    p, n = dac_polarities(p_masks, n_masks, cfg)
    return Waveform(p.sample_rate_hz, p.samples - n.samples)
