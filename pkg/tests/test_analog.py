import math

import numpy as np
import pytest
from scipy import signal

from analog import (
    AnalogConfig,
    AnalogConfigError,
    ResetMode,
    Waveform,
    WaveformError,
    dac_polarities,
    dac_waveform,
    draw_unit_caps,
    driving_error,
    lpf_apply,
    lpf_sos,
    soft_limit,
    v_to_i,
)

FP = ResetMode.FULL_PERIOD
HP = ResetMode.HALF_PERIOD


def ideal_cfg(**changes):
    """Ideal DAC with instant settling; `changes` re-enable single effects"""
    base = AnalogConfig(settle_tau_s=0.0).ideal()
    values = {name: getattr(base, name) for name in AnalogConfig.field_names()}
    values.update(changes)
    return AnalogConfig(**values)


def cycle(w: Waveform, cfg: AnalogConfig, k: int) -> np.ndarray:
    return w.samples[k * cfg.sub_steps:(k + 1) * cfg.sub_steps]


class TestAnalogConfig:
    @pytest.mark.parametrize("key,value", [
        ("vref", 0.0),
        ("clock_hz", -1.0),
        ("unit_cap_f", float("nan")),
        ("mismatch_sigma", -0.01),
        ("settle_tau_s", -1e-9),
        ("sub_steps", 63),
        ("sub_steps", 0),
        ("seed", -1),
    ])
    def test_rejects_bad_value(self, key, value):
        with pytest.raises(AnalogConfigError) as exc:
            AnalogConfig(**{key: value})
        assert exc.value.key == key

    def test_reset_mode_type_checked(self):
        with pytest.raises(AnalogConfigError):
            AnalogConfig(reset_mode="HALF_PERIOD")

    def test_parse_reset_mode(self):
        assert ResetMode.parse(" half_period ") is HP
        assert ResetMode.parse("FULL_PERIOD") is FP
        with pytest.raises(ValueError):
            ResetMode.parse("QUARTER_PERIOD")

    def test_sample_rate(self):
        cfg = AnalogConfig()
        assert cfg.sample_rate_hz == pytest.approx(2.56e6 * 64)
        assert cfg.dt == pytest.approx(1 / (2.56e6 * 64))

    def test_ideal_switches_off_non_idealities(self):
        cfg = AnalogConfig().ideal()
        assert cfg.mismatch_sigma == cfg.temperature_k == cfg.q_inject_v == cfg.glitch_area_vs == 0.0
        assert cfg.vref == AnalogConfig().vref


class TestWaveform:
    def test_window_and_tail(self):
        w = Waveform(10.0, np.arange(10))
        assert np.array_equal(w.window(2, 3).samples, [2, 3, 4])
        assert np.array_equal(w.tail(2).samples, [8, 9])
        assert w.duration_s == pytest.approx(1.0)
        with pytest.raises(WaveformError):
            w.window(8, 5)

    def test_rejects_empty(self):
        with pytest.raises(WaveformError):
            Waveform(1.0, [])


class TestDacLevels:
    def test_ideal_levels(self):
        cfg = ideal_cfg(reset_mode=FP)
        masks = np.array([0b0000111, 0b1111111, 0b0000000, 0b0000001], dtype=np.uint8)
        p, _ = dac_polarities(masks, np.zeros(4, dtype=np.uint8) + 1, cfg)
        for k, expected in enumerate([3 / 7, 1.0, 0.0, 1 / 7]):
            assert np.allclose(cycle(p, cfg, k), cfg.vref * expected)

    def test_identical_streams_cancel(self, rng):
        cfg = ideal_cfg(settle_tau_s=1e-8, glitch_area_vs=5e-12, q_inject_v=1e-3)
        masks = rng.integers(0, 128, size=300).astype(np.uint8)
        assert not np.any(dac_waveform(masks, masks, cfg).samples)

    @pytest.mark.parametrize("mode", [FP, HP])
    def test_differential_output_within_reference(self, rng, mode):
        cfg = AnalogConfig(mismatch_sigma=0.05, q_inject_v=0.05, glitch_area_vs=1e-9,
                           unit_cap_f=1e-16, reset_mode=mode)
        p_masks = rng.integers(0, 128, size=500).astype(np.uint8)
        n_masks = rng.integers(0, 128, size=500).astype(np.uint8)
        w = dac_waveform(p_masks, n_masks, cfg)
        assert np.abs(w.samples).max() <= cfg.vref

    def test_mismatch_changes_levels(self):
        cfg = ideal_cfg(mismatch_sigma=0.01, seed=3)
        caps_p, caps_n = draw_unit_caps(cfg)
        p, _ = dac_polarities(np.array([1, 2], dtype=np.uint8), np.array([1, 1], dtype=np.uint8), cfg)
        assert cycle(p, cfg, 0)[0] == pytest.approx(cfg.vref * caps_p[0] / caps_p.sum())
        assert cycle(p, cfg, 1)[0] == pytest.approx(cfg.vref * caps_p[1] / caps_p.sum())
        assert not np.allclose(caps_p / cfg.unit_cap_f, caps_n / cfg.unit_cap_f)

    def test_mismatch_draw_ignores_mode_and_size(self):
        a = draw_unit_caps(AnalogConfig(seed=9, reset_mode=FP))
        b = draw_unit_caps(AnalogConfig(seed=9, reset_mode=HP, unit_cap_f=4e-12))
        assert np.allclose(a[0] / a[0].sum(), b[0] / b[0].sum())

    def test_first_order_settling(self):
        cfg = ideal_cfg()
        tau = 4 * cfg.dt
        cfg = ideal_cfg(settle_tau_s=tau)
        p, _ = dac_polarities(np.array([0x7F], dtype=np.uint8), np.array([0x7F], dtype=np.uint8), cfg)
        j = np.arange(cfg.sub_steps)
        assert np.allclose(p.samples, cfg.vref * (1 - np.exp(-(j + 1) / 4)))

    def test_glitch_area_per_toggled_element(self):
        area = 2e-12
        cfg = ideal_cfg(glitch_area_vs=area, reset_mode=HP)
        masks = np.array([0b001, 0b110], dtype=np.uint8)
        glitched, _ = dac_polarities(masks, masks, cfg)
        clean, _ = dac_polarities(masks, masks, ideal_cfg(reset_mode=HP))
        extra = (cycle(glitched, cfg, 1) - cycle(clean, cfg, 1)).sum() * cfg.dt
        assert extra == pytest.approx(3 * area)

    def test_mask_validation(self):
        cfg = AnalogConfig()
        with pytest.raises(WaveformError):
            dac_waveform(np.array([1, 2]), np.array([1]), cfg)
        with pytest.raises(WaveformError):
            dac_waveform(np.array([128]), np.array([0]), cfg)

    def test_deterministic_for_seed(self, rng):
        masks_p = rng.integers(0, 128, size=200).astype(np.uint8)
        masks_n = rng.integers(0, 128, size=200).astype(np.uint8)
        one = dac_waveform(masks_p, masks_n, AnalogConfig(seed=4))
        two = dac_waveform(masks_p, masks_n, AnalogConfig(seed=4))
        other = dac_waveform(masks_p, masks_n, AnalogConfig(seed=5))
        assert np.array_equal(one.samples, two.samples)
        assert not np.array_equal(one.samples, other.samples)


class TestReset:
    masks = np.array([0b111, 0, 0b111, 0b111], dtype=np.uint8)

    def test_full_period_clamps_whole_cycle(self):
        cfg = ideal_cfg(reset_mode=FP, q_inject_v=1e-3)
        p, _ = dac_polarities(self.masks, self.masks, cfg)
        assert not cycle(p, cfg, 1).any()
        assert np.allclose(cycle(p, cfg, 2), cfg.vref * 3 / 7 + 1e-3)
        assert np.allclose(cycle(p, cfg, 3), cfg.vref * 3 / 7 + 1e-3)

    def test_half_period_clamps_second_half(self):
        cfg = ideal_cfg(reset_mode=HP, q_inject_v=1e-3)
        p, _ = dac_polarities(self.masks, self.masks, cfg)
        half = cfg.sub_steps // 2
        assert not cycle(p, cfg, 1)[half:].any()
        # released at the next edge with half the injected charge
        assert np.allclose(cycle(p, cfg, 2), cfg.vref * 3 / 7 + 0.5e-3)

    def test_full_period_holds_through_reset_runs(self):
        cfg = ideal_cfg(reset_mode=FP, q_inject_v=1e-3)
        masks = np.array([0b1, 0, 0, 0, 0b1], dtype=np.uint8)
        p, _ = dac_polarities(masks, masks, cfg)
        assert not p.samples[cfg.sub_steps:4 * cfg.sub_steps].any()
        assert np.allclose(cycle(p, cfg, 4), cfg.vref / 7 + 1e-3)

    def test_modes_identical_without_reset_errors(self, rng):
        masks_p = rng.integers(0, 128, size=400).astype(np.uint8)
        masks_n = rng.integers(0, 128, size=400).astype(np.uint8)
        fp = dac_waveform(masks_p, masks_n, ideal_cfg(mismatch_sigma=0.01, reset_mode=FP))
        hp = dac_waveform(masks_p, masks_n, ideal_cfg(mismatch_sigma=0.01, reset_mode=HP))
        assert np.array_equal(fp.samples, hp.samples)

    def test_modes_identical_with_settling(self, rng):
        masks_p = rng.integers(0, 128, size=400).astype(np.uint8)
        masks_n = rng.integers(0, 128, size=400).astype(np.uint8)
        masks_p[::6] = 0
        masks_n[3::9] = 0
        settled = dict(mismatch_sigma=0.01, settle_tau_s=1e-8)
        fp = dac_waveform(masks_p, masks_n, ideal_cfg(reset_mode=FP, **settled))
        hp = dac_waveform(masks_p, masks_n, ideal_cfg(reset_mode=HP, **settled))
        assert np.array_equal(fp.samples, hp.samples)

    def test_full_period_clamp_settles(self):
        cfg = ideal_cfg()
        cfg = ideal_cfg(settle_tau_s=4 * cfg.dt, reset_mode=FP)
        masks = np.array([0x7F, 0], dtype=np.uint8)
        p, _ = dac_polarities(masks, masks, cfg)
        start = cycle(p, cfg, 0)[-1]
        j = np.arange(cfg.sub_steps)
        assert np.allclose(cycle(p, cfg, 1), start * np.exp(-(j + 1) / 4), rtol=1e-9, atol=0)

    @pytest.mark.parametrize("mode", [FP, HP])
    def test_ktc_noise_scales_with_capacitance(self, rng, mode):
        masks_p = rng.integers(0, 128, size=2000).astype(np.uint8)
        masks_n = rng.integers(0, 128, size=2000).astype(np.uint8)
        masks_p[::5] = 0
        masks_n[2::7] = 0

        def noise_power(unit_cap_f):
            noisy = dac_waveform(masks_p, masks_n, ideal_cfg(temperature_k=300.0, unit_cap_f=unit_cap_f,
                                                             reset_mode=mode))
            clean = dac_waveform(masks_p, masks_n, ideal_cfg(unit_cap_f=unit_cap_f, reset_mode=mode))
            return np.mean((noisy.samples - clean.samples) ** 2)

        ratio_db = 10 * math.log10(noise_power(10e-15) / noise_power(20e-15))
        assert ratio_db == pytest.approx(10 * math.log10(2), abs=1e-6)


class TestFilter:
    fs = 1e6

    def test_response_points(self):
        sos = lpf_sos(10e3, 1 / math.sqrt(2), self.fs)
        _, h = signal.sosfreqz(sos, worN=[0.0, 10e3, 100e3], fs=self.fs)
        db = 20 * np.log10(np.abs(h))
        assert db[0] == pytest.approx(0.0, abs=1e-9)
        assert db[1] == pytest.approx(-3.0103, abs=0.01)
        assert db[2] == pytest.approx(-40.6, abs=0.3)

    def test_step_settles_to_unity(self):
        cfg = AnalogConfig(lpf_fc_hz=10e3)
        out = lpf_apply(Waveform(self.fs, np.ones(5000)), cfg)
        assert out.samples[-1] == pytest.approx(1.0, abs=1e-6)
        assert out.unit == "V"

    def test_rejects_cutoff_above_nyquist(self):
        with pytest.raises(AnalogConfigError) as exc:
            lpf_sos(600e3, 0.7071, self.fs)
        assert exc.value.key == "lpf_fc_hz"

    def test_soft_limit(self):
        w = Waveform(self.fs, np.linspace(-1.0, 1.0, 101))
        assert soft_limit(w, 0.0) is w
        limited = soft_limit(w, 0.2)
        assert np.abs(limited.samples).max() < 0.2
        assert np.allclose(limited.samples, 0.2 * np.tanh(w.samples / 0.2))
        small = soft_limit(Waveform(self.fs, [1e-4]), 0.2)
        assert small.samples[0] == pytest.approx(1e-4, rel=1e-6)


class TestViConverter:
    def test_ideal_load(self):
        cfg = AnalogConfig()
        current, error = v_to_i(Waveform(1e6, [0.1, -0.2]), 0.0, cfg)
        assert error == 0.0
        assert current.unit == "A"
        assert np.allclose(current.samples, [0.1 * cfg.gm_a_per_v, -0.2 * cfg.gm_a_per_v], rtol=1e-12, atol=0)

    def test_load_divider(self):
        cfg = AnalogConfig(r_out_ohm=2e5)
        current, error = v_to_i(Waveform(1e6, [1.0]), 2e5, cfg)
        assert error == pytest.approx(0.5)
        assert current.samples[0] == pytest.approx(0.5 * cfg.gm_a_per_v)
        assert driving_error(5000, 2e5) == pytest.approx(5000 / 205000)

    def test_negative_load(self):
        with pytest.raises(WaveformError):
            v_to_i(Waveform(1e6, [1.0]), -1.0, AnalogConfig())
