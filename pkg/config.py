import logging
import os
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path
from typing import Dict, Optional, Union

from dotenv import dotenv_values, load_dotenv

from analog.models import AnalogConfig, AnalogConfigError, ResetMode
from dds.lut import LutError, SineLut, build_lut
from dsm.lfsr import LFSR_MASK

load_dotenv()

logger = logging.getLogger(__name__)


class Config:
    LOG_LEVEL = os.getenv('LOG_LEVEL', 'INFO').upper()
    LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

    # Output locations
    RESULTS_DIR = os.getenv('RESULTS_DIR', 'results')
    RUN_CONFIG = os.getenv('RUN_CONFIG')  # default --config for the CLI

    # Parallel arms of compare-reset
    MAX_WORKERS = int(os.getenv('MAX_WORKERS', 2))

    # sweep-load default grid, ohms
    DEFAULT_LOADS = [float(v) for v in os.getenv('DEFAULT_LOADS', '0,500,1000,1500,2000,2500,3000,3500,4000,4500,5000').split(',')]

    # Unit-capacitance sweep (scripts/sweep_unit_cap.py), farads
    UNIT_CAP_SWEEP = [float(v) for v in os.getenv('UNIT_CAP_SWEEP', '0.25e-12,0.5e-12,1e-12,2e-12,4e-12').split(',')]


class ConfigError(ValueError):
    """Rejected run configuration; `key` names the offending entry"""

    def __init__(self, key: str, reason: str):
        super().__init__(f"{key}: {reason}")
        self.key = key
        self.reason = reason


_TRUE = {'true', '1', 'yes', 'on'}
_FALSE = {'false', '0', 'no', 'off'}


def _parse_bool(text: str) -> bool:
    value = text.strip().lower()
    if value in _TRUE:
        return True
    if value in _FALSE:
        return False
    raise ValueError(f"expected true/false, got {text!r}")


def _parse_int(text: str) -> int:
    # base 0 accepts the hex seeds (0x1A5)
    return int(text.strip(), 0)


def _parse_float(text: str) -> float:
    return float(text.strip())


@dataclass(frozen=True)
class RunConfig:
    """
    Every knob of a simulation run

    A run config file must list all of these keys. Defaults are the values
    used when no file is given.
    """
    # Digital front end
    lut_depth: int = 128
    lut_amp_bits: int = 9
    lut_amplitude: int = 255
    dither: bool = True
    dwa: bool = True
    dsm_seed_p: int = 0x1A5
    dsm_seed_n: int = 0x0F3

    # DAC
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

    # Filter and V-I
    lpf_fc_hz: float = 40e3
    lpf_q: float = 0.7071
    lpf_swing_v: float = 0.0
    gm_a_per_v: float = 1.4e-5
    r_out_ohm: float = 2e5
    load_ohm: float = 0.0
    seed: int = 1

    # Analysis and artifacts
    band_hz: float = 400e3
    reset_band_hz: float = 50e3
    periods: int = 511  # 128 x 511 clocks: whole LUT and LFSR periods
    warmup_periods: int = 4
    export_periods: int = 2
    spectrum_max_hz: float = 1.28e6
    out_dir: str = 'results'

    def __post_init__(self):
        self.validate()

    def validate(self):
        for key in ('dsm_seed_p', 'dsm_seed_n'):
            value = getattr(self, key)
            if not 1 <= value <= LFSR_MASK:
                raise ConfigError(key, f"LFSR seed must be in [1, {LFSR_MASK}], got {value}")
        for key in ('band_hz', 'reset_band_hz', 'spectrum_max_hz'):
            if not getattr(self, key) > 0:
                raise ConfigError(key, f"must be > 0, got {getattr(self, key)}")
        if self.periods < 16:
            raise ConfigError('periods', f"must be >= 16 for spectral resolution, got {self.periods}")
        if self.warmup_periods < 0:
            raise ConfigError('warmup_periods', f"must be >= 0, got {self.warmup_periods}")
        if not 1 <= self.export_periods <= self.periods:
            raise ConfigError('export_periods', f"must be in [1, periods={self.periods}], got {self.export_periods}")
        if self.load_ohm < 0:
            raise ConfigError('load_ohm', f"must be >= 0, got {self.load_ohm}")
        if not self.out_dir:
            raise ConfigError('out_dir', "must not be empty")
        try:
            self.lut()
        except LutError as e:
            raise ConfigError('lut_amplitude' if 'amplitude' in str(e) else 'lut_depth', str(e)) from e
        try:
            self.analog_config()
        except AnalogConfigError as e:
            raise ConfigError(e.key, e.reason) from e

    def lut(self) -> SineLut:
        return build_lut(amp_bits=self.lut_amp_bits, depth=self.lut_depth, amplitude=self.lut_amplitude)

    def analog_config(self) -> AnalogConfig:
        values = {name: getattr(self, name) for name in AnalogConfig.field_names()}
        return AnalogConfig(**values)

    @property
    def f0_hz(self) -> float:
        return self.clock_hz / self.lut_depth

    def with_overrides(self, **overrides) -> 'RunConfig':
        """Replace fields, skipping overrides that are None"""
        changes = {k: v for k, v in overrides.items() if v is not None}
        unknown = set(changes) - set(self.keys())
        if unknown:
            raise ConfigError(sorted(unknown)[0], "unknown key")
        return replace(self, **changes) if changes else self

    def as_dict(self) -> Dict[str, object]:
        values = asdict(self)
        values['reset_mode'] = self.reset_mode.value
        return values

    @classmethod
    def keys(cls):
        return [f.name for f in fields(cls)]


_PARSERS = {
    int: _parse_int,
    float: _parse_float,
    bool: _parse_bool,
    str: str.strip,
    ResetMode: ResetMode.parse,
}


def parse_run_config(values: Dict[str, Optional[str]]) -> RunConfig:
    """Convert raw key/value strings into a validated RunConfig"""
    expected = RunConfig.keys()
    unknown = [k for k in values if k not in expected]
    if unknown:
        raise ConfigError(unknown[0], "unknown key")
    missing = [k for k in expected if k not in values]
    if missing:
        raise ConfigError(missing[0], "missing from run config")

    kwargs = {}
    types = {f.name: f.type for f in fields(RunConfig)}
    for key in expected:
        raw = values[key]
        if raw is None or raw.strip() == '':
            raise ConfigError(key, "empty value")
        try:
            kwargs[key] = _PARSERS[types[key]](raw)
        except ValueError as e:
            raise ConfigError(key, str(e)) from e
    return RunConfig(**kwargs)


def load_run_config(path: Union[str, Path]) -> RunConfig:
    """
    Load a flat key=value run config

    Args:
        path: File in dotenv syntax listing every RunConfig key

    Returns:
        Validated RunConfig

    Raises:
        ConfigError: missing file, missing/unknown key or invalid value
    """
    path = Path(path)
    if not path.is_file():
        raise ConfigError('config', f"file not found: {path}")
    values = dotenv_values(path, interpolate=False)
    cfg = parse_run_config(dict(values))
    logger.debug(f"Loaded run config {path}")
    return cfg


def default_run_config() -> RunConfig:
    return RunConfig(out_dir=Config.RESULTS_DIR)
