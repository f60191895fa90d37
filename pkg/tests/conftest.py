import numpy as np
import pytest

from config import RunConfig
from dds import build_lut
from utils import format_value


@pytest.fixture
def lut():
    return build_lut()


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def out_dir(tmp_path):
    return tmp_path / "results"


@pytest.fixture
def default_cfg(out_dir):
    return RunConfig(out_dir=str(out_dir))


@pytest.fixture
def short_cfg(out_dir):
    """Shortest legal run: 16 analysis periods after 2 warm-up periods"""
    return RunConfig(periods=16, warmup_periods=2, export_periods=1, out_dir=str(out_dir))


@pytest.fixture
def write_config(tmp_path):
    """Write a RunConfig (optionally with edits) as a key=value file and return its path"""
    def _write(cfg: RunConfig, drop=(), extra=None, name="run.env"):
        values = {k: v for k, v in cfg.as_dict().items() if k not in drop}
        values.update(extra or {})
        path = tmp_path / name
        path.write_text("".join(f"{k}={format_value(v)}\n" for k, v in values.items()))
        return str(path)
    return _write
