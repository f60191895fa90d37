"""
Unit Capacitance Sweep
HP-vs-FP reset noise-floor delta across assumed unit capacitor sizes
"""
import argparse
import logging
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from config import Config, ConfigError, default_run_config, load_run_config  # noqa: E402
from analog import ResetMode  # noqa: E402
from signal_chain import SignalChainService, reset_noise_delta  # noqa: E402
from utils import write_columns  # noqa: E402

logging.basicConfig(level=Config.LOG_LEVEL, format=Config.LOG_FORMAT)
logger = logging.getLogger(__name__)


def sweep_unit_cap(cfg, unit_caps, periods=None):
    """Return (unit_cap_f, noise_floor_delta_db) pairs, FULL_PERIOD minus HALF_PERIOD"""
    rows = []
    for unit_cap in unit_caps:
        runs = SignalChainService(cfg.with_overrides(unit_cap_f=unit_cap)).run_modes(
            (ResetMode.FULL_PERIOD, ResetMode.HALF_PERIOD), periods
        )
        delta = reset_noise_delta(runs, cfg.reset_band_hz)
        logger.info(f"📊 C = {unit_cap * 1e15:.0f} fF: delta {delta:.2f} dB")
        rows.append((unit_cap, delta))
    return rows


def main():
    parser = argparse.ArgumentParser(description=__doc__.strip().splitlines()[0])
    parser.add_argument('--config', metavar='PATH', default=Config.RUN_CONFIG)
    parser.add_argument('--out', metavar='DIR', default=Config.RESULTS_DIR)
    parser.add_argument('--periods', type=int, help='analysis periods per run')
    args = parser.parse_args()

    try:
        cfg = load_run_config(args.config) if args.config else default_run_config()
        rows = sweep_unit_cap(cfg, Config.UNIT_CAP_SWEEP, args.periods)
    except ConfigError as e:
        logger.error(f"❌ Invalid config key '{e.key}': {e.reason}")
        return 2

    path = write_columns(
        Path(args.out) / 'unit_cap_sweep.csv', ['unit_cap_f', 'noise_floor_delta_db'],
        [[r[0] for r in rows], [r[1] for r in rows]], ['%.6e', '%.6f'],
    )
    logger.info(f"✅ Wrote {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
