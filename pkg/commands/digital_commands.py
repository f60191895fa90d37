"""
Digital Commands
emit-lut and modulate: the table and the MASH code streams as CSV
"""
import logging
from pathlib import Path
from typing import Optional

import numpy as np

from dds import LutError, SineLut, lut_spur_level, lut_stream
from dsm import MashState, modulate_channel
from utils import read_columns, write_columns
from .base import EXIT_OK, exit_code, output_dir, resolve_config

logger = logging.getLogger(__name__)


def read_lut(path: str, amp_bits: int) -> SineLut:
    """Load a table written by emit-lut (index,code)"""
    columns = read_columns(path, dtype=np.int64)
    if 'code' not in columns:
        raise LutError(f"{path} has no 'code' column")
    table = columns['code']
    amplitude = int(np.abs(table).max()) if table.size else 0
    return SineLut(depth=table.size, amp_bits=amp_bits, amplitude=amplitude, table=table)


@exit_code
def cmd_emit_lut(cfg_path: Optional[str] = None, out_dir: Optional[str] = None, **overrides) -> int:
    """Write lut.csv (index, code) for the configured table"""
    cfg = resolve_config(cfg_path, out_dir=out_dir, **overrides)
    lut = cfg.lut()
    path = write_columns(
        output_dir(cfg) / 'lut.csv', ['index', 'code'],
        [np.arange(lut.depth), lut.table], ['%d', '%d'],
    )
    spur = lut_spur_level(lut, cfg.band_hz, cfg.clock_hz)
    logger.info(f"✅ Wrote {lut.depth}-entry table to {path} (worst in-band spur {spur:.2f} dBc)")
    return EXIT_OK


@exit_code
def cmd_modulate(cfg_path: Optional[str] = None, out_dir: Optional[str] = None,
                 lut_path: Optional[str] = None, **overrides) -> int:
    """
    Write codes.csv (cycle, p_code, n_code) for `periods` table periods

    The table comes from lut_path when given, otherwise from the config.
    """
    cfg = resolve_config(cfg_path, out_dir=out_dir, **overrides)
    lut = read_lut(lut_path, cfg.lut_amp_bits) if lut_path else cfg.lut()
    n_cycles = cfg.periods * lut.depth

    run_p, run_n = modulate_channel(
        lut_stream(lut, n_cycles), MashState.seeded(cfg.dsm_seed_p),
        MashState.seeded(cfg.dsm_seed_n), cfg.dither,
    )
    path = write_columns(
        output_dir(cfg) / 'codes.csv', ['cycle', 'p_code', 'n_code'],
        [np.arange(n_cycles), run_p.codes, run_n.codes], ['%d', '%d', '%d'],
    )
    logger.info(f"✅ Wrote {n_cycles} P/N code pairs to {Path(path)}")
    return EXIT_OK
