"""
Current Generator Simulator
Command-line entry point: emit-lut, modulate, simulate, compare-reset, sweep-load
"""
import argparse
import logging
import sys
from typing import List, Optional

from commands import (
    EXIT_BAD_INPUT,
    cmd_compare_reset,
    cmd_emit_lut,
    cmd_modulate,
    cmd_simulate,
    cmd_sweep_load,
)
from config import Config

logger = logging.getLogger(__name__)


def parse_loads(text: str) -> List[float]:
    try:
        return [float(v) for v in text.split(',') if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated ohms, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--config', metavar='PATH', help='run config file (key=value, every key required)')
    common.add_argument('--out', metavar='DIR', help='output directory (overrides out_dir)')
    common.add_argument('--seed', type=int, metavar='N', help='analog noise seed (overrides seed)')
    common.add_argument('--band-hz', type=float, metavar='F', help='analysis band (overrides band_hz)')

    parser = argparse.ArgumentParser(
        prog='main.py',
        description='Cycle-accurate sinusoidal current generator simulator',
    )
    sub = parser.add_subparsers(dest='command', required=True)
    sub.add_parser('emit-lut', parents=[common], help='write the sine table as CSV')
    modulate = sub.add_parser('modulate', parents=[common], help='write per-cycle P/N MASH codes as CSV')
    modulate.add_argument('--lut', metavar='PATH', help='table CSV from emit-lut (default: build from config)')
    sub.add_parser('simulate', parents=[common], help='full chain: waveforms, spectra and metrics')
    sub.add_parser('compare-reset', parents=[common], help='FULL_PERIOD vs HALF_PERIOD reset A/B')
    sweep = sub.add_parser('sweep-load', parents=[common], help='driving error against load resistance')
    sweep.add_argument('--loads', type=parse_loads, metavar='R1,R2,...',
                       help='ascending load resistances in ohms (default 0..5000 step 500)')
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    logging.basicConfig(level=Config.LOG_LEVEL, format=Config.LOG_FORMAT)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_BAD_INPUT if e.code else 0

    options = dict(cfg_path=args.config, out_dir=args.out, seed=args.seed, band_hz=args.band_hz)
    if args.command == 'emit-lut':
        return cmd_emit_lut(**options)
    if args.command == 'modulate':
        return cmd_modulate(lut_path=args.lut, **options)
    if args.command == 'simulate':
        return cmd_simulate(**options)
    if args.command == 'compare-reset':
        return cmd_compare_reset(**options)
    return cmd_sweep_load(loads=args.loads, **options)


if __name__ == "__main__":
    try:
        sys.exit(main())
    except KeyboardInterrupt:
        logger.info("Stopped by user")
        sys.exit(1)
