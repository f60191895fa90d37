"""
Command Plumbing
Config loading and exit-code mapping shared by every subcommand
"""
import logging
from functools import wraps
from pathlib import Path
from typing import Callable, Optional

from config import Config, ConfigError, RunConfig, default_run_config, load_run_config

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_BAD_INPUT = 2


def resolve_config(cfg_path: Optional[str] = None, out_dir: Optional[str] = None,
                   seed: Optional[int] = None, band_hz: Optional[float] = None) -> RunConfig:
    """
    Load the run config and apply CLI overrides

    Args:
        cfg_path: Run config file; RUN_CONFIG from the environment, then the
            built-in defaults, when omitted
        out_dir: Replaces out_dir
        seed: Replaces the analog noise seed
        band_hz: Replaces band_hz

    Returns:
        RunConfig
    """
    cfg_path = cfg_path or Config.RUN_CONFIG
    cfg = load_run_config(cfg_path) if cfg_path else default_run_config()
    return cfg.with_overrides(out_dir=out_dir, seed=seed, band_hz=band_hz)


def output_dir(cfg: RunConfig) -> Path:
    path = Path(cfg.out_dir)
    path.mkdir(parents=True, exist_ok=True)
    return path


def exit_code(func: Callable[..., int]) -> Callable[..., int]:
    """
    Map a handler's exceptions to process exit codes

    ConfigError and the domain ValueErrors mean bad input (2); anything else
    is a failure (1).
    """
    @wraps(func)
    def wrapper(*args, **kwargs) -> int:
        try:
            return func(*args, **kwargs)
        except ConfigError as e:
            logger.error(f"❌ Invalid config key '{e.key}': {e.reason}")
            return EXIT_BAD_INPUT
        except ValueError as e:
            logger.error(f"❌ {func.__name__} rejected its input: {e}")
            return EXIT_BAD_INPUT
        except Exception as e:
            logger.error(f"❌ {func.__name__} failed: {e}", exc_info=True)
            return EXIT_FAILURE
    return wrapper
