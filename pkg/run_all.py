"""
Batch Launcher
Runs simulate, compare-reset and sweep-load as separate processes
"""
import argparse
import logging
import signal
import subprocess
import sys
import time
from pathlib import Path
from typing import List, Optional

from dotenv import load_dotenv

load_dotenv()

from config import Config  # noqa: E402

logging.basicConfig(level=Config.LOG_LEVEL, format=Config.LOG_FORMAT)
logger = logging.getLogger(__name__)

COMMANDS = ('simulate', 'compare-reset', 'sweep-load')
POLL_INTERVAL_S = 0.5
ROOT = Path(__file__).resolve().parent


class ServiceManager:
    """Starts one child process per command and waits for all of them"""

    def __init__(self, config_path: Optional[str], results_dir: str):
        self.config_path = config_path
        self.results_dir = Path(results_dir)
        self.processes = []

    def start_command(self, command: str) -> subprocess.Popen:
        """Launch `main.py <command>` writing into results_dir/<command>"""
        argv = [sys.executable, str(ROOT / 'main.py'), command, '--out', str(self.results_dir / command)]
        if self.config_path:
            argv += ['--config', str(Path(self.config_path).resolve())]
        self.results_dir.mkdir(parents=True, exist_ok=True)
        log_path = self.results_dir / f"{command}.log"
        logger.info(f"Starting {command} (log: {log_path})")
        with open(log_path, "w", encoding="utf-8") as log:
            process = subprocess.Popen(argv, stdout=log, stderr=subprocess.STDOUT, text=True)
        self.processes.append((command, process))
        return process

    def wait_all(self) -> int:
        """Wait for every child; the first failure stops the rest"""
        pending = list(self.processes)
        while pending:
            for name, process in list(pending):
                if process.poll() is None:
                    continue
                pending.remove((name, process))
                if process.returncode != 0:
                    logger.error(f"❌ {name} exited with code {process.returncode}")
                    logger.error(f"See {self.results_dir / (name + '.log')}")
                    self.shutdown()
                    return process.returncode
                logger.info(f"✅ {name} finished")
            time.sleep(POLL_INTERVAL_S)
        return 0

    def shutdown(self):
        """Terminate children that are still running"""
        for name, process in self.processes:
            if process.poll() is None:
                logger.info(f"Stopping {name}...")
                process.terminate()
                try:
                    process.wait(timeout=10)
                except subprocess.TimeoutExpired:
                    logger.warning(f"⚠️ {name} did not stop, killing it")
                    process.kill()


def main(argv: Optional[List[str]] = None) -> int:
    parser = argparse.ArgumentParser(description='Run all chain commands in parallel')
    parser.add_argument('--config', metavar='PATH', default=Config.RUN_CONFIG)
    parser.add_argument('--out', metavar='DIR', default=Config.RESULTS_DIR)
    args = parser.parse_args(argv)

    manager = ServiceManager(args.config, args.out)

    def signal_handler(sig, frame):
        logger.info("Received interrupt signal")
        manager.shutdown()
        sys.exit(130)

    signal.signal(signal.SIGINT, signal_handler)
    if hasattr(signal, 'SIGTERM'):
        signal.signal(signal.SIGTERM, signal_handler)

    for command in COMMANDS:
        manager.start_command(command)
    code = manager.wait_all()
    if code == 0:
        logger.info(f"✨ All commands finished, results in {args.out}")
    return code


if __name__ == "__main__":
    sys.exit(main())
