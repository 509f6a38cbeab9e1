"""
Logging configuration.

All packages log through loguru. The console sink follows the configured
level; the file sink additionally keeps DEBUG output of the packages that do
the heavy lifting (design, decoder) for post-mortem inspection.
"""

import sys
from pathlib import Path

from loguru import logger

from config import settings

CONSOLE_FORMAT = "<green>{time:HH:mm:ss}</green> | <level>{level: <8}</level> | {name}:{function} - {message}"
FILE_FORMAT = "{time:YYYY-MM-DD HH:mm:ss.SSS} | {level: <8} | {process} | {name}:{function}:{line} - {message}"

# Per-package minimum levels for the file sink
FILE_LEVELS: dict[str, str] = {
    "": "INFO",
    "harness": "DEBUG",
    "design": "DEBUG",
    "decoder": "DEBUG",
    "oracle": "DEBUG",
}


def configure_logging(level: str | None = None, log_file: str | None = None) -> None:
    """
    Replace loguru's default sink with the project's console and file sinks.

    Args:
        level: Console level; defaults to ``settings.LOG_LEVEL``.
        log_file: File sink path; ``""`` disables it, ``None`` uses ``settings.LOG_FILE``.
    """
    level = (level or settings.LOG_LEVEL).upper()
    log_file = settings.LOG_FILE if log_file is None else log_file

    logger.remove()
    logger.add(sys.stderr, level=level, format=CONSOLE_FORMAT, colorize=None)

    if log_file:
        path = Path(log_file)
        path.parent.mkdir(parents=True, exist_ok=True)
        logger.add(
            path,
            level="DEBUG",
            format=FILE_FORMAT,
            filter=FILE_LEVELS,
            rotation="10 MB",
            retention=5,
            enqueue=True,
        )
    logger.debug(f"Logging configured: console={level}, file={log_file or 'disabled'}")
