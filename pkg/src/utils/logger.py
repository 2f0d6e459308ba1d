"""
Logging configuration using loguru.
Every sink writes to stderr or files; stdout stays reserved for scored events.
"""
import sys

from loguru import logger

from src.config.settings import settings

CONSOLE_FORMAT = (
    "<green>{time:YYYY-MM-DD HH:mm:ss}</green> | <level>{level: <8}</level> | "
    "<cyan>{name}</cyan>:<cyan>{function}</cyan>:<cyan>{line}</cyan> - <level>{message}</level>"
)
FILE_FORMAT = "{time:YYYY-MM-DD HH:mm:ss} | {level: <8} | {name}:{function}:{line} - {message}"


def setup_logger() -> None:
    """
    Configure loguru from settings.

    ``LOG_JSON`` switches stderr to one JSON object per record, for log
    shippers sitting next to a long-running scorer.
    """
    logger.remove()

    if settings.log_json:
        logger.add(sys.stderr, level=settings.log_level, serialize=True)
    else:
        logger.add(sys.stderr, format=CONSOLE_FORMAT, level=settings.log_level, colorize=True)

    if not settings.log_to_file:
        return

    settings.log_dir.mkdir(parents=True, exist_ok=True)

    logger.add(
        settings.log_dir / "sentinel_{time:YYYY-MM-DD}.log",
        format=FILE_FORMAT,
        level=settings.log_level,
        rotation="00:00",
        retention="30 days",
        compression="zip",
    )
    # Errors are kept longer
    logger.add(
        settings.log_dir / "errors_{time:YYYY-MM-DD}.log",
        format=FILE_FORMAT,
        level="ERROR",
        rotation="00:00",
        retention="90 days",
        compression="zip",
    )


setup_logger()


__all__ = ["logger", "setup_logger"]
