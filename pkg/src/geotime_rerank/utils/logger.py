import logging
import sys
from datetime import datetime
from logging.handlers import RotatingFileHandler
from pathlib import Path

from .log_config import LogConfig


def setup_logger(
    name: str,
    log_dir: Path | None,
    level: int = logging.INFO,
    log_to_console: bool = True,
    max_bytes: int = 10 * 1024 * 1024,  # 10MB
    backup_count: int = 5,
    fmt: str = "%(asctime)s | %(levelname)-8s | %(name)s | %(message)s",
    datefmt: str = "%Y-%m-%d %H:%M:%S",
) -> logging.Logger:
    """
    Create a logger writing to a timestamped rotating file and to standard error.

    Standard output is reserved for the JSON document each command prints, so the
    console handler always targets standard error. With ``log_dir=None`` only the
    console handler is installed.
    """
    logger = logging.getLogger(name)
    if logger.handlers:
        # already configured
        return logger

    logger.setLevel(level)
    logger.propagate = False

    formatter = logging.Formatter(fmt=fmt, datefmt=datefmt)

    if log_to_console:
        console_handler = logging.StreamHandler(sys.stderr)
        console_handler.setLevel(level)
        console_handler.setFormatter(formatter)
        logger.addHandler(console_handler)

    if log_dir is None:
        return logger

    log_dir = Path(log_dir).expanduser()
    try:
        log_dir.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        logger.warning(f"Unable to mkdir log dir {log_dir}: {e}, logging to console only")
        return logger

    timestamp = datetime.now().strftime("%Y-%m-%d_%H-%M-%S")
    log_filepath = log_dir / f"{name}_{timestamp}.log"

    file_handler = RotatingFileHandler(
        log_filepath, maxBytes=max_bytes, backupCount=backup_count, encoding="utf-8"
    )
    file_handler.setLevel(level)
    file_handler.setFormatter(formatter)
    logger.addHandler(file_handler)

    logger.debug(f"The log system has been started, log file: {log_filepath.resolve()}")

    return logger


def setup_logger_from_config(name: str, log_config: LogConfig) -> logging.Logger:
    """
    Build a logger from a ``LogConfig`` section of the run configuration.
    """
    level = getattr(logging, log_config.log_level.upper(), None)
    if not isinstance(level, int):
        raise ValueError(f"Unknown log level: {log_config.log_level}")
    return setup_logger(
        name=name,
        log_dir=Path(log_config.log_dir) if log_config.log_dir else None,
        level=level,
        log_to_console=log_config.log_to_console,
    )
