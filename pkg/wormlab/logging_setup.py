import logging
import os
from datetime import datetime

from .exceptions import IoError, ParseError

LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


def setup_logging(log_dir: str, log_level: str = "INFO") -> logging.Logger:
    """
    Attach a stderr handler and a per-run file handler to the "wormlab" logger.

    Args:
        log_dir    : Directory for `wormlab_log_<YYYY-mm-dd_HH-MM-SS>.log`; created if missing.
        log_level  : One of DEBUG, INFO, WARNING, ERROR, CRITICAL (any case).

    Returns:
        The "wormlab" logger. Earlier handlers are closed and replaced.

    Raises:
        ParseError : unknown level name.
        IoError    : the log directory or file cannot be created.
    """
    name = str(log_level).upper()
    if name not in LEVELS:
        raise ParseError(f"Unknown log level {log_level!r}, expected one of {', '.join(LEVELS)}")
    level = getattr(logging, name)

    timestamp = datetime.now().strftime("%Y-%m-%d_%H-%M-%S")
    log_file = os.path.join(log_dir, f"wormlab_log_{timestamp}.log")
    try:
        os.makedirs(log_dir, exist_ok=True)
        fh = logging.FileHandler(log_file, mode='w')
    except OSError as e:
        raise IoError(f"Cannot write log file {log_file}: {e}") from e

    logger = logging.getLogger("wormlab")
    logger.setLevel(level)

    # repeated CLI runs in one process must not stack handlers
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
        handler.close()

    fmt = logging.Formatter(
        fmt="%(asctime)s | %(levelname)-8s | %(module)s.%(funcName)s | %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S"
    )

    # stderr only, stdout carries the emitted artifact
    ch = logging.StreamHandler()
    ch.setLevel(level)
    ch.setFormatter(fmt)
    fh.setLevel(level)
    fh.setFormatter(fmt)

    logger.addHandler(ch)
    logger.addHandler(fh)

    logger.debug(f"wormlab logging at {name} to {log_file}")
    return logger
