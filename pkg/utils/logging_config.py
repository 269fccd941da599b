"""
logging_config.py

Logging configuration with daily rotating log files, plus presets for
production, development and test runs.
"""

import logging
import logging.handlers
from datetime import datetime
from pathlib import Path

PACKAGE_LOGGER = "mvsim"


def setup_logging(log_level=logging.INFO, log_dir="logs", console_output=False):
    """
    Set up logging with daily rotating file handlers and optional console output.

    Args:
        log_level: Logging level (default: INFO)
        log_dir: Directory to store log files (default: "logs")
        console_output: Whether to also output logs to console (default: False)

    Returns:
        The package logger.
    """
    log_path = Path(log_dir)
    log_path.mkdir(parents=True, exist_ok=True)

    formatter = logging.Formatter(
        fmt="[%(asctime)s] %(levelname)s:%(name)s:%(message)s",
        datefmt="%Y-%m-%d %H:%M:%S"
    )

    root_logger = logging.getLogger()
    root_logger.setLevel(log_level)
    root_logger.handlers.clear()

    if console_output:
        console_handler = logging.StreamHandler()
        console_handler.setLevel(log_level)
        console_handler.setFormatter(formatter)
        root_logger.addHandler(console_handler)

    today = datetime.now().strftime("%Y-%m-%d")
    log_filename = log_path / f"mvsim_{today}.log"

    file_handler = logging.handlers.TimedRotatingFileHandler(
        filename=log_filename,
        when='midnight',
        interval=1,
        backupCount=30,
        encoding='utf-8'
    )
    file_handler.suffix = "%Y-%m-%d"
    file_handler.setLevel(log_level)
    file_handler.setFormatter(formatter)
    root_logger.addHandler(file_handler)

    package_logger = logging.getLogger(PACKAGE_LOGGER)
    package_logger.setLevel(log_level)

    output_info = "file only" if not console_output else "file and console"
    package_logger.info(f"Logging configured - Level: {logging.getLevelName(log_level)}, Output: {output_info}")
    package_logger.info(f"Current log file: {log_filename}")

    return package_logger


def setup_production_logging(log_dir="logs", log_level=logging.INFO, console_output=False):
    """INFO and above, file only unless the settings ask for the console too."""
    return setup_logging(log_level=log_level, log_dir=log_dir, console_output=console_output)


def setup_development_logging(log_dir="logs_dev"):
    """Everything including DEBUG, file and console."""
    return setup_logging(log_level=logging.DEBUG, log_dir=log_dir, console_output=True)


def setup_testing_logging(log_dir="logs_test"):
    """WARNING and above, file only."""
    return setup_logging(log_level=logging.WARNING, log_dir=log_dir, console_output=False)
