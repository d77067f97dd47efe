"""Centralized logging configuration for the engine.

This module provides a unified logging configuration using structlog for structured
logging across the engine. Events go to stderr so that the command line keeps stdout
for results; production runs render JSON lines, development runs a console format.

Environment Variables:
    YKH_ENV: The run environment ('development' or 'production').
             Affects the logging format.
    YKH_LOG_LEVEL: The logging level (default: 'WARNING'). Falls back to LOG_LEVEL.
                   Options: DEBUG, INFO, WARNING, ERROR, CRITICAL
"""

import logging
import os
import sys
from typing import Dict, Optional

import structlog

from . import __version__


def get_run_context(app_name: str) -> Dict[str, str]:
    """Gather context stamped on every log entry.

    Returns:
        Dict[str, str]: Application name, engine version and process id.
    """
    return {
        "app_name": app_name,
        "engine_version": __version__,
        "pid": str(os.getpid()),
    }


def configure_logging(app_name: str = "ykh", level: Optional[str] = None) -> structlog.BoundLogger:
    """Configure structured logging for the engine.

    The configuration includes:
    - ISO timestamps and the log level on every event
    - Run context (application name, engine version, pid)
    - Console rendering in development, JSON rendering otherwise

    Args:
        app_name (str): The name used to identify log events. Defaults to "ykh".
        level (str, optional): Overrides the level taken from the environment.

    Returns:
        structlog.BoundLogger: A configured logger instance.

    Example:
        >>> logger = configure_logging("ykh")
        >>> logger.info("trace computed", strategy="memo", peels=12)
    """
    log_level = level or os.getenv("YKH_LOG_LEVEL") or os.getenv("LOG_LEVEL", "WARNING")
    log_level_num = getattr(logging, log_level.upper(), logging.WARNING)

    run_context = get_run_context(app_name)

    base_processors = [
        structlog.processors.add_log_level,
        structlog.processors.TimeStamper(fmt="iso"),
        structlog.processors.StackInfoRenderer(),
        structlog.processors.format_exc_info,
        structlog.processors.UnicodeDecoder(),
        lambda logger, method_name, event_dict: {**event_dict, **run_context},
    ]

    env = os.getenv("YKH_ENV", "production")
    if env == "development":
        processors = base_processors + [structlog.dev.ConsoleRenderer()]
    else:
        processors = base_processors + [structlog.processors.JSONRenderer(sort_keys=True)]

    structlog.configure(
        processors=processors,
        wrapper_class=structlog.make_filtering_bound_logger(log_level_num),
        context_class=dict,
        logger_factory=structlog.PrintLoggerFactory(file=sys.stderr),
        cache_logger_on_first_use=False,
    )

    return structlog.get_logger(app_name)
