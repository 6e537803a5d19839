"""
Logging configuration for the core entropy CLI
"""

import logging
import sys
from typing import Optional

import structlog
from structlog.stdlib import LoggerFactory

from core_entropy.core.config import settings


def log_level(verbosity: int = 0) -> int:
    """-q and below: WARNING, default: INFO, -v or DEBUG=true: DEBUG"""
    if settings.DEBUG or verbosity > 0:
        return logging.DEBUG
    if verbosity < 0:
        return logging.WARNING
    return logging.INFO


def configure_logging(verbosity: int = 0, command: Optional[str] = None) -> None:
    """
    Route structlog through stdlib logging on stderr

    Args:
        verbosity: count of -v minus count of -q
        command: bound into every log line of the run
    """
    renderer = (
        structlog.dev.ConsoleRenderer()
        if settings.log_format == "console"
        else structlog.processors.JSONRenderer()
    )

    structlog.configure(
        processors=[
            structlog.contextvars.merge_contextvars,
            structlog.stdlib.filter_by_level,
            structlog.stdlib.add_logger_name,
            structlog.stdlib.add_log_level,
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.processors.StackInfoRenderer(),
            structlog.processors.format_exc_info,
            renderer,
        ],
        context_class=dict,
        logger_factory=LoggerFactory(),
        wrapper_class=structlog.stdlib.BoundLogger,
        cache_logger_on_first_use=True,
    )

    # stdout carries emitted artifacts
    logging.basicConfig(format="%(message)s", stream=sys.stderr)
    logging.getLogger().setLevel(log_level(verbosity))

    structlog.contextvars.clear_contextvars()
    if command:
        structlog.contextvars.bind_contextvars(command=command)
