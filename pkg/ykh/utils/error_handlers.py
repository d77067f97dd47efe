"""Error handlers for the command line.

Every command runs under these handlers so that failures are reported the
same way: one ``error:`` line on stderr, a structured log event and the exit
code carried by the exception.
"""

import sys

import structlog

from .exceptions import YKHError

logger = structlog.get_logger(__name__)

EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_PROPERTY_FAILURE = 2


def handle_engine_error(error: YKHError) -> int:
    """Handle errors raised by the engine.

    Args:
        error: The engine error that occurred

    Returns:
        The exit code for the process
    """
    log = logger.error if error.exit_code == EXIT_PROPERTY_FAILURE else logger.warning
    log("command failed", error_code=error.error_code, error=error.message)
    print(f"error: {error.message}", file=sys.stderr)
    return error.exit_code


def handle_internal_error(error: Exception) -> int:
    """Handle unexpected errors.

    Args:
        error: The unexpected error that occurred

    Returns:
        The exit code for the process
    """
    logger.error("unexpected failure", error=str(error), exc_info=True)
    print(f"error: internal failure: {error}", file=sys.stderr)
    return EXIT_INPUT_ERROR
