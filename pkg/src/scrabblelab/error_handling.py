"""Error-to-exit-code handling for command-line entry points."""

import functools
import sys
from collections.abc import Callable
from typing import Any

from scrabblelab.errors import (
    ConfigError,
    DomainError,
    EmptyLexiconError,
    RecordFormatError,
    ScrabbleLabError,
    TelemetrySchemaError,
    TileDistributionError,
    WordListError,
)
from scrabblelab.logging_config import get_logger

log = get_logger("error_handling")

EXIT_OK = 0
EXIT_VERIFICATION = 1
EXIT_USAGE = 2
EXIT_IO = 3

_USAGE_ERRORS: tuple[type[Exception], ...] = (
    ConfigError,
    DomainError,
    TelemetrySchemaError,
    RecordFormatError,
    TileDistributionError,
    EmptyLexiconError,
)
_IO_ERRORS: tuple[type[Exception], ...] = (WordListError, OSError)


def exit_code_for(error: BaseException) -> int:
    """Map an exception to the documented command exit code."""
    if isinstance(error, _USAGE_ERRORS):
        return EXIT_USAGE
    if isinstance(error, _IO_ERRORS):
        return EXIT_IO
    return EXIT_VERIFICATION


def cli_errors(operation_name: str) -> Callable[[Callable[..., int]], Callable[..., int]]:
    """
    Decorator for subcommand handlers to provide consistent error handling.

    Known failures are logged, reported on stderr as one line, and turned
    into exit codes: 2 usage/config/schema, 3 I/O, 1 anything else from
    the library. Unexpected exceptions propagate.

    Args:
        operation_name: Name of the subcommand for logging
    """
    def decorator(func: Callable[..., int]) -> Callable[..., int]:
        @functools.wraps(func)
        def wrapper(*args: Any, **kwargs: Any) -> int:
            try:
                return func(*args, **kwargs)

            except (ScrabbleLabError, OSError) as e:
                code = exit_code_for(e)
                log.error("command_failed",
                          operation=operation_name,
                          error_type=type(e).__name__,
                          error=safe_string_truncate(str(e), 300),
                          exit_code=code)
                print(f"error: {e}", file=sys.stderr)
                return code

        return wrapper
    return decorator


def safe_string_truncate(text: str, max_length: int = 100) -> str:
    """Safely truncate a string for logging, handling None and non-string types."""
    if text is None:
        return "<None>"

    text_str = str(text)
    if len(text_str) <= max_length:
        return text_str

    return text_str[:max_length - 3] + "..."
