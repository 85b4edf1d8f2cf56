"""Structured logging for the CLI process and experiment workers."""

import logging
import logging.handlers
import sys
import time
from pathlib import Path
from typing import Any, Literal

import structlog
from structlog.types import FilteringBoundLogger, Processor

from scrabblelab.config import Config, LoggingConfig


def _processors(json_format: bool) -> list[Processor]:
    renderer: Processor = (
        structlog.processors.JSONRenderer()
        if json_format
        else structlog.dev.ConsoleRenderer(colors=False)
    )
    return [
        structlog.contextvars.merge_contextvars,
        structlog.processors.add_log_level,
        structlog.processors.StackInfoRenderer(),
        structlog.processors.TimeStamper(fmt="ISO"),
        renderer,
    ]


def _configure(settings: LoggingConfig) -> int:
    level: int = getattr(logging, settings.level.upper())
    # stdout carries tables and CSV
    logging.basicConfig(format="%(message)s", stream=sys.stderr, level=level, force=True)
    structlog.configure(
        processors=_processors(settings.json_format),
        wrapper_class=structlog.make_filtering_bound_logger(level),
        logger_factory=structlog.stdlib.LoggerFactory(),
        cache_logger_on_first_use=True,
    )
    return level


def setup_logging(config: Config) -> None:
    """Configure structured logging to stderr, plus a rotating file if one is set."""
    settings = config.logging
    level = _configure(settings)
    if not settings.log_file:
        return

    log_file = Path(settings.log_file)
    log_file.parent.mkdir(parents=True, exist_ok=True)
    handler = logging.handlers.RotatingFileHandler(
        log_file,
        maxBytes=settings.max_file_size_mb * 1024 * 1024,
        backupCount=settings.backup_count,
        encoding="utf-8",
    )
    handler.setLevel(level)
    logging.getLogger().addHandler(handler)


def setup_worker_logging(settings: LoggingConfig) -> None:
    """Stderr-only logging for pool workers; the parent process owns the log file."""
    _configure(settings)


def get_logger(name: str = "") -> FilteringBoundLogger:
    logger: FilteringBoundLogger = structlog.get_logger(name)
    return logger


class ErrorContext:
    """Log start, completion (with elapsed seconds) or failure of an operation."""

    def __init__(self, logger: FilteringBoundLogger, operation: str, **context: Any):
        self.logger = logger
        self.operation = operation
        self.context = context
        self._started = 0.0

    def __enter__(self) -> "ErrorContext":
        self._started = time.perf_counter()
        self.logger.info("operation_started", operation=self.operation, **self.context)
        return self

    @property
    def elapsed(self) -> float:
        return time.perf_counter() - self._started

    def __exit__(
        self,
        exc_type: type[BaseException] | None,
        exc_val: BaseException | None,
        exc_tb: Any,
    ) -> Literal[False]:
        elapsed_s = round(self.elapsed, 3)
        if exc_type is None:
            self.logger.info(
                "operation_completed",
                operation=self.operation,
                elapsed_s=elapsed_s,
                **self.context,
            )
            return False
        self.logger.error(
            "operation_failed",
            operation=self.operation,
            error_type=exc_type.__name__,
            error_message=str(exc_val),
            elapsed_s=elapsed_s,
            **self.context,
        )
        return False
