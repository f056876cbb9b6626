# shared/logging/logger.py
# Structured JSON logger used by every module.
# Every log line is valid JSON, written to stderr so reports on stdout stay clean.

import logging
import json
import os
from datetime import datetime, timezone


# Extra fields a caller may attach via logger.info("msg", extra={...})
_EXTRA_FIELDS = (
    "ring", "size", "op", "statement", "line", "seed",
    "status", "theorem", "elapsed_ms", "witness",
)


class StructuredFormatter(logging.Formatter):
    """
    Formats every log line as a JSON object.
    Attach extra fields via: logger.info("msg", extra={"ring": "Z/4", "size": 4})
    """
    def format(self, record: logging.LogRecord) -> str:
        log = {
            "ts":      datetime.now(timezone.utc).isoformat(),
            "level":   record.levelname,
            "service": record.name,
            "message": record.getMessage(),
        }
        for key in _EXTRA_FIELDS:
            if hasattr(record, key):
                log[key] = getattr(record, key)

        if record.exc_info:
            log["exception"] = self.formatException(record.exc_info)

        return json.dumps(log, ensure_ascii=False, default=str)


def get_logger(name: str) -> logging.Logger:
    """
    Returns a structured logger for the given module name.
    Call this once per module:  logger = get_logger(__name__)
    """
    logger = logging.getLogger(name)

    if not logger.handlers:
        handler = logging.StreamHandler()
        handler.setFormatter(StructuredFormatter())
        logger.addHandler(handler)
        logger.propagate = False

        level = os.getenv("LOG_LEVEL", "WARNING").upper()
        logger.setLevel(getattr(logging, level, logging.WARNING))

    return logger


def set_level(level: str) -> None:
    """Re-levels every logger created through get_logger (used by --verbose)."""
    resolved = getattr(logging, level.upper(), logging.WARNING)
    for logger in logging.Logger.manager.loggerDict.values():
        if isinstance(logger, logging.Logger) and any(
            isinstance(h.formatter, StructuredFormatter) for h in logger.handlers
        ):
            logger.setLevel(resolved)
