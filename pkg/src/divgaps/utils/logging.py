"""Structured logging configuration for divgaps operations.

# AICODE-NOTE: One stream handler per logger, level from DIVGAPS_LOG_LEVEL.
# Table and grid construction details go to DEBUG so the default INFO level
# only shows census, check and campaign results.
"""

from __future__ import annotations

import logging
import os
from typing import Any

_DEBUG_OPERATIONS = frozenset(
    {
        "table_built",
        "column_built",
        "series_expanded",
        "grid_solved",
        "field_built",
        "sieve_layer",
        "cache_hit",
        "cache_miss",
        "cache_stored",
        "config_loaded",
    }
)
_WARNING_OPERATIONS = frozenset(
    {
        "precision_loss_warning",
        "eta_nonconvergence",
        "cache_checksum_mismatch",
        "cache_version_mismatch",
        "overlap_deviation",
    }
)


def get_logger(name: str) -> logging.Logger:
    """
    Get a logger configured for divgaps operations.

    Args:
        name: Logger name (typically __name__)

    Returns:
        Configured logger instance
    """
    logger = logging.getLogger(name)

    log_level_str = os.getenv("DIVGAPS_LOG_LEVEL", "INFO").upper()
    log_level = getattr(logging, log_level_str, logging.INFO)
    if not isinstance(log_level, int):
        log_level = logging.INFO

    logger.setLevel(log_level)

    if not logger.handlers:
        handler = logging.StreamHandler()
        handler.setLevel(log_level)
        formatter = logging.Formatter("%(asctime)s - %(name)s - %(levelname)s - %(message)s")
        handler.setFormatter(formatter)
        logger.addHandler(handler)

    return logger


def log_operation(logger: logging.Logger, operation: str, **kwargs: Any) -> None:
    """
    Log a computation step with structured key=value fields.

    Levels:
    - DEBUG: table_built, grid_solved, series_expanded, cache_hit, ...
    - WARNING: precision_loss_warning, eta_nonconvergence, cache_checksum_mismatch, ...
    - INFO: everything else (census_completed, check_completed, campaign_completed)

    Args:
        logger: Logger instance
        operation: Operation type
        **kwargs: Structured fields to log
    """
    fields: dict[str, Any] = {"operation": operation}
    fields.update(kwargs)
    field_str = ", ".join(f"{k}={v}" for k, v in fields.items())

    if operation in _DEBUG_OPERATIONS:
        logger.debug(f"divgaps: {field_str}")
    elif operation in _WARNING_OPERATIONS:
        logger.warning(f"divgaps: {field_str}")
    else:
        logger.info(f"divgaps: {field_str}")


def set_log_level(level: str) -> None:
    """
    Apply a level to every divgaps logger created so far and to later ones.

    Args:
        level: Standard level name (DEBUG, INFO, WARNING, ERROR)
    """
    os.environ["DIVGAPS_LOG_LEVEL"] = level.upper()
    numeric = getattr(logging, level.upper(), logging.INFO)
    for name in list(logging.root.manager.loggerDict):
        if name == "divgaps" or name.startswith("divgaps."):
            existing = logging.getLogger(name)
            existing.setLevel(numeric)
            for handler in existing.handlers:
                handler.setLevel(numeric)
