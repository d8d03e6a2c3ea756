"""Shared utilities: logging, serialization and the on-disk table cache."""

from divgaps.utils.cache import TableCache, cache_key, payload_checksum
from divgaps.utils.logging import get_logger, log_operation

__all__ = [
    "TableCache",
    "cache_key",
    "payload_checksum",
    "get_logger",
    "log_operation",
]
