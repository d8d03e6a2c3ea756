"""On-disk table cache with checksum and engine-version validation."""

from __future__ import annotations

import hashlib
import os
import tempfile
from pathlib import Path
from typing import Any

from packaging.version import InvalidVersion, Version

from divgaps.errors import CacheIntegrityError
from divgaps.utils.logging import get_logger, log_operation
from divgaps.utils.serialization import dumps_json, loads_json

logger = get_logger(__name__)


def cache_key(kind: str, q: int | None, m: int, n_max: int, engine_version: str) -> str:
    """Canonical key for a table: (kind, q, m, n_max, engine version)."""
    q_part = "perm" if q is None else str(q)
    return f"{kind}-q{q_part}-m{m}-n{n_max}-v{engine_version}"


def payload_checksum(payload: Any) -> str:
    """SHA-256 over the canonical JSON encoding of a payload."""
    return hashlib.sha256(dumps_json(payload)).hexdigest()


class TableCache:
    """
    Cache of computed tables, one JSON file per key.

    # AICODE-NOTE: Entries carry the engine version and a checksum of their
    # payload. A version or checksum mismatch invalidates the entry, so a hit
    # always returns exactly what recomputation would. Writes go through a
    # temporary file plus os.replace; concurrent writers are not supported.
    """

    def __init__(self, directory: Path, engine_version: str, strict: bool = False) -> None:
        """
        Initialize cache.

        Args:
            directory: Directory holding cache files (created on first write)
            engine_version: Current engine version; entries from other versions are stale
            strict: Raise CacheIntegrityError on checksum mismatch instead of recomputing
        """
        self.directory = Path(directory)
        self.engine_version = engine_version
        self.strict = strict

    def _path(self, key: str) -> Path:
        return self.directory / f"{key}.json"

    def get(self, key: str) -> Any | None:
        """
        Get a cached payload if present and valid.

        Returns:
            The payload, or None when missing, stale or corrupt
        """
        path = self._path(key)
        if not path.is_file():
            log_operation(logger, "cache_miss", key=key)
            return None

        try:
            entry = loads_json(path.read_bytes())
        except ValueError:
            self.invalidate(key)
            return None

        if not self._version_matches(entry.get("engine_version")):
            log_operation(
                logger, "cache_version_mismatch", key=key, found=entry.get("engine_version")
            )
            self.invalidate(key)
            return None

        payload = entry.get("payload")
        expected = entry.get("checksum", "")
        actual = payload_checksum(payload)
        if actual != expected:
            log_operation(logger, "cache_checksum_mismatch", key=key)
            if self.strict:
                raise CacheIntegrityError(key, expected, actual)
            self.invalidate(key)
            return None

        log_operation(logger, "cache_hit", key=key)
        return payload

    def set(self, key: str, payload: Any) -> None:
        """Store a payload atomically."""
        self.directory.mkdir(parents=True, exist_ok=True)
        entry = {
            "engine_version": self.engine_version,
            "checksum": payload_checksum(payload),
            "payload": payload,
        }
        fd, tmp_name = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
        try:
            with os.fdopen(fd, "wb") as handle:
                handle.write(dumps_json(entry))
            os.replace(tmp_name, self._path(key))
        except BaseException:
            Path(tmp_name).unlink(missing_ok=True)
            raise
        log_operation(logger, "cache_stored", key=key)

    def invalidate(self, key: str) -> None:
        self._path(key).unlink(missing_ok=True)

    def clear(self) -> None:
        if self.directory.is_dir():
            for path in self.directory.glob("*.json"):
                path.unlink(missing_ok=True)

    def _version_matches(self, found: Any) -> bool:
        if not isinstance(found, str):
            return False
        try:
            return Version(found) == Version(self.engine_version)
        except InvalidVersion:
            return False
