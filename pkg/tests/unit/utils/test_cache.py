"""Unit tests for the on-disk table cache."""

import pytest

from divgaps.errors import CacheIntegrityError
from divgaps.utils.cache import TableCache, cache_key, payload_checksum
from divgaps.utils.serialization import dumps_json, loads_json

pytestmark = pytest.mark.unit

PAYLOAD = {"kind": "f", "values": ["1/1", "3/4", "2/3"]}


def _tamper(cache: TableCache, key: str) -> None:
    path = cache.directory / f"{key}.json"
    entry = loads_json(path.read_bytes())
    entry["payload"]["values"][1] = "1/2"
    path.write_bytes(dumps_json(entry))


class TestCacheKey:
    def test_field_kind(self):
        assert cache_key("f", 2, 3, 100, "0.1.0") == "f-q2-m3-n100-v0.1.0"

    def test_permutation_kind(self):
        assert cache_key("g", None, 1, 50, "0.1.0") == "g-qperm-m1-n50-v0.1.0"


class TestTableCache:
    """Test hits, invalidation and strict mode."""

    def test_miss_then_hit(self, table_cache):
        assert table_cache.get("k") is None
        table_cache.set("k", PAYLOAD)
        assert table_cache.get("k") == PAYLOAD

    def test_lives_under_output_dir(self, table_cache, engine_config):
        table_cache.set("k", PAYLOAD)
        assert (engine_config.output_dir / "cache" / "k.json").is_file()

    def test_entry_layout(self, table_cache):
        table_cache.set("k", PAYLOAD)
        entry = loads_json((table_cache.directory / "k.json").read_bytes())
        assert entry["engine_version"] == "0.1.0"
        assert entry["checksum"] == payload_checksum(PAYLOAD)
        assert not list(table_cache.directory.glob("*.tmp"))

    def test_version_mismatch_invalidates(self, table_cache):
        table_cache.set("k", PAYLOAD)
        newer = TableCache(table_cache.directory, "0.2.0")
        assert newer.get("k") is None
        assert not (table_cache.directory / "k.json").exists()

    def test_equivalent_versions_match(self, tmp_path):
        TableCache(tmp_path, "0.1").set("k", PAYLOAD)
        assert TableCache(tmp_path, "0.1.0").get("k") == PAYLOAD

    def test_tampered_payload_recomputes(self, table_cache):
        table_cache.set("k", PAYLOAD)
        _tamper(table_cache, "k")
        assert table_cache.get("k") is None
        assert not (table_cache.directory / "k.json").exists()

    def test_tampered_payload_strict(self, table_cache):
        strict = TableCache(table_cache.directory, "0.1.0", strict=True)
        strict.set("k", PAYLOAD)
        _tamper(strict, "k")
        with pytest.raises(CacheIntegrityError) as exc_info:
            strict.get("k")
        assert exc_info.value.key == "k"

    def test_corrupt_file(self, table_cache):
        table_cache.directory.mkdir(parents=True)
        (table_cache.directory / "k.json").write_text("{not json")
        assert table_cache.get("k") is None

    def test_clear(self, table_cache):
        table_cache.set("a", PAYLOAD)
        table_cache.set("b", PAYLOAD)
        table_cache.clear()
        assert table_cache.get("a") is None and table_cache.get("b") is None
