"""Unit tests for EngineConfig and load_config."""

from pathlib import Path

import pytest
from pydantic import ValidationError

from divgaps.config import DivgapsSettings, EngineConfig, load_config

pytestmark = pytest.mark.unit


class TestEngineConfig:
    """Test defaults and validators."""

    def test_defaults(self):
        config = EngineConfig()
        assert config.grid_step == 2.0**-10
        assert config.tail_start == 12.0
        assert config.exact_threshold == 200
        assert config.census_degrees == {2: 16, 3: 12, 4: 10, 5: 9}
        assert config.cache_path == Path("divgaps-out/cache")

    def test_cache_dir_override(self, tmp_path):
        assert EngineConfig(cache_dir=tmp_path).cache_path == tmp_path

    def test_frozen(self):
        with pytest.raises(ValidationError):
            EngineConfig().grid_step = 0.25  # type: ignore[misc]

    @pytest.mark.parametrize("step", [0.003, 2.0**-7, 1.0 / 3.0])
    def test_invalid_grid_step(self, step):
        with pytest.raises(ValidationError):
            EngineConfig(grid_step=step)

    def test_tail_start_must_be_integer(self):
        with pytest.raises(ValidationError, match="tail_start must be an integer"):
            EngineConfig(tail_start=10.5)

    def test_tail_start_within_grid(self):
        with pytest.raises(ValidationError, match="must not exceed omega_u_max"):
            EngineConfig(omega_u_max=10.0, tail_start=11.0)

    def test_overlap_inside_exact_range(self):
        with pytest.raises(ValidationError, match="overlap_window"):
            EngineConfig(exact_threshold=30, overlap_window=40)

    def test_census_degrees_fit_budget(self):
        with pytest.raises(ValidationError, match="enumeration budget"):
            EngineConfig(census_degrees={2: 24})
        assert EngineConfig(census_degrees={2: 8}, enumeration_budget=256).census_degrees == {2: 8}

    def test_census_degrees_entries(self):
        with pytest.raises(ValidationError):
            EngineConfig(census_degrees={1: 4})


class TestLoadConfig:
    """Test file < environment < explicit overrides."""

    def test_no_sources(self, monkeypatch):
        monkeypatch.delenv("DIVGAPS_EXACT_THRESHOLD", raising=False)
        assert load_config() == EngineConfig()

    def test_yaml_file(self, tmp_path):
        path = tmp_path / "config.yaml"
        path.write_text("grid_step: 0.00390625\nexact_threshold: 120\ncensus_degrees:\n  2: 8\n")
        config = load_config(path)
        assert config.grid_step == 2.0**-8
        assert config.exact_threshold == 120
        assert config.census_degrees == {2: 8}

    def test_empty_file(self, tmp_path):
        path = tmp_path / "empty.yaml"
        path.write_text("")
        assert load_config(path) == EngineConfig()

    def test_environment_beats_file(self, tmp_path, monkeypatch):
        path = tmp_path / "config.yaml"
        path.write_text("exact_threshold: 120\n")
        monkeypatch.setenv("DIVGAPS_EXACT_THRESHOLD", "150")
        assert load_config(path).exact_threshold == 150

    def test_overrides_beat_environment(self, monkeypatch):
        monkeypatch.setenv("DIVGAPS_EXACT_THRESHOLD", "150")
        assert load_config(exact_threshold=90).exact_threshold == 90

    def test_none_overrides_ignored(self, monkeypatch):
        monkeypatch.delenv("DIVGAPS_OUTPUT_DIR", raising=False)
        assert load_config(output_dir=None).output_dir == Path("divgaps-out")

    def test_non_mapping_file(self, tmp_path):
        path = tmp_path / "list.yaml"
        path.write_text("- 1\n- 2\n")
        with pytest.raises(ValueError, match="mapping"):
            load_config(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            load_config(tmp_path / "absent.yaml")

    def test_invalid_value(self, tmp_path):
        path = tmp_path / "config.yaml"
        path.write_text("grid_step: 0.3\n")
        with pytest.raises(ValidationError):
            load_config(path)


def test_settings_read_environment(monkeypatch, tmp_path):
    monkeypatch.setenv("DIVGAPS_OUTPUT_DIR", str(tmp_path))
    monkeypatch.setenv("DIVGAPS_CACHE_ENABLED", "false")
    settings = DivgapsSettings()
    assert settings.output_dir == tmp_path
    assert settings.cache_enabled is False
