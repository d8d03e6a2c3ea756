"""Shared test configuration for divgaps.

Tests are marked by their top-level directory. DIVGAPS_* variables of the
calling shell are removed for every test, so EngineConfig and the settings
loader only see what a test sets itself.
"""

from __future__ import annotations

import os
import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parents[1]
SRC = ROOT / "src"
if str(SRC) not in sys.path:
    sys.path.insert(0, str(SRC))

from divgaps.config import EngineConfig  # noqa: E402
from divgaps.utils.cache import TableCache  # noqa: E402

MARKED_DIRECTORIES = ("unit", "integration", "contract")
ENV_PREFIX = "DIVGAPS_"
COARSE_STEP = 2.0**-8
CACHE_VERSION = "0.1.0"


def pytest_collection_modifyitems(config: pytest.Config, items: list[pytest.Item]) -> None:
    tests_root = ROOT / "tests"
    for item in items:
        try:
            relative = Path(item.fspath).resolve().relative_to(tests_root)
        except ValueError:
            continue
        if relative.parts[0] in MARKED_DIRECTORIES:
            item.add_marker(relative.parts[0])


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch: pytest.MonkeyPatch) -> None:
    for name in list(os.environ):
        if name.startswith(ENV_PREFIX):
            monkeypatch.delenv(name)


@pytest.fixture
def engine_config(tmp_path: Path) -> EngineConfig:
    """Coarse grids (h = 2^-8, d up to u = 6) with all output under tmp_path."""
    return EngineConfig(grid_step=COARSE_STEP, d_u_max=6.0, output_dir=tmp_path / "out")


@pytest.fixture
def table_cache(engine_config: EngineConfig) -> TableCache:
    """Empty cache in the configured cache directory."""
    return TableCache(engine_config.cache_path, CACHE_VERSION)
