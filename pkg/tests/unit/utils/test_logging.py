"""Unit tests for structured operation logging."""

import logging

import pytest

from divgaps.utils.logging import get_logger, log_operation, set_log_level

pytestmark = pytest.mark.unit


class TestLogOperation:
    """Test levels and the key=value message format."""

    def test_info_operation(self, caplog):
        logger = get_logger("divgaps.test.info")
        with caplog.at_level(logging.INFO, logger="divgaps.test.info"):
            log_operation(logger, "census_completed", kind="perm", n=5)
        assert caplog.records[-1].levelno == logging.INFO
        assert caplog.records[-1].getMessage() == "divgaps: operation=census_completed, kind=perm, n=5"

    def test_debug_operation(self, caplog):
        logger = get_logger("divgaps.test.debug")
        with caplog.at_level(logging.DEBUG, logger="divgaps.test.debug"):
            log_operation(logger, "table_built", kind="f")
        assert caplog.records[-1].levelno == logging.DEBUG

    def test_debug_hidden_at_info(self, caplog):
        logger = get_logger("divgaps.test.hidden")
        with caplog.at_level(logging.INFO, logger="divgaps.test.hidden"):
            log_operation(logger, "grid_solved", solver="buchstab")
        assert not caplog.records

    def test_warning_operation(self, caplog):
        logger = get_logger("divgaps.test.warning")
        with caplog.at_level(logging.INFO, logger="divgaps.test.warning"):
            log_operation(logger, "eta_nonconvergence", q=2, m=5)
        assert caplog.records[-1].levelno == logging.WARNING


class TestLevels:
    def test_env_level(self, monkeypatch):
        monkeypatch.setenv("DIVGAPS_LOG_LEVEL", "warning")
        assert get_logger("divgaps.test.env").level == logging.WARNING

    def test_invalid_env_level_falls_back(self, monkeypatch):
        monkeypatch.setenv("DIVGAPS_LOG_LEVEL", "chatty")
        assert get_logger("divgaps.test.invalid").level == logging.INFO

    def test_set_log_level(self, monkeypatch):
        monkeypatch.setenv("DIVGAPS_LOG_LEVEL", "INFO")
        logger = get_logger("divgaps.test.set")
        set_log_level("debug")
        assert logger.level == logging.DEBUG
        assert all(handler.level == logging.DEBUG for handler in logger.handlers)
        set_log_level("INFO")
