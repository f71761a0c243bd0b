"""Unit tests for logging configuration."""

import logging

import pytest

from qfraud.logging import HANDLER_NAME, get_logger, setup_logging


@pytest.fixture
def qfraud_logger():
    logger = logging.getLogger("qfraud")
    saved = list(logger.handlers), logger.level
    yield logger
    logger.handlers[:] = saved[0]
    logger.setLevel(saved[1])


class TestSetupLogging:
    def test_attaches_one_stderr_handler(self, qfraud_logger):
        """Repeated setup attaches a single handler."""
        setup_logging()
        setup_logging()
        ours = [h for h in qfraud_logger.handlers if h.get_name() == HANDLER_NAME]
        assert len(ours) == 1

    def test_level_accepts_names(self, qfraud_logger):
        """Level names are accepted case-insensitively."""
        setup_logging("debug")
        assert qfraud_logger.level == logging.DEBUG

    def test_propagation_disabled(self, qfraud_logger):
        """The package logger does not propagate to root."""
        setup_logging()
        assert qfraud_logger.propagate is False

    def test_format_includes_level_and_name(self, qfraud_logger):
        """Records are formatted with level and logger name."""
        setup_logging()
        handler = next(h for h in qfraud_logger.handlers if h.get_name() == HANDLER_NAME)
        record = logging.LogRecord("qfraud.x", logging.INFO, __file__, 1, "hello", None, None)
        assert "[INFO] qfraud.x: hello" in handler.format(record)


class TestGetLogger:
    def test_returns_named_child(self):
        """get_logger returns the logger of the given name."""
        assert get_logger("qfraud.harness").name == "qfraud.harness"
