import logging

import pytest
import structlog

from core_entropy.core.config import settings
from core_entropy.core.logging import configure_logging, log_level


@pytest.fixture
def no_debug(monkeypatch):
    monkeypatch.setattr(settings, "DEBUG", False)


def test_log_level_follows_verbosity(no_debug):
    assert log_level(0) == logging.INFO
    assert log_level(1) == logging.DEBUG
    assert log_level(-1) == logging.WARNING
    assert log_level(-3) == logging.WARNING


def test_debug_setting_wins(monkeypatch):
    monkeypatch.setattr(settings, "DEBUG", True)
    assert log_level(-1) == logging.DEBUG


def test_configure_logging_binds_command(no_debug):
    configure_logging(-1, "entropy")
    assert logging.getLogger().level == logging.WARNING
    assert structlog.contextvars.get_contextvars() == {"command": "entropy"}

    configure_logging()
    assert logging.getLogger().level == logging.INFO
    assert structlog.contextvars.get_contextvars() == {}
