import logging
import sys
import types

import pytest

from sumprod.logging_config import configure_logging, get_child_logger, logger


@pytest.fixture(autouse=True)
def restore_level():
    yield
    configure_logging("WARNING")


def install_monitor(monkeypatch, configure_azure_monitor):
    module = types.SimpleNamespace(configure_azure_monitor=configure_azure_monitor)
    monkeypatch.setitem(sys.modules, "azure.monitor.opentelemetry", module)


def test_configure_logging_sets_level():
    configure_logging("debug")
    assert logger.level == logging.DEBUG
    assert get_child_logger("search").getEffectiveLevel() == logging.DEBUG


def test_configure_logging_leaves_monitor_alone_without_connection_string(monkeypatch):
    calls = []
    install_monitor(monkeypatch, lambda **kwargs: calls.append(kwargs))
    configure_logging("INFO")
    assert calls == []


def test_configure_logging_forwards_connection_string(monkeypatch, caplog):
    calls = []
    install_monitor(monkeypatch, lambda **kwargs: calls.append(kwargs))
    with caplog.at_level(logging.INFO, logger="sumprod"):
        configure_logging("INFO", "InstrumentationKey=00000000-0000-0000-0000-000000000000")
    assert calls == [{"connection_string": "InstrumentationKey=00000000-0000-0000-0000-000000000000"}]
    assert "Azure Monitor OpenTelemetry configured successfully" in caplog.messages


def test_configure_logging_survives_exporter_failure(monkeypatch, caplog):
    def broken(**kwargs):
        raise RuntimeError("endpoint unreachable")

    install_monitor(monkeypatch, broken)
    with caplog.at_level(logging.WARNING, logger="sumprod"):
        configure_logging("WARNING", "InstrumentationKey=bad")
    errors = [r for r in caplog.records if r.levelno == logging.ERROR and r.name == "sumprod"]
    assert [r.getMessage() for r in errors] == ["Error configuring Azure Monitor: endpoint unreachable"]
    assert logger.level == logging.WARNING
