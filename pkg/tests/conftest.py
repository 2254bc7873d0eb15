"""Shared fixtures.  Every test runs with outbound network connections refused."""

from __future__ import annotations

import socket
from pathlib import Path

import pytest

from amalgamkit.scenarios import ScenarioConfig, co1_context, verify_all

ROOT = Path(__file__).resolve().parent.parent
ORACLES = ROOT / "oracles"


class NetworkBlocked(RuntimeError):
    pass


@pytest.fixture(autouse=True)
def deny_network(monkeypatch):
    def refuse(*args, **kwargs):
        raise NetworkBlocked("tests may not open network connections")

    monkeypatch.setattr(socket.socket, "connect", refuse)
    monkeypatch.setattr(socket, "create_connection", refuse)


@pytest.fixture
def empty_cache(tmp_path, monkeypatch):
    cache = tmp_path / "cache"
    monkeypatch.setenv("AMALGAMKIT_CACHE", str(cache))
    return cache


@pytest.fixture(scope="session")
def vendored_cfg(tmp_path_factory) -> ScenarioConfig:
    return ScenarioConfig(cache_dir=str(tmp_path_factory.mktemp("cache")))


@pytest.fixture(scope="session")
def co1(vendored_cfg):
    ctx = co1_context(vendored_cfg)
    assert ctx is not None, "vendored Co1 generators missing"
    return ctx


@pytest.fixture(scope="session")
def full_report(vendored_cfg):
    return verify_all(vendored_cfg)


# one line per acceptance criterion, repeated in the terminal summary
ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def criterion():
    def record(number: int, ok: bool, detail: str) -> None:
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
