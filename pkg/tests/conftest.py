from __future__ import annotations

import importlib.util
from pathlib import Path

import pytest

from sunpi.precision import ctx_new

ROOT = Path(__file__).resolve().parents[1]
DATA = Path(__file__).resolve().parent / "data"

# one line per acceptance criterion, printed in the terminal summary
ACCEPTANCE_LINES: list = []


def load_script(name: str):
    spec = importlib.util.spec_from_file_location(name, ROOT / "scripts" / f"{name}.py")
    mod = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mod)
    return mod


@pytest.fixture(scope="session")
def ctx60():
    return ctx_new(60)


@pytest.fixture(scope="session")
def ctx120():
    return ctx_new(120)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
