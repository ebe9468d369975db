from __future__ import annotations

from pathlib import Path

import pytest

from stabfan.fan import Arrangement
from stabfan.quiver import parse_quiver
from stabfan.rootdata import parse_diagram

FIXTURES = Path(__file__).parent / "fixtures"


def load_quiver(name: str):
    return parse_quiver((FIXTURES / name).read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def two_cycle():
    return load_quiver("two_cycle.txt")


@pytest.fixture(scope="session")
def flop():
    return load_quiver("a2_flop.txt")


@pytest.fixture(scope="session")
def d4():
    return Arrangement(parse_diagram("D4~"), ["e", "3"])


@pytest.fixture(scope="session")
def a1():
    return Arrangement(parse_diagram("A1~"), ["e", "0"])


@pytest.fixture(scope="session")
def a2():
    return Arrangement(parse_diagram("A2~"), ["e", "0", "1"])


# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[number])
