import sys
from pathlib import Path

import pytest

HERE = Path(__file__).resolve().parent
sys.path.insert(0, str(HERE))

from cutlocus.multigraph import parse_graph  # noqa: E402

DATA = HERE.parent / "data" / "graphs"


def load(name):
    return parse_graph((DATA / f"{name}.json").read_text())


@pytest.fixture
def theta():
    return load("theta")


@pytest.fixture
def dumbbell():
    return load("dumbbell")


@pytest.fixture
def data_dir():
    return DATA


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
