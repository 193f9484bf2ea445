import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from helpers import CHAIN3, CHAIN4, CYCLE3, DIAMOND, LOOPY, SIX, graph  # noqa: E402


@pytest.fixture
def chain3():
    return graph(CHAIN3)


@pytest.fixture
def chain4():
    return graph(CHAIN4)


@pytest.fixture
def diamond():
    return graph(DIAMOND)


@pytest.fixture
def cycle3():
    return graph(CYCLE3)


@pytest.fixture
def loopy():
    return graph(LOOPY)


@pytest.fixture
def six():
    return graph(SIX)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import VERDICTS
    except ImportError:
        return
    if VERDICTS:
        terminalreporter.section("acceptance criteria")
        for num in sorted(VERDICTS):
            terminalreporter.write_line(VERDICTS[num])
