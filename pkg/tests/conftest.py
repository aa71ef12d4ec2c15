import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

import oracles

_CRITERIA: dict[int, tuple[str, str]] = {}


@pytest.fixture(scope="session")
def corpus9():
    return oracles.graph_corpus(9)


@pytest.fixture(scope="session")
def corpus8(corpus9):
    return tuple(g for g in corpus9 if len(g) <= 8)


class CriterionRecorder:
    def __init__(self, number: int, title: str):
        self.number = number
        self.title = title

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        status = "PASS" if exc_type is None else "FAIL"
        line = f"criterion {self.number:>2} {status}: {self.title}"
        _CRITERIA[self.number] = (status, line)
        print(line)
        return False


@pytest.fixture
def criterion():
    return CriterionRecorder


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        terminalreporter.write_line(_CRITERIA[n][1])
