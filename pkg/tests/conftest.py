import json
import pathlib

import pytest

from khoveq import corpus
from khoveq.frobenius import universal_calculus

GOLDEN = pathlib.Path(__file__).parent / "golden"


@pytest.fixture(scope="session")
def golden():
    return json.loads((GOLDEN / "derived.json").read_text())


@pytest.fixture(scope="session")
def universal():
    return universal_calculus()


@pytest.fixture(scope="session")
def all_diagrams():
    return corpus.corpus()


ACCEPTANCE_LINES: list = []


@pytest.fixture
def acceptance_line():
    def record(number, ok, detail):
        ACCEPTANCE_LINES.append(f"criterion {number}: {'PASS' if ok else 'FAIL'} ({detail})")

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
