from pathlib import Path

import pytest

from lacsphere.harness.fixtures import FixtureStore

FIXTURES = Path(__file__).parent / "fixtures" / "derived.json"


@pytest.fixture(scope="session")
def store():
    return FixtureStore(FIXTURES)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
