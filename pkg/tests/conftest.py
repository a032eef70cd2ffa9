from pathlib import Path

import pytest

from kgsynth.knowledge import bundled_graph

# criterion -> "PASS" / "FAIL", filled by test_acceptance.py
ACCEPTANCE: dict[str, str] = {}


@pytest.fixture(scope="session")
def kg():
    return bundled_graph()


@pytest.fixture(scope="session")
def golden():
    return Path(__file__).parent / "golden"


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, verdict in ACCEPTANCE.items():
        terminalreporter.write_line(f"{verdict}  {name}")
