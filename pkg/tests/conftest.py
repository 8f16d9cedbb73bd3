from __future__ import annotations

import sys
from pathlib import Path

import pytest

from auraspace.search import SearchConfig, enumerate_spaces

sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture(scope="session")
def small_spaces():
    """Every space on one, two and three points."""
    return [s for n in (1, 2, 3) for s in enumerate_spaces(SearchConfig(n))]


@pytest.fixture(scope="session")
def spaces_upto_2():
    return [s for n in (1, 2) for s in enumerate_spaces(SearchConfig(n))]


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for number in sorted(results):
            terminalreporter.write_line(results[number])
