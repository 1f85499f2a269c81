import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from lgrig import SubshiftSession, parse_lspec  # noqa: E402

NAMED_SPECS = ("const:1", "const:2", "geom:2", "ex3", "list:3,1,4,1,5:repeat-last")
ALL_SPECS = NAMED_SPECS + ("ex4", "poly:1,0,1")

_SESSIONS: dict[str, SubshiftSession] = {}


def session_for(label: str) -> SubshiftSession:
    """One cached session per spec label for the whole test run."""
    if label not in _SESSIONS:
        _SESSIONS[label] = SubshiftSession(parse_lspec(label))
    return _SESSIONS[label]


@pytest.fixture
def const1():
    return session_for("const:1")


@pytest.fixture
def const2():
    return session_for("const:2")


@pytest.fixture
def geom2():
    return session_for("geom:2")


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for number in sorted(lines):
            terminalreporter.write_line(lines[number])
