import pytest

_SCOREBOARD = []


@pytest.fixture
def acceptance_report():
    """One PASS/FAIL line per acceptance test, echoed after the run."""

    def _report(number, description, passed, detail=""):
        status = "PASS" if passed else "FAIL"
        suffix = f" ({detail})" if detail else ""
        line = f"[acceptance {number:02d}] {status}: {description}{suffix}"
        print(line)
        _SCOREBOARD.append(line)

    return _report


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _SCOREBOARD:
        terminalreporter.section("acceptance scoreboard")
        for line in sorted(_SCOREBOARD):
            terminalreporter.write_line(line)
