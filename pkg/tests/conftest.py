import pytest

_acceptance_results = []


@pytest.fixture
def acceptance_log():
    """Collect one pass/fail line per acceptance criterion for the summary."""

    def log(criterion: str, passed: bool, detail: str = ""):
        _acceptance_results.append((criterion, passed, detail))

    return log


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _acceptance_results:
        return
    terminalreporter.section("acceptance criteria")
    for criterion, passed, detail in _acceptance_results:
        status = "PASS" if passed else "FAIL"
        line = f"[{status}] {criterion}"
        if detail:
            line += f" ({detail})"
        terminalreporter.write_line(line)
