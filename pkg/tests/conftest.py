import pytest

_LINES: list[str] = []


@pytest.fixture
def acceptance():
    """Record a criterion's outcome; the lines are printed after the run."""

    def record(number: int, ok: bool, detail: str) -> None:
        _LINES.append(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}")
        assert ok, detail

    return record


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
