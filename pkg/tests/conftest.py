import pytest

_ACCEPTANCE: list[tuple[str, bool, str]] = []


@pytest.fixture
def record():
    """Log one acceptance line: ``record("C1", passed, detail)``."""

    def _record(criterion: str, passed: bool, detail: str) -> None:
        _ACCEPTANCE.append((criterion, bool(passed), detail))

    return _record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for criterion, passed, detail in _ACCEPTANCE:
        terminalreporter.write_line(f"{criterion:<4} {'PASS' if passed else 'FAIL'}  {detail}")
