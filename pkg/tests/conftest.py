import pytest

_CRITERIA: list[tuple[str, bool, str]] = []


@pytest.fixture(scope="session")
def criterion():
    """Record one acceptance criterion outcome and assert it. The
    terminal summary prints one pass/fail line per recorded criterion."""

    def _report(name: str, ok: bool, detail: str = ""):
        _CRITERIA.append((name, bool(ok), detail))
        assert ok, f"{name}: {detail}"

    return _report


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in _CRITERIA:
        status = "PASS" if ok else "FAIL"
        line = f"[{status}] {name}"
        if detail:
            line += f" :: {detail}"
        terminalreporter.write_line(line)
