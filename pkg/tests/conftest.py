import pytest

_ACCEPTANCE = {}


@pytest.fixture
def record():
    """Store one acceptance outcome for the end-of-run summary."""

    def _record(k, title, ok, detail):
        _ACCEPTANCE[k] = (title, ok, detail)

    return _record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_ACCEPTANCE):
        title, ok, detail = _ACCEPTANCE[k]
        terminalreporter.line(f"criterion {k:2d} [{'PASS' if ok else 'FAIL'}] {title}: {detail}")
