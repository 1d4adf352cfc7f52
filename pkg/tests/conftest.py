import pytest

from telegraph_spline.quintic_basis import UniformGrid

_criteria: list[tuple[str, bool, str]] = []


@pytest.fixture
def unit_grid():
    return UniformGrid(0.0, 1.0, 10)


@pytest.fixture
def record_criterion():
    """Log one acceptance line; the summary is printed at the end of the run."""

    def record(label: str, passed: bool, detail: str) -> bool:
        _criteria.append((label, passed, detail))
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for label, passed, detail in _criteria:
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {label}: {detail}")
