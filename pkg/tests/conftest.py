import pytest

from axiombench import kernels
from axiombench import _purepy


@pytest.fixture(scope="session", params=["python", "compiled"])
def backend(request):
    """Kernel module for each available backend."""
    if request.param == "python":
        return _purepy
    if kernels.BACKEND != "compiled":
        pytest.skip("compiled extension not built")
    from axiombench import _speedups
    return _speedups


_VERDICTS = []


@pytest.fixture
def verdict():
    """Record one summary line per acceptance criterion."""
    def record(number, ok, detail):
        _VERDICTS.append(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}")
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if _VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_VERDICTS, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
