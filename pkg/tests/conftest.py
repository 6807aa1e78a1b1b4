import pytest

from photonstat import kernels
from photonstat.combinatorics import _log_bunching_cached


@pytest.fixture(params=sorted(kernels.BACKENDS))
def backend(request):
    """Run a test once per available kernel backend."""
    previous = kernels.set_backend(request.param)
    _log_bunching_cached.cache_clear()
    yield request.param
    kernels.set_backend(previous)
    _log_bunching_cached.cache_clear()


_ACCEPTANCE = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion_" in report.nodeid:
        if report.when == "call" or report.outcome != "passed":
            name = report.nodeid.split("::", 1)[1]
            prev = _ACCEPTANCE.get(name, "PASS")
            _ACCEPTANCE[name] = "PASS" if (report.passed and prev == "PASS") else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_ACCEPTANCE, key=lambda s: int(s.split("_")[2])):
        terminalreporter.write_line(f"{_ACCEPTANCE[name]}  {name}")
