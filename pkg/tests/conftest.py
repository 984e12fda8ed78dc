import numpy as np
import pytest
from hypothesis import settings

from mvspacetime import _backend

settings.register_profile("default", max_examples=100, deadline=None)
settings.load_profile("default")


@pytest.fixture(params=_backend.available())
def backend(request):
    """Each kernel implementation that could be imported."""
    return _backend.load(request.param)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


_ACCEPTANCE = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::" not in report.nodeid:
        return
    name = report.nodeid.rsplit("::", 1)[1]
    if report.when == "call" or report.failed:
        _ACCEPTANCE[name] = _ACCEPTANCE.get(name, True) and report.passed


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    from test_acceptance import CRITERIA
    terminalreporter.section("acceptance criteria")
    for name, label in CRITERIA.items():
        if name in _ACCEPTANCE:
            terminalreporter.write_line(f"{'PASS' if _ACCEPTANCE[name] else 'FAIL'}  criterion {label}")
