import math

import numpy as np
import pytest

from pcii.core import from_upper_triangle

_criteria: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        previous = _criteria.get(number, (title, "PASS"))[1]
        status = "PASS" if report.passed and previous == "PASS" else "FAIL"
        _criteria[number] = (title, status)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, status = _criteria[number]
        terminalreporter.write_line(f"[{status}] criterion {number:2d}: {title}")


@pytest.fixture
def m253():
    """The 3x3 matrix with triad (2, 5, 3)."""
    return from_upper_triangle(3, [2, 5, 3])


def random_pc(rng: np.random.Generator, n: int, spread: float = 9.0):
    """Arbitrary PC matrix with log-uniform upper entries in [1/spread, spread]."""
    upper = np.exp(rng.uniform(-math.log(spread), math.log(spread), n * (n - 1) // 2))
    return from_upper_triangle(n, upper.tolist())
