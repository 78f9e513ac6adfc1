import pytest
from hypothesis import strategies as st

from eislattice.ring import Eis


def eis(bound: int = 20):
    return st.builds(Eis, st.integers(-bound, bound), st.integers(-bound, bound))


def nonzero_eis(bound: int = 20):
    return eis(bound).filter(lambda x: x != 0)


_CRITERIA: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    for key, value in getattr(report, "user_properties", []):
        if key == "criterion":
            _CRITERIA[value] = "PASS" if report.passed else "FAIL"


@pytest.hookimpl(tryfirst=True)
def pytest_runtest_setup(item):
    m = item.get_closest_marker("criterion")
    if m:
        item.user_properties.append(("criterion", m.args[0]))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        terminalreporter.write_line(f"criterion {n:2d}: {_CRITERIA[n]}")
