from __future__ import annotations

import pytest

from orbitcodes.field import make_field
from orbitcodes.fixtures import F2_4, F2_6, F2_7, F2_12, F3_4

_ACCEPTANCE: list[tuple[str, str, str]] = []


@pytest.fixture(scope="session")
def f16():
    return make_field(F2_4.q, F2_4.n, F2_4.modulus)


@pytest.fixture(scope="session")
def f64():
    return make_field(F2_6.q, F2_6.n, F2_6.modulus)


@pytest.fixture(scope="session")
def f128():
    return make_field(F2_7.q, F2_7.n, F2_7.modulus)


@pytest.fixture(scope="session")
def f4096():
    return make_field(F2_12.q, F2_12.n, F2_12.modulus)


@pytest.fixture(scope="session")
def f81():
    return make_field(F3_4.q, F3_4.n, F3_4.modulus)


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        name = report.nodeid.split("::")[-1]
        _ACCEPTANCE.append((name, report.outcome, getattr(report, "ac_title", "")))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    doc = (item.obj.__doc__ or "").strip().splitlines()
    rep.ac_title = doc[0] if doc else ""


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome, title in _ACCEPTANCE:
        tag = name.split("_")[1].upper() if name.startswith("test_ac") else name
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{tag:5s} {status}  {title}")
