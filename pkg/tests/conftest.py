"""Shared fixtures and the per-criterion acceptance summary.

Tests in test_acceptance.py carry ``@pytest.mark.criterion(k, "title")``.
After the run, one PASS/FAIL line is printed per criterion, followed by any
detail a test recorded with ``record_property("detail", ...)``.
"""

import pytest

from linnik.montecarlo import run_table, table_config

_criteria = {}


@pytest.fixture(scope="session")
def table1_report():
    """Full Table 1 grid, m = 2000, master seed 1."""
    return run_table("T1", table_config("T1", replicates=2000, master_seed=1))


@pytest.fixture(scope="session")
def table3_report():
    """Full Table 3 grid, m = 2000, master seed 1."""
    return run_table("T3", table_config("T3", replicates=2000, master_seed=1))


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is not None:
            number, title = mark.args
            _criteria.setdefault(number, {"title": title, "outcomes": [], "details": []})


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    for name, value in report.user_properties:
        if name == "criterion":
            entry = _criteria[value]
            entry["outcomes"].append(report.outcome)
    details = [v for k, v in report.user_properties if k == "detail"]
    for name, value in report.user_properties:
        if name == "criterion":
            _criteria[value]["details"].extend(details)


@pytest.fixture(autouse=True)
def _tag_criterion(request, record_property):
    mark = request.node.get_closest_marker("criterion")
    if mark is not None:
        record_property("criterion", mark.args[0])


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number in sorted(_criteria):
        entry = _criteria[number]
        outcomes = entry["outcomes"]
        if not outcomes:
            status = "NOT RUN"
        elif all(o == "passed" for o in outcomes):
            status = "PASS"
        else:
            status = "FAIL"
        tr.write_line(f"criterion {number}: {status}  {entry['title']}")
        for line in entry["details"]:
            for sub in str(line).splitlines():
                tr.write_line(f"    {sub}")
