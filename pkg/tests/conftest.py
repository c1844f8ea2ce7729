from pathlib import Path

import pytest

from cvssagg.report import load_context, load_graph

DATA = Path(__file__).resolve().parents[1] / "src" / "cvssagg" / "data"
FIXTURES = Path(__file__).resolve().parent / "fixtures"

OPENPLC_GRAPH = DATA / "openplc_v3.json"
INSIDER_CONTEXT = DATA / "insider_context.json"

# Table II, in document order.
TABLE_CVES = [
    "CVE-2017-18269",
    "CVE-2018-11236",
    "CVE-2018-11237",
    "CVE-2018-12886",
    "CVE-2019-15847",
]


@pytest.fixture
def openplc():
    return load_graph(OPENPLC_GRAPH)


@pytest.fixture
def insider():
    return load_context(INSIDER_CONTEXT)


# -- acceptance summary: one line per criterion ------------------------------

_acceptance: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _acceptance[name] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in sorted(_acceptance.items()):
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{verdict}  {name}")
