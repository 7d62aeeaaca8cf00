from pathlib import Path

import pytest

from dfta import parse_dfta

DATA = Path(__file__).parent / "data"
GOLDEN = Path(__file__).parent / "golden"

_criteria: list[str] = []


@pytest.fixture(scope="session")
def ex1_path() -> Path:
    return DATA / "ex1.dfta"


@pytest.fixture(scope="session")
def ex1_text(ex1_path) -> str:
    return ex1_path.read_text()


@pytest.fixture(scope="session")
def ex1(ex1_text):
    return parse_dfta(ex1_text)


def pytest_runtest_logreport(report):
    if report.when != "call" or "test_acceptance.py" not in report.nodeid:
        return
    detail = dict(report.user_properties).get("criterion")
    if detail is None:
        return
    status = "PASS" if report.passed else "FAIL"
    _criteria.append(f"[{status}] {detail}")


def pytest_terminal_summary(terminalreporter):
    if _criteria:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_criteria, key=lambda s: s.split("] ", 1)[1]):
            terminalreporter.write_line(line)
