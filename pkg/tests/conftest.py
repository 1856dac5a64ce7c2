import re
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from bocskit import Bocs, data_path, parse_biquiver  # noqa: E402

_CRITERION = re.compile(r"test_acceptance\.py::test_criterion_(\d+)")
_outcomes: dict[int, str] = {}


def pytest_runtest_logreport(report):
    m = _CRITERION.search(report.nodeid)
    if not m:
        return
    k = int(m.group(1))
    if report.failed:
        _outcomes[k] = "FAIL"
    elif report.when == "call" and report.passed:
        _outcomes.setdefault(k, "PASS")
    elif report.skipped:
        _outcomes.setdefault(k, "SKIP")


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_outcomes):
        terminalreporter.write_line(f"criterion {k}: {_outcomes[k]}")


RUNNING_EXAMPLE = Path(data_path("run2C.bocs")).read_text()


@pytest.fixture(scope="session")
def running():
    return parse_biquiver(RUNNING_EXAMPLE)


@pytest.fixture(scope="session")
def running_bocs(running):
    return Bocs(running)
