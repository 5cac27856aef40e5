import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from grayadj import bundled  # noqa: E402
from grayadj.benabou import from_presentation  # noqa: E402
from grayadj.presentation import load_presentation  # noqa: E402


@pytest.fixture(scope="session")
def psadj():
    return load_presentation(bundled())


@pytest.fixture(scope="session")
def adj(psadj):
    return from_presentation(psadj)


def pytest_terminal_summary(terminalreporter):
    results = sys.modules.get("test_acceptance")
    if results is None or not results.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(results.RESULTS):
        terminalreporter.write_line(results.RESULTS[key])
