import os

import pytest

from gbas import kernels

DATA = os.path.join(os.path.dirname(__file__), "data")


@pytest.fixture(params=sorted(kernels.BACKENDS))
def backend(request):
    return request.param


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[0][3:])):
        terminalreporter.write_line(line)
