import warnings

import pytest

from casimir_oscillator.physics_model import ValidityWarning

ACCEPTANCE_LINES = []


@pytest.fixture
def paper_device_quiet():
    from casimir_oscillator import paper_device

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ValidityWarning)
        return paper_device()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
