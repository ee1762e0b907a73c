import numpy as np
import pytest

from lstf import aqa_plan, build_two_qubit, lstf_plan

# scoreboard lines registered by the acceptance tests; echoed after the
# run so they stay visible without -s
_acceptance_lines = []


def record_acceptance(line):
    _acceptance_lines.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)


@pytest.fixture
def frustrated():
    return build_two_qubit(0.8)


@pytest.fixture
def suppressed():
    # the gap-suppressed variant used for the sharp-crossing figures
    return build_two_qubit(0.8, h_x2=0.01)


@pytest.fixture
def aqa():
    return aqa_plan()


@pytest.fixture
def lstf_k1():
    return lstf_plan(1)


@pytest.fixture
def rng():
    return np.random.default_rng(11)
