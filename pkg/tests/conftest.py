import numpy as np
import pytest
from hypothesis import strategies as st

from dimerwit import ModelParams, SpinValue

SPINS = [SpinValue(k) for k in range(1, 6)]  # 1/2 .. 5/2

spins = st.integers(min_value=1, max_value=5).map(SpinValue)

ACCEPTANCE_LINES = {}


@pytest.fixture
def fe3_params():
    return ModelParams(g=1.8, j_K=-282.0, rho=0.01)


@pytest.fixture
def standard_grid():
    # 2..300 K in 2 K steps
    return np.linspace(2.0, 300.0, 150)


@pytest.fixture
def acceptance_line():
    def record(number, ok, detail):
        ACCEPTANCE_LINES[number] = f"{'PASS' if ok else 'FAIL'} criterion {number:>2}: {detail}"
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for number in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[number])
