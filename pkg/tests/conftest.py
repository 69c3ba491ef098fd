import math

import pytest
from hypothesis import strategies as st

from jacobi_spectra.model import OperatorSpec

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@st.composite
def specs(draw, q_min=1, q_max=8):
    q = draw(st.integers(q_min, q_max))
    a = draw(st.lists(st.floats(0.5, 2.0), min_size=q, max_size=q))
    b = draw(st.lists(st.floats(-2.0, 2.0), min_size=q, max_size=q))
    return OperatorSpec(q, tuple(a), tuple(b), label="hyp")


@pytest.fixture
def mixed_spec():
    return OperatorSpec(3, (0.5, 1.7, 1.1), (0.3, -1.2, 1.9), label="mixed")


def close(x, y, rel=1e-12, abs_=1e-12):
    return math.isclose(x, y, rel_tol=rel, abs_tol=abs_)
