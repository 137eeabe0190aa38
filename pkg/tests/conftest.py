import numpy as np
import pytest
from hypothesis import settings, strategies as st

from jacobi_geometry.group_atlas import MetricParams

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

positive = st.floats(min_value=0.2, max_value=5.0, allow_nan=False, allow_infinity=False)
coordinate = st.floats(min_value=-2.0, max_value=2.0, allow_nan=False, allow_infinity=False)
height = st.floats(min_value=0.2, max_value=5.0, allow_nan=False, allow_infinity=False)
angle = st.floats(min_value=-3.1, max_value=3.1, allow_nan=False, allow_infinity=False)
seeds = st.integers(min_value=0, max_value=2**32 - 1)


@st.composite
def full_params(draw):
    return MetricParams(draw(positive), draw(positive), draw(positive), draw(positive))


@pytest.fixture
def rng():
    return np.random.default_rng(20261016)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
