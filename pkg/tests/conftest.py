from __future__ import annotations

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

settings.register_profile(
    "default",
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


reals = st.floats(-3.0, 3.0, allow_nan=False)


@st.composite
def sl2_elements(draw, scale: float = 2.0):
    """Unimodular 2x2 matrices with entries of moderate size."""
    a, b, c = (complex(draw(st.floats(-scale, scale)), draw(st.floats(-scale, scale))) for _ in range(3))
    if abs(a) < 0.2:
        a = a + 0.5
    d = (1 + b * c) / a
    return np.array([[a, b], [c, d]])


@st.composite
def cone_points(draw, r_min: float = 0.2, r_max: float = 5.0, pole_band: float = 1e-3):
    r = draw(st.floats(r_min, r_max))
    u = draw(st.floats(-1 + pole_band, 1 - pole_band))
    ph = draw(st.floats(0.0, 2 * np.pi))
    s = np.sqrt(1 - u * u)
    return np.array([r, r * s * np.sin(ph), r * s * np.cos(ph), r * u])
