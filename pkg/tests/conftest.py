"""Shared fixtures and strategies for the test suite."""

import numpy as np
import pytest
from hypothesis import strategies as st

from qduet.dynamics import decision_series
from qduet.model import PRESETS


@st.composite
def amplitude_vectors(draw):
    """Normalized complex 4-vectors with no dominant rounding pathology."""
    comps = [draw(st.floats(-1.0, 1.0, allow_nan=False)) for _ in range(8)]
    vec = np.array(comps[:4]) + 1j * np.array(comps[4:])
    norm = np.linalg.norm(vec)
    if norm < 1e-3:
        vec = vec + (1.0 + 0.5j)
        norm = np.linalg.norm(vec)
    return vec / norm


@pytest.fixture(scope="session")
def fig1_left():
    return decision_series(PRESETS["fig1-left"])


@pytest.fixture(scope="session")
def fig1_right():
    return decision_series(PRESETS["fig1-right"])


@pytest.fixture(scope="session")
def fig6_left():
    return decision_series(PRESETS["fig6-left"])


@pytest.fixture(scope="session")
def fig6_right():
    return decision_series(PRESETS["fig6-right"])


def pytest_terminal_summary(terminalreporter):
    """Re-print the acceptance criterion verdict lines after the test run."""
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
