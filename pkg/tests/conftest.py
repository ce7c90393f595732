import numpy as np
import pytest
from hypothesis import strategies as st

from jextend import Conjugation, PartialOperator, Problem, random_conjugation


def complex_vectors(rng, n, k=None):
    shape = (n,) if k is None else (n, k)
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


@pytest.fixture
def rng():
    return np.random.default_rng(20261015)


@pytest.fixture
def worked_problem():
    """n = 2, C = I, skew, e1 -> e2."""
    J = Conjugation(np.eye(2))
    return Problem(J, "skew", PartialOperator.from_vectors(2, [[1, 0]], [[0, 1]]))


dims = st.integers(min_value=1, max_value=8)
seeds = st.integers(min_value=0, max_value=2**32 - 1)


@st.composite
def conjugations(draw, max_dim=8):
    n = draw(st.integers(min_value=1, max_value=max_dim))
    return random_conjugation(n, draw(seeds))


_ACCEPTANCE: list[tuple[str, bool, str]] = []


@pytest.fixture
def record():
    """Log one acceptance line; the summary is printed at the end of the run."""

    def _record(criterion: str, passed: bool, detail: str = ""):
        _ACCEPTANCE.append((criterion, bool(passed), detail))

    return _record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for criterion, passed, detail in _ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {criterion}  {detail}")
