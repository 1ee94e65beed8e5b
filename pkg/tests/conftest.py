import numpy as np
import pytest
from hypothesis import strategies as st

from modecomp.corpus import CorpusLimits, fixture_B, fixture_C, fixture_D, random_module


@pytest.fixture
def B():
    return fixture_B()


@pytest.fixture
def C():
    return fixture_C()


@pytest.fixture
def D():
    return fixture_D()


def e(*coords):
    return tuple(coords)


SMALL = CorpusLimits(primes=(2, 3), max_dim=3, max_generators=2)


@st.composite
def small_modules(draw, limits=SMALL):
    """Random modules with p in {2, 3}, m <= 3, at most two generators."""
    seed = draw(st.integers(0, 2**32 - 1))
    return random_module(np.random.default_rng(seed), limits, f"hyp-{seed}")


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
