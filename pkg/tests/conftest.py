import numpy as np
import pytest

import npspectra as nps

_ACCEPTANCE_LINES: list[str] = []


def record_acceptance(line: str) -> None:
    _ACCEPTANCE_LINES.append(line)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


@pytest.fixture
def sin2_34_graph():
    return nps.DilationGraph.one_sided(nps.sin2_profile(0.75))


@pytest.fixture
def cone_graph():
    def build(mu: float, alpha: float = 7 / 8) -> nps.DilationGraph:
        prof = nps.cone_profile(alpha, mu)
        return nps.DilationGraph.two_sided(prof, prof)

    return build


@pytest.fixture
def flat_graph():
    prof = nps.flat_profile(2 / 3)
    return nps.DilationGraph.two_sided(prof, prof)


@pytest.fixture
def example3_graph():
    prof = nps.sin2_profile(2 / 3)
    return nps.DilationGraph.two_sided(prof, prof)


@pytest.fixture
def example4_graph():
    return nps.DilationGraph.two_sided(nps.sin2_profile(2 / 3), nps.flat_profile(2 / 3))
