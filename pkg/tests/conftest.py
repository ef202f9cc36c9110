import numpy as np
import pytest

from qvaluation.linalg import make_state, projector_from_matrix, projector_from_state, random_state


def diag(*entries):
    return projector_from_matrix(np.diag(entries))


def rank_one_instance(n, rng, kind):
    """Random rank-1 projector with a state in its range, its kernel, or generic."""
    phi = random_state(n, rng)
    p = projector_from_state(phi)
    if kind == "range":
        psi = make_state(phi.amplitudes * np.exp(2j * np.pi * rng.random()))
    elif kind == "kernel":
        v = rng.normal(size=n) + 1j * rng.normal(size=n)
        v = v - phi.amplitudes * np.vdot(phi.amplitudes, v)
        psi = make_state(v)
    else:
        psi = random_state(n, rng)
    return p, psi


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


H = 1 / np.sqrt(2)
DIAG_10 = [[1, 0], [0, 0]]
DIAG_01 = [[0, 0], [0, 1]]
HALF = [[0.5, 0.5], [0.5, 0.5]]


def pytest_terminal_summary(terminalreporter):
    lines = []
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            if rep.when == "call" and "test_acceptance.py::test_criterion_" in rep.nodeid:
                name = rep.nodeid.split("::")[-1][len("test_"):]
                lines.append(f"{'PASS' if outcome == 'passed' else 'FAIL'} {name}")
    if lines:
        terminalreporter.section("acceptance")
        for line in sorted(lines, key=lambda s: s.split()[1]):
            terminalreporter.write_line(line)
