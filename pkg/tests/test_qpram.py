import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import diag, rank_one_instance
from qvaluation.errors import Infeasible, NotFinalized, NotNormalized, PreconditionViolated
from qvaluation.linalg import make_state
from qvaluation.qpram import (
    CorrelatedState,
    CounterTag,
    MeasurementRecord,
    Outcome,
    correlate,
    hamiltonian,
    hypothesis_test,
    init_machine,
    measure_processors,
    measure_zero_prob,
    oracle_step,
    power_analysis,
    run_to_completion,
    sample,
    u_c_gate,
)
from qvaluation.solvability import kernel_membership, solve_consistency

H = 1 / math.sqrt(2)


def finished(p, psi, q=3):
    return run_to_completion(init_machine(p, psi, q))


class TestInit:
    def test_qubit_amplitudes(self):
        m = init_machine(diag(1, 0), make_state([0, 1]), 3)
        assert m.q == 3 and len(m.processors) == 3
        for proc in m.processors:
            assert np.allclose(proc.amplitudes, 0.5)
            assert np.linalg.norm(proc.amplitudes) == pytest.approx(1.0)

    def test_counter_weights(self):
        m = init_machine(diag(1, 0, 0), make_state([0, 1, 0]), 1)
        c = m.counters[0].amplitudes
        assert c[1] / c[0] == pytest.approx(8.0)
        assert np.linalg.norm(c) == pytest.approx(1.0)

    def test_no_processors(self):
        with pytest.raises(PreconditionViolated):
            init_machine(diag(1, 0), make_state([0, 1]), 0)


class TestOracle:
    def test_qubit_single_query(self):
        m = oracle_step(init_machine(diag(1, 0), make_state([0, 1]), 2))
        assert m.finalized and m.oracle_queries == 1

    def test_five_levels_four_queries(self):
        m = init_machine(diag(1, 0, 0, 0, 0), make_state([0, 1, 0, 0, 0]), 1)
        steps = 0
        while not m.finalized:
            m = oracle_step(m)
            steps += 1
        assert steps == 4 == m.oracle_queries

    def test_step_after_completion(self):
        m = finished(diag(1, 0), make_state([0, 1]))
        with pytest.raises(PreconditionViolated):
            oracle_step(m)

    def test_processors_follow_tableau(self):
        m = finished(diag(1, 0, 0), make_state([1, 0, 0]))
        labels = m.processors[0].labels
        assert len(labels) == 9 and labels[-1] is Outcome.ANN


class TestCorrelate:
    def test_consistent(self):
        c = correlate(finished(diag(1, 0), make_state([0, 1])))
        assert c.terms == ((Outcome.ZERO, CounterTag.C1, 1.0 + 0j),)

    def test_inconsistent(self):
        c = correlate(finished(diag(1, 0), make_state([1, 0])))
        assert [(o, t) for o, t, _ in c.terms] == [(Outcome.ZERO, CounterTag.C1), (Outcome.ANN, CounterTag.C2)]
        assert all(abs(a - H) < 1e-15 for *_, a in c.terms)
        assert c.norm() == pytest.approx(1.0)

    def test_before_completion(self):
        with pytest.raises(NotFinalized):
            correlate(init_machine(diag(1, 0, 0), make_state([0, 1, 0]), 1))

    def test_bad_processor(self):
        with pytest.raises(PreconditionViolated):
            correlate(finished(diag(1, 0), make_state([0, 1]), q=2), 2)


class TestGates:
    def test_hamiltonian_cases(self):
        assert np.array_equal(hamiltonian(Outcome.ANN), np.diag([1, 0, 0, 1]))
        assert np.array_equal(hamiltonian(Outcome.ZERO), np.diag([1, 0, 0, 0]))

    @pytest.mark.parametrize("o", [Outcome.ZERO, Outcome.ANN])
    def test_hamiltonian_projector(self, o):
        h = hamiltonian(o)
        assert np.allclose(h, h.conj().T) and np.allclose(h @ h, h)

    def test_identity_at_zero_and_full_turn(self):
        assert np.allclose(u_c_gate(0.0), np.eye(4), atol=1e-12)
        assert np.allclose(u_c_gate(2 * math.pi), np.eye(4), atol=1e-12)

    def test_half_turn(self):
        assert np.allclose(u_c_gate(math.pi), np.diag([-1, 1, 1, -1]), atol=1e-12)

    @settings(max_examples=50, deadline=None)
    @given(tau=st.floats(-50, 50, allow_nan=False))
    def test_unitary(self, tau):
        u = u_c_gate(tau)
        assert np.max(np.abs(u.conj().T @ u - np.eye(4))) < 1e-12


class TestMeasurement:
    def test_probabilities(self):
        assert measure_zero_prob(correlate(finished(diag(1, 0), make_state([0, 1])))) == 1.0
        assert measure_zero_prob(correlate(finished(diag(1, 0), make_state([1, 0])))) == pytest.approx(0.5, abs=1e-15)

    def test_unnormalized(self):
        c = CorrelatedState(((Outcome.ZERO, CounterTag.C1, 0.5 + 0j),))
        with pytest.raises(NotNormalized):
            measure_zero_prob(c)

    def test_sample_consistent(self):
        r = sample(correlate(finished(diag(1, 0), make_state([0, 1]))), 10_000, 42)
        assert r.zeros == r.shots == 10_000

    def test_sample_inconsistent(self):
        r = sample(correlate(finished(diag(1, 0), make_state([1, 0]))), 10_000, 42)
        assert abs(r.zeros / r.shots - 0.5) <= 0.02

    def test_sample_deterministic(self):
        c = correlate(finished(diag(1, 0), make_state([1, 0])))
        assert sample(c, 500, 3) == sample(c, 500, 3)

    def test_no_shots(self):
        with pytest.raises(PreconditionViolated):
            sample(correlate(finished(diag(1, 0), make_state([0, 1]))), 0, 0)

    def test_per_processor_seeds(self):
        m = measure_processors(finished(diag(1, 0), make_state([1, 0]), q=4), 100, 10)
        assert [r.seed for r in m.records] == [10, 11, 12, 13]


class TestHypothesis:
    def test_all_zero_rejects(self):
        d = hypothesis_test([MeasurementRecord(1, 1, s) for s in range(3)])
        assert d.reject_h0 and d.type_i_error == 0.125 and d.power == 1.0

    def test_one_nonzero_keeps(self):
        d = hypothesis_test([MeasurementRecord(1, 1, 0), MeasurementRecord(1, 0, 1), MeasurementRecord(1, 1, 2)])
        assert not d.reject_h0

    def test_needs_single_shots(self):
        with pytest.raises(PreconditionViolated):
            hypothesis_test([MeasurementRecord(2, 2, 0)])
        with pytest.raises(PreconditionViolated):
            hypothesis_test([])

    def test_power_analysis(self):
        assert power_analysis(0.10, 0.90, 0.5, 1.0) == 4
        assert power_analysis(0.125, 0.90, 0.5, 1.0) == 3
        assert power_analysis(0.5, 0.9, 0.5, 1.0) == 1

    def test_power_analysis_infeasible(self):
        with pytest.raises(Infeasible):
            power_analysis(0.01, 0.99, 0.5, 0.9)

    def test_power_analysis_bad_args(self):
        with pytest.raises(PreconditionViolated):
            power_analysis(0.1, 0.9, 0.9, 0.5)


@pytest.mark.parametrize("n", range(2, 9))
def test_soundness_against_oracle(n):
    rng = np.random.default_rng(1000 + n)
    for i in range(500):
        p, psi = rank_one_instance(n, rng, ("range", "kernel", "generic")[i % 3])
        m = finished(p, psi, q=1)
        assert m.oracle_queries == n - 1
        expected = 1.0 if solve_consistency(np.eye(n) - p.matrix, psi.amplitudes).holds else 0.5
        assert measure_zero_prob(correlate(m)) == pytest.approx(expected, abs=1e-15)
        assert kernel_membership(p, psi).holds == (expected == 1.0)
