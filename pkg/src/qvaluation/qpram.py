"""Classical simulation of a quantum parallel random-access machine.

Each of ``q`` processors holds an equal superposition over the ``n**2``
outcome labels of the current elimination iteration. After the last oracle
query a processor is coupled to a two-level counter, and measuring the
processor yields the zero outcome with probability 1 when the kernel system
is consistent and 1/2 otherwise.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import Infeasible, NotFinalized, NotNormalized, PreconditionViolated
from .linalg import EPS_TOL, Projector, StateVector, _frozen
from .solvability import (
    EPS_CONSISTENCY,
    AugmentedTableau,
    build_tableau,
    eliminate_step,
    is_consistent,
)

NORM_TOL = 1e-12
DEFAULT_TAU = math.pi


class Outcome(enum.Enum):
    ZERO = "zero"
    NONZERO = "nonzero"
    ANN = "ann"  # the nonzero final pivot a_nn


class CounterTag(enum.Enum):
    C1 = "c1"
    C2 = "c2"


@dataclass(frozen=True, eq=False)
class ProcessorState:
    n: int
    amplitudes: np.ndarray  # length n**2, index k = n*j + l (0-based)
    labels: tuple[Outcome, ...]
    iteration: int


@dataclass(frozen=True, eq=False)
class CounterState:
    amplitudes: np.ndarray  # over (c1, c2)


@dataclass(frozen=True)
class CorrelatedState:
    terms: tuple[tuple[Outcome, CounterTag, complex], ...]

    def norm(self) -> float:
        return math.sqrt(sum(abs(a) ** 2 for *_, a in self.terms))


@dataclass(frozen=True)
class MeasurementRecord:
    shots: int
    zeros: int
    seed: int

    def __post_init__(self):
        if not 0 <= self.zeros <= self.shots:
            raise ValueError("zeros must lie in [0, shots]")


@dataclass(frozen=True, eq=False)
class QpramMachine:
    n: int
    q: int
    processors: tuple[ProcessorState, ...]
    counters: tuple[CounterState, ...]
    tableau: AugmentedTableau
    oracle_queries: int = 0
    tau: float = DEFAULT_TAU
    records: tuple[MeasurementRecord, ...] = ()
    pivoting: bool = True
    tol: float = EPS_TOL
    consistency_tol: float = EPS_CONSISTENCY

    @property
    def finalized(self) -> bool:
        return self.oracle_queries == self.n - 1


def _labels(t: AugmentedTableau, tol: float) -> tuple[Outcome, ...]:
    cells = np.abs(np.asarray(t.cells)).ravel()
    labels = [Outcome.ZERO if c <= tol else Outcome.NONZERO for c in cells]
    if t.finished and labels[-1] is Outcome.NONZERO:
        labels[-1] = Outcome.ANN
    return tuple(labels)


def _processor(t: AugmentedTableau, tol: float) -> ProcessorState:
    n = t.dim
    amps = np.full(n * n, 1.0 / n, dtype=complex)
    return ProcessorState(n, _frozen(amps), _labels(t, tol), t.iteration)


def initial_counter(n: int) -> CounterState:
    v = np.array([1.0, n * n - 1.0], dtype=complex)
    return CounterState(_frozen(v / np.linalg.norm(v)))


def init_machine(
    p: Projector,
    psi: StateVector,
    q: int,
    *,
    tau: float = DEFAULT_TAU,
    pivoting: bool = True,
    tol: float = EPS_TOL,
    consistency_tol: float = EPS_CONSISTENCY,
) -> QpramMachine:
    if q < 1:
        raise PreconditionViolated(f"a QPRAM needs at least one processor, got q={q}")
    t = build_tableau(p, psi)
    proc = _processor(t, tol)
    return QpramMachine(
        n=p.dim, q=q, processors=(proc,) * q, counters=(initial_counter(p.dim),) * q,
        tableau=t, tau=tau, pivoting=pivoting, tol=tol, consistency_tol=consistency_tol,
    )


def oracle_step(m: QpramMachine) -> QpramMachine:
    """One query of the state-generated oracle: advance every processor one iteration."""
    if m.finalized:
        raise PreconditionViolated("all n-1 oracle queries already made")
    t = eliminate_step(m.tableau, pivoting=m.pivoting, tol=m.tol)
    proc = _processor(t, m.tol)
    return replace(m, tableau=t, processors=(proc,) * m.q, oracle_queries=m.oracle_queries + 1)


def run_to_completion(m: QpramMachine) -> QpramMachine:
    while not m.finalized:
        m = oracle_step(m)
    return m


def correlate(m: QpramMachine, processor_index: int = 0) -> CorrelatedState:
    """Processor-counter state after the coupling gate.

    The consistent case leaves the single term |0>|c1>; otherwise the zero
    outcome and the final pivot are correlated with c1 and c2 in equal weight.
    """
    if not 0 <= processor_index < m.q:
        raise PreconditionViolated(f"no processor {processor_index} in a {m.q}-processor machine")
    if not m.finalized:
        raise NotFinalized(f"{m.oracle_queries} of {m.n - 1} oracle queries made")
    if is_consistent(m.tableau, m.consistency_tol):
        return CorrelatedState(((Outcome.ZERO, CounterTag.C1, 1.0 + 0j),))
    h = 1 / math.sqrt(2)
    return CorrelatedState((
        (Outcome.ZERO, CounterTag.C1, complex(h)),
        (Outcome.ANN, CounterTag.C2, complex(h)),
    ))


# ordering of the processor x counter basis used by hamiltonian and u_c_gate
PRODUCT_BASIS = [(Outcome.ZERO, CounterTag.C1), (Outcome.ZERO, CounterTag.C2),
          (Outcome.ANN, CounterTag.C1), (Outcome.ANN, CounterTag.C2)]


def hamiltonian(final_pivot: Outcome) -> np.ndarray:
    """Coupling Hamiltonian on processor x counter; ``Outcome.ZERO`` is the consistent case."""
    h = np.zeros((4, 4), dtype=complex)
    h[0, 0] = 1.0
    if final_pivot is not Outcome.ZERO:
        h[3, 3] = 1.0
    return h


def u_c_gate(tau: float, final_pivot: Outcome = Outcome.ANN) -> np.ndarray:
    """exp(-i tau H) with hbar = 1; H is a diagonal projector so only phases appear."""
    h = hamiltonian(final_pivot)
    return np.eye(4, dtype=complex) + (np.exp(-1j * tau) - 1.0) * h


def measure_zero_prob(c: CorrelatedState) -> float:
    if abs(c.norm() - 1.0) > NORM_TOL:
        raise NotNormalized(f"correlated state has norm {c.norm()}")
    return float(sum(abs(a) ** 2 for proc, _, a in c.terms if proc is Outcome.ZERO))


def sample(c: CorrelatedState, shots: int, seed: int) -> MeasurementRecord:
    if shots < 1:
        raise PreconditionViolated(f"shots must be at least 1, got {shots}")
    p0 = measure_zero_prob(c)
    rng = np.random.default_rng(seed)
    zeros = int(np.count_nonzero(rng.random(shots) < p0))
    return MeasurementRecord(shots, zeros, seed)


@dataclass(frozen=True)
class HypothesisDecision:
    q: int
    reject_h0: bool
    type_i_error: float
    power: float

    def to_dict(self) -> dict:
        return {"q": self.q, "reject_h0": self.reject_h0,
                "type_i_error": self.type_i_error, "power": self.power}


def hypothesis_test(
    records, *, p0: float = 0.5, p1: float = 1.0
) -> HypothesisDecision:
    """Reject Pr(0) = p0 iff every processor's single shot gave zero."""
    records = list(records)
    if not records:
        raise PreconditionViolated("need at least one record")
    if any(r.shots != 1 for r in records):
        raise PreconditionViolated("hypothesis test takes one shot per processor")
    q = len(records)
    reject = all(r.zeros == 1 for r in records)
    return HypothesisDecision(q, reject, p0 ** q, p1 ** q)


def power_analysis(alpha: float, power: float, p0: float, p1: float, *, q_max: int = 10**6) -> int:
    """Smallest q whose all-zeros rule has size <= alpha and power >= ``power``."""
    if not (0 < alpha < 1 and 0 < power <= 1 and 0 <= p0 < p1 <= 1):
        raise PreconditionViolated("need 0<alpha<1, 0<power<=1, 0<=p0<p1<=1")
    for q in range(1, q_max + 1):
        if p1 ** q < power:
            break  # power only shrinks from here
        if p0 ** q <= alpha:
            return q
    raise Infeasible(f"no q <= {q_max} reaches alpha={alpha} with power={power}")


def measure_processors(m: QpramMachine, shots: int, seed: int) -> QpramMachine:
    """Couple and measure every processor; processor ``k`` is seeded with ``seed + k``."""
    records = tuple(sample(correlate(m, k), shots, seed + k) for k in range(m.q))
    return replace(m, records=records)
