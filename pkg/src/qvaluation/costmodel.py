"""Work, time, cost and efficiency of sequential, PRAM and QPRAM runs.

All work figures come from instrumented runs of the membership tests on a
canonical instance of size ``n``; nothing is taken from closed forms.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import DegenerateSeries, PreconditionViolated
from .linalg import make_state, projector_from_state
from .solvability import build_tableau, eliminate_step, range_membership

DEFAULT_Q = 3


@dataclass(frozen=True)
class CostReport:
    n: int
    work: int
    processors: int
    time: int
    oracle_queries: int = 0
    classical: bool = True

    def __post_init__(self):
        if self.classical and self.time * self.processors < self.work:
            raise AssertionError("classical run violates the law of work")

    @property
    def cost(self) -> int:
        return self.processors * self.time

    @property
    def efficiency(self) -> Fraction:
        return Fraction(self.work, self.cost)

    def to_dict(self) -> dict:
        return {
            "n": self.n, "work": self.work, "processors": self.processors,
            "time": self.time, "cost": self.cost,
            "efficiency": float(self.efficiency), "oracle_queries": self.oracle_queries,
        }


def _canonical(n: int):
    if n < 2:
        raise PreconditionViolated(f"n must be at least 2, got {n}")
    e1 = np.zeros(n)
    e1[0] = 1.0
    psi = make_state(e1)
    return projector_from_state(psi), psi


def _elimination_step_work(n: int, weights=None) -> list[int]:
    """Weighted work of each elimination step plus the final test, in order."""
    p, psi = _canonical(n)
    t = build_tableau(p, psi, weights=weights)
    per_step = []
    before = t.op_counter.total()
    while not t.finished:
        t = eliminate_step(t)
        after = t.op_counter.total()
        per_step.append(after - before)
        before = after
    cmp_weight = t.op_counter.weights[3]
    per_step.append(cmp_weight)  # final a_nn == 0 test
    return per_step


def work_x(n: int, weights=None) -> int:
    p, psi = _canonical(n)
    return range_membership(p, psi, weights=weights).work.total()


def work_y(n: int, weights=None) -> int:
    return sum(_elimination_step_work(n, weights))


def sequential_cost_x(n: int, weights=None) -> CostReport:
    w = work_x(n, weights)
    return CostReport(n, w, 1, w)


def pram_cost_y(n: int, weights=None) -> CostReport:
    """``n**2`` processors, one oracle round per elimination step.

    A round in which ``p`` processors share ``w`` operations lasts
    ``ceil(w / p)`` steps; with ``p = n**2`` that is at most a small constant.
    """
    p = n * n
    steps = _elimination_step_work(n, weights)
    time = sum(math.ceil(w / p) for w in steps)
    return CostReport(n, sum(steps), p, time, oracle_queries=n - 1)


def qpram_cost_y(n: int, q: int = DEFAULT_Q, weights=None) -> CostReport:
    """``q`` quantum processors, one constant-time oracle query per elimination step."""
    if q < 1:
        raise PreconditionViolated(f"q must be at least 1, got {q}")
    _canonical(n)
    return CostReport(n, work_y(n, weights), q, n - 1, oracle_queries=n - 1, classical=False)


@dataclass(frozen=True)
class ScalingSeries:
    points: tuple[tuple[int, float], ...]

    def __post_init__(self):
        if len(self.points) < 3:
            raise DegenerateSeries("a scaling series needs at least 3 points")
        ns = [n for n, _ in self.points]
        if any(b <= a for a, b in zip(ns, ns[1:])):
            raise DegenerateSeries("sizes must be strictly increasing")
        if any(v <= 0 for _, v in self.points):
            raise DegenerateSeries("values must be positive")

    @classmethod
    def of(cls, ns: Iterable[int], values: Iterable[float]) -> "ScalingSeries":
        return cls(tuple(zip(ns, values)))


def growth_exponent(s: ScalingSeries) -> float:
    """Least-squares slope of log(value) against log(n)."""
    x = np.log([n for n, _ in s.points])
    y = np.log([float(v) for _, v in s.points])
    slope, _ = np.polyfit(x, y, 1)
    return float(slope)


@dataclass(frozen=True)
class RelationReport:
    ns: tuple[int, ...]
    exponent_x: float
    exponent_y: float
    against: str
    equal_growth: bool

    def to_dict(self) -> dict:
        return {"n": list(self.ns), "exponent_cost_x": self.exponent_x,
                "exponent_cost_y": self.exponent_y, "against": self.against,
                "equal_growth": self.equal_growth}


def relation_check(
    n_values: Sequence[int], q: int = DEFAULT_Q, *, against: str = "qpram",
    tolerance: float = 0.15, weights=None,
) -> RelationReport:
    """Do sequential [C]_x and parallel [C]_y grow at the same rate in ``n``?"""
    ns = tuple(n_values)
    cx = ScalingSeries.of(ns, [sequential_cost_x(n, weights).cost for n in ns])
    if against == "qpram":
        ys = [qpram_cost_y(n, q, weights).cost for n in ns]
    elif against == "pram":
        ys = [pram_cost_y(n, weights).cost for n in ns]
    else:
        raise PreconditionViolated(f"unknown machine {against!r}")
    ex, ey = growth_exponent(cx), growth_exponent(ScalingSeries.of(ns, ys))
    return RelationReport(ns, ex, ey, against, abs(ex - ey) <= tolerance)


BENCH_COLUMNS = ("n", "work_x", "work_y", "cost_pram_y", "cost_qpram_y", "eff_qpram")


def bench_rows(ns: Sequence[int], q: int = DEFAULT_Q, weights=None) -> list[dict]:
    rows = []
    for n in ns:
        qp = qpram_cost_y(n, q, weights)
        rows.append({
            "n": n,
            "work_x": work_x(n, weights),
            "work_y": qp.work,
            "cost_pram_y": pram_cost_y(n, weights).cost,
            "cost_qpram_y": qp.cost,
            "eff_qpram": float(qp.efficiency),
        })
    return rows


def bench_slopes(rows: Sequence[dict]) -> dict:
    ns = [r["n"] for r in rows]
    return {
        col: growth_exponent(ScalingSeries.of(ns, [r[col] for r in rows]))
        for col in ("work_x", "work_y", "cost_pram_y", "cost_qpram_y")
    }
