"""Range and kernel membership as consistency of linear systems.

``|psi> in ran(P)`` is the consistency of ``R X = psi`` where ``R`` is a range
basis of the projector; ``|psi> in ker(P)`` is the consistency of
``K X = psi`` where ``K`` is a kernel basis. For rank-1 projectors the range
test needs one pass over the components, while the kernel test runs a
Gaussian-type elimination on the augmented matrix ``[K | psi]``. Both
paths count every primitive operation they perform.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from .errors import DimensionMismatch, PreconditionViolated, RankUnsupported, ZeroPivot
from .linalg import EPS_TOL, Projector, StateVector, _frozen, check_same_dim, kernel_basis

EPS_CONSISTENCY = 1e-8
OP_KINDS = ("mul", "div", "add", "cmp")


@dataclass
class OpCounter:
    """Tally of primitive operations, weighted per kind when totalled."""

    mul: int = 0
    div: int = 0
    add: int = 0
    cmp: int = 0
    weights: tuple[int, int, int, int] = (1, 1, 1, 1)

    def __post_init__(self):
        if len(self.weights) != 4 or any(int(w) != w or w <= 0 for w in self.weights):
            raise PreconditionViolated("op weights must be four positive integers")
        self.weights = tuple(int(w) for w in self.weights)

    def count(self, *, mul: int = 0, div: int = 0, add: int = 0, cmp: int = 0) -> None:
        if min(mul, div, add, cmp) < 0:
            raise ValueError("operation counts cannot decrease")
        self.mul += mul
        self.div += div
        self.add += add
        self.cmp += cmp

    def total(self) -> int:
        wm, wd, wa, wc = self.weights
        return wm * self.mul + wd * self.div + wa * self.add + wc * self.cmp

    def snapshot(self) -> "OpCounter":
        return replace(self)

    def to_dict(self) -> dict:
        return {"mul": self.mul, "div": self.div, "add": self.add, "cmp": self.cmp,
                "total": self.total()}


class Statement(enum.Enum):
    X_RANGE_MEMBERSHIP = "x"
    Y_KERNEL_MEMBERSHIP = "y"


@dataclass(frozen=True, eq=False)
class StatementVerdict:
    holds: bool
    statement: Optional[Statement]
    work: OpCounter
    witness: Optional[np.ndarray] = None
    residual: Optional[float] = None

    def to_dict(self) -> dict:
        return {
            "holds": self.holds,
            "statement": self.statement.value if self.statement else None,
            "ops": self.work.to_dict(),
        }


@dataclass(frozen=True, eq=False)
class AugmentedTableau:
    """The matrix ``[K | psi]`` after ``iteration`` elimination steps.

    ``scale`` is the largest initial cell magnitude; the final consistency
    test is relative to it.
    """

    dim: int
    cells: np.ndarray
    iteration: int = 0
    op_counter: OpCounter = field(default_factory=OpCounter)
    scale: float = 1.0

    @property
    def finished(self) -> bool:
        return self.iteration >= self.dim - 1

    @property
    def final_pivot(self) -> complex:
        return complex(self.cells[-1, -1])


def _weights(weights) -> tuple[int, int, int, int]:
    return tuple(weights) if weights is not None else (1, 1, 1, 1)


def _require_rank_one(p: Projector) -> None:
    if p.rank != 1:
        raise RankUnsupported(
            f"fast path needs a rank-1 projector, got rank {p.rank}; use solve_consistency"
        )


def range_membership(
    p: Projector, psi: StateVector, *, tol: float = EPS_TOL, weights=None
) -> StatementVerdict:
    check_same_dim(p, psi)
    _require_rank_one(p)
    m = np.asarray(p.matrix)
    v = np.asarray(psi.amplitudes)
    # largest diagonal entry of a rank-1 projector is at least 1/n
    pi = int(np.argmax(np.abs(np.diag(m))))
    ops = OpCounter(weights=_weights(weights))
    holds = True
    for j in range(p.dim):
        if j == pi:
            continue
        lhs = v[pi] * m[j, pi]
        rhs = v[j] * m[pi, pi]
        ops.count(mul=2, cmp=1)
        if abs(lhs - rhs) > tol:
            holds = False
    witness = np.array([v[pi] / m[pi, pi]]) if holds else None
    return StatementVerdict(holds, Statement.X_RANGE_MEMBERSHIP, ops, witness)


def build_tableau(p: Projector, psi: StateVector, *, weights=None) -> AugmentedTableau:
    check_same_dim(p, psi)
    _require_rank_one(p)
    k = np.asarray(kernel_basis(p).columns)
    cells = np.column_stack([k, np.asarray(psi.amplitudes)])
    scale = float(np.max(np.abs(cells)))
    return AugmentedTableau(p.dim, _frozen(cells), 0, OpCounter(weights=_weights(weights)), scale)


def eliminate_step(
    t: AugmentedTableau, *, pivoting: bool = True, tol: float = EPS_TOL
) -> AugmentedTableau:
    """Advance the elimination by one iteration.

    The rank-1 update ``[K|psi] -= (column_i / a_ii) * row_i`` is applied to
    the active block (rows and columns ``i..n``), which zeroes both row ``i``
    and column ``i``. With ``pivoting`` the active row holding the largest
    entry of column ``i`` is swapped into place first.
    """
    n = t.dim
    if t.iteration >= n - 1:
        raise PreconditionViolated("elimination already finished")
    c = t.iteration
    s = n - c
    cells = np.array(t.cells, copy=True)
    ops = t.op_counter.snapshot()

    if pivoting:
        piv = c + int(np.argmax(np.abs(cells[c:, c])))
        ops.count(cmp=s - 1)
        if abs(cells[piv, c]) <= tol:
            # nothing to eliminate in this column
            return replace(t, cells=_frozen(cells), iteration=c + 1, op_counter=ops)
        if piv != c:
            cells[[c, piv]] = cells[[piv, c]]
    elif abs(cells[c, c]) <= tol:
        raise ZeroPivot(f"zero pivot at iteration {c + 1}")

    factors = cells[c:, c] / cells[c, c]
    cells[c:, c:] -= np.outer(factors, cells[c, c:])
    ops.count(div=s, mul=s * s, add=s * s)
    return replace(t, cells=_frozen(cells), iteration=c + 1, op_counter=ops)


def is_consistent(t: AugmentedTableau, consistency_tol: float = EPS_CONSISTENCY) -> bool:
    return abs(t.final_pivot) <= consistency_tol * t.scale


def run_elimination(
    t: AugmentedTableau,
    *,
    pivoting: bool = True,
    early_exit: bool = False,
    tol: float = EPS_TOL,
    consistency_tol: float = EPS_CONSISTENCY,
) -> tuple[AugmentedTableau, bool]:
    """Run the remaining steps; returns the last tableau and whether it exited early."""
    while not t.finished:
        t = eliminate_step(t, pivoting=pivoting, tol=tol)
        if early_exit and not t.finished:
            active = t.cells[t.iteration:, t.iteration:]
            t.op_counter.count(cmp=active.size)
            if np.max(np.abs(active)) <= consistency_tol * t.scale:
                return t, True
    return t, False


def kernel_membership(
    p: Projector,
    psi: StateVector,
    *,
    pivoting: bool = True,
    early_exit: bool = False,
    tol: float = EPS_TOL,
    consistency_tol: float = EPS_CONSISTENCY,
    weights=None,
) -> StatementVerdict:
    t = build_tableau(p, psi, weights=weights)
    t, exited = run_elimination(
        t, pivoting=pivoting, early_exit=early_exit, tol=tol, consistency_tol=consistency_tol
    )
    if exited:
        holds = True
    else:
        t.op_counter.count(cmp=1)
        holds = is_consistent(t, consistency_tol)
    return StatementVerdict(holds, Statement.Y_KERNEL_MEMBERSHIP, t.op_counter.snapshot())


def solve_consistency(a, b, *, rtol: float = EPS_CONSISTENCY,
                      statement: Optional[Statement] = None) -> StatementVerdict:
    """Least-squares oracle: ``A X = b`` is consistent iff the residual is tiny."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.ndim == 1:
        a = a[:, None]
    n, m = a.shape
    if b.shape != (n,) or m > n:
        raise DimensionMismatch(f"cannot solve {a.shape} system against {b.shape} right side")
    if m == 0:
        x = np.zeros(0, dtype=complex)
        resid = float(np.linalg.norm(b))
    else:
        x, *_ = np.linalg.lstsq(a, b, rcond=None)
        resid = float(np.linalg.norm(a @ x - b))
    holds = resid <= rtol * float(np.linalg.norm(b))
    return StatementVerdict(holds, statement, OpCounter(), x, resid)
