"""Truth values of experimental propositions under two semantics.

``BVN`` identifies the (false, false) pair of underlying statements with
(false, true), so every proposition is true or false. ``PARTIAL`` leaves that
pair unmapped, producing a truth-value gap.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import PreconditionViolated, ZeroProjector
from .linalg import (
    EPS_RANK,
    EPS_TOL,
    Projector,
    StateVector,
    check_same_dim,
    commutes,
    complement,
    nullspace,
    orthogonal,
    projector_onto,
    projectors_equal,
    subspace_leq,
)
from .solvability import EPS_CONSISTENCY, StatementVerdict, kernel_membership, range_membership

# A lattice element is identified with the projector onto its closed subspace.
LatticeElement = Projector


class Truth(enum.Enum):
    TRUE = "true"
    FALSE = "false"
    GAP = "gap"


class Semantics(enum.Enum):
    BVN = "bvn"
    PARTIAL = "partial"


@dataclass(frozen=True, eq=False)
class TruthVerdict:
    value: Truth
    semantics: Semantics
    basis: tuple[bool, bool]
    statements: Optional[tuple[StatementVerdict, StatementVerdict]] = None
    labels: tuple[str, str] = ("x", "y")

    def to_dict(self) -> dict:
        out = {"value": self.value.value, "semantics": self.semantics.value,
               self.labels[0]: self.basis[0], self.labels[1]: self.basis[1]}
        if self.statements is not None:
            out["ops_x"] = self.statements[0].work.to_dict()
            out["ops_y"] = self.statements[1].work.to_dict()
        return out


def _decide(first: bool, second: bool, semantics: Semantics) -> Truth:
    if first and second:
        raise AssertionError("both underlying statements hold; inputs are inconsistent")
    if first:
        return Truth.TRUE
    if semantics is Semantics.BVN or second:
        return Truth.FALSE
    return Truth.GAP


def _memberships(p, psi, tol, consistency_tol, pivoting, early_exit, weights):
    x = range_membership(p, psi, tol=tol, weights=weights)
    y = kernel_membership(p, psi, tol=tol, consistency_tol=consistency_tol,
                          pivoting=pivoting, early_exit=early_exit, weights=weights)
    return x, y


def valuate(
    p: Projector,
    psi: StateVector,
    semantics: Semantics,
    *,
    tol: float = EPS_TOL,
    consistency_tol: float = EPS_CONSISTENCY,
    pivoting: bool = True,
    early_exit: bool = False,
    weights=None,
) -> TruthVerdict:
    x, y = _memberships(p, psi, tol, consistency_tol, pivoting, early_exit, weights)
    value = _decide(x.holds, y.holds, semantics)
    return TruthVerdict(value, semantics, (x.holds, y.holds), (x, y))


def valuate_partial(p: Projector, psi: StateVector, **kw) -> TruthVerdict:
    return valuate(p, psi, Semantics.PARTIAL, **kw)


def valuate_bvn(p: Projector, psi: StateVector, **kw) -> TruthVerdict:
    return valuate(p, psi, Semantics.BVN, **kw)


@dataclass(frozen=True, eq=False)
class PropositionPair:
    q: Projector
    p: Projector

    def __post_init__(self):
        check_same_dim(self.q, self.p)
        if self.q.is_zero or self.p.is_zero:
            raise ZeroProjector("comparability needs two nonzero projectors")


def _ordered(pair: PropositionPair, tol: float) -> bool:
    return subspace_leq(pair.q, pair.p, tol=tol) or subspace_leq(pair.p, pair.q, tol=tol)


def comparability(pair: PropositionPair, semantics: Semantics, *, tol: float = EPS_TOL) -> TruthVerdict:
    z = _ordered(pair, tol)
    w = orthogonal(pair.q, pair.p, tol=tol)
    return TruthVerdict(_decide(z, w, semantics), semantics, (z, w), labels=("z", "w"))


def comparability_partial(pair: PropositionPair, *, tol: float = EPS_TOL) -> TruthVerdict:
    return comparability(pair, Semantics.PARTIAL, tol=tol)


def comparability_bvn(pair: PropositionPair, *, tol: float = EPS_TOL) -> TruthVerdict:
    return comparability(pair, Semantics.BVN, tol=tol)


def meet(a: LatticeElement, b: LatticeElement, *, eps_rank: float = EPS_RANK) -> LatticeElement:
    """Projector onto ran(a) ∩ ran(b).

    The intersection is the common nullspace of ``I - a`` and ``I - b``,
    found by row-reducing the two stacked matrices.
    """
    n = check_same_dim(a, b)
    stacked = np.vstack([np.eye(n) - a.matrix, np.eye(n) - b.matrix])
    return projector_onto(nullspace(stacked, eps_rank), n, eps_rank)


def join(a: LatticeElement, b: LatticeElement, *, eps_rank: float = EPS_RANK) -> LatticeElement:
    return complement(meet(complement(a), complement(b), eps_rank=eps_rank))


@dataclass(frozen=True, eq=False)
class DistributivityReport:
    lhs: Projector
    rhs: Projector
    distributive: bool
    commutes_p1: bool
    commutes_p2: bool

    def to_dict(self) -> dict:
        from .schema import encode_matrix

        return {
            "lhs": encode_matrix(self.lhs.matrix),
            "rhs": encode_matrix(self.rhs.matrix),
            "lhs_rank": self.lhs.rank,
            "rhs_rank": self.rhs.rank,
            "distributive": self.distributive,
            "q_commutes_p1": self.commutes_p1,
            "q_commutes_p2": self.commutes_p2,
        }


def distributivity_witness(
    q: LatticeElement, p1: LatticeElement, p2: LatticeElement, *, tol: float = EPS_TOL
) -> DistributivityReport:
    """Compare ``(q ∧ p1) ∨ (q ∧ p2)`` against ``q ∧ (p1 ∨ p2)`` on a qubit."""
    check_same_dim(q, p1, p2)
    if q.dim != 2:
        raise PreconditionViolated(f"dimension must be 2, got {q.dim}")
    for name, x in (("q", q), ("p1", p1), ("p2", p2)):
        if x.rank != 1:
            raise PreconditionViolated(f"{name} must have rank 1, got {x.rank}")
    if not orthogonal(p1, p2, tol=tol):
        raise PreconditionViolated("p1 and p2 must be orthogonal")
    lhs = join(meet(q, p1), meet(q, p2))
    rhs = meet(q, join(p1, p2))
    return DistributivityReport(
        lhs,
        rhs,
        projectors_equal(lhs, rhs, tol=10 * tol),
        commutes(q, p1, tol=tol),
        commutes(q, p2, tol=tol),
    )

