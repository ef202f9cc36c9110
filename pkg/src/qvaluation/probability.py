"""Probability values forced by a prepared statement.

A probability function indexed by the truth value of a prepared statement
must be non-negative, equal 1 on true and 0 on false propositions, and be
additive over mutually exclusive propositions. Over a complete family of
orthogonal atomic propositions these constraints pin each member's
probability to a point, an open interval (0, 1), or the closed interval
[0, 1]. No numerical probability rule beyond those constraints is used.
"""
from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import InvalidFamily, PreconditionViolated
from .linalg import (
    EPS_TOL,
    Projector,
    StateVector,
    make_state,
    max_norm,
    orthogonal,
    projector_from_state,
    random_state,
    random_unitary,
)
from .solvability import kernel_membership, range_membership
from .valuation import Semantics


class VerdictKind(enum.Enum):
    POINT = "point"
    OPEN = "open"
    CLOSED = "closed"


@dataclass(frozen=True)
class ProbabilityVerdict:
    kind: VerdictKind
    lo: float
    hi: float

    def __post_init__(self):
        if not 0.0 <= self.lo <= self.hi <= 1.0:
            raise ValueError(f"bad interval [{self.lo}, {self.hi}]")
        if self.kind is VerdictKind.POINT and (self.lo != self.hi or self.lo not in (0.0, 1.0)):
            raise ValueError("point verdicts must be exactly 0 or 1")


POINT_0 = ProbabilityVerdict(VerdictKind.POINT, 0.0, 0.0)
POINT_1 = ProbabilityVerdict(VerdictKind.POINT, 1.0, 1.0)
OPEN_01 = ProbabilityVerdict(VerdictKind.OPEN, 0.0, 1.0)
CLOSED_01 = ProbabilityVerdict(VerdictKind.CLOSED, 0.0, 1.0)


@dataclass(frozen=True, eq=False)
class PropositionFamily:
    dim: int
    members: tuple[Projector, ...]


def make_family(members: Sequence[Projector], *, tol: float = EPS_TOL) -> PropositionFamily:
    """Validate ``n`` mutually orthogonal rank-1 projectors summing to the identity."""
    members = tuple(members)
    if not members:
        raise InvalidFamily("empty family")
    n = members[0].dim
    if len(members) != n or any(m.dim != n for m in members):
        raise InvalidFamily(f"need exactly {n} members of dimension {n}")
    if any(m.rank != 1 for m in members):
        raise InvalidFamily("members must be rank-1 projectors")
    for i in range(n):
        for j in range(i + 1, n):
            if not orthogonal(members[i], members[j], tol=tol):
                raise InvalidFamily(f"members {i} and {j} are not orthogonal")
    total = sum(np.asarray(m.matrix) for m in members)
    if max_norm(total - np.eye(n)) > tol:
        raise InvalidFamily("members do not sum to the identity")
    return PropositionFamily(n, members)


def family_from_basis(u: np.ndarray) -> PropositionFamily:
    u = np.asarray(u, dtype=complex)
    return make_family([projector_from_state(make_state(u[:, k])) for k in range(u.shape[1])])


class Asserted(enum.Enum):
    X = "x"  # state lies in the member's range
    Y = "y"  # state lies in the member's kernel
    GAP = "gap"  # neither


@dataclass(frozen=True)
class Preparation:
    """The state class fixed by asserting a statement about one family member.

    For ``GAP`` the value is ignored: it stands for both statements false.
    """

    member: int
    statement: Asserted
    value: bool = True


def _check(family: PropositionFamily, index: int, what: str) -> None:
    if not 0 <= index < family.dim:
        raise PreconditionViolated(f"{what} index {index} outside family of size {family.dim}")


def forced_probability(
    family: PropositionFamily, prep: Preparation, target: int, semantics: Semantics
) -> ProbabilityVerdict:
    _check(family, prep.member, "preparation")
    _check(family, target, "target")
    n = family.dim
    same = target == prep.member
    stmt, val = prep.statement, prep.value

    if semantics is Semantics.BVN:
        # the gap pair is identified with "y true", so everything reduces to x
        if stmt is Asserted.Y:
            stmt, val = Asserted.X, not val
        elif stmt is Asserted.GAP:
            stmt, val = Asserted.X, False
        if val:
            return POINT_1 if same else POINT_0
        if same:
            return POINT_0
        return POINT_1 if n == 2 else CLOSED_01

    if stmt is Asserted.X and val:
        return POINT_1 if same else POINT_0
    if stmt is Asserted.Y and val:
        if same:
            return POINT_0
        return POINT_1 if n == 2 else CLOSED_01
    if stmt is Asserted.GAP:
        return OPEN_01 if same or n == 2 else CLOSED_01
    # a single false statement leaves the other one or the gap open
    return CLOSED_01


def additivity_check(
    family: PropositionFamily, prep: Preparation, semantics: Semantics
) -> bool:
    """True iff some choice of member probabilities inside their verdicts sums to 1."""
    verdicts = [forced_probability(family, prep, k, semantics) for k in range(family.dim)]
    lo = sum(v.lo for v in verdicts)
    hi = sum(v.hi for v in verdicts)
    lo_reached = all(v.kind is not VerdictKind.OPEN for v in verdicts)
    hi_reached = lo_reached
    above_lo = lo < 1.0 or (lo == 1.0 and lo_reached)
    below_hi = hi > 1.0 or (hi == 1.0 and hi_reached)
    return above_lo and below_hi


def preparation_of(
    family: PropositionFamily, member: int, psi: StateVector, semantics: Semantics
) -> Preparation:
    """Read off which statement about ``member`` a concrete state makes true."""
    p = family.members[member]
    x = range_membership(p, psi).holds
    if x:
        return Preparation(member, Asserted.X, True)
    if semantics is Semantics.BVN:
        return Preparation(member, Asserted.X, False)
    if kernel_membership(p, psi).holds:
        return Preparation(member, Asserted.Y, True)
    return Preparation(member, Asserted.GAP)


@dataclass(frozen=True)
class ScanReport:
    n: int
    semantics: Semantics
    samples: int
    counts: dict

    @property
    def kinds(self) -> list[VerdictKind]:
        return [k for k in VerdictKind if self.counts.get(k, 0)]

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "semantics": self.semantics.value,
            "samples": self.samples,
            "kinds": [k.value for k in self.kinds],
            "counts": {k.value: self.counts.get(k, 0) for k in VerdictKind},
        }


def _prepared_state(u: np.ndarray, k: int, mode: int, rng: np.random.Generator) -> StateVector:
    n = u.shape[0]
    if mode == 0:
        return make_state(u[:, k] * np.exp(2j * np.pi * rng.random()))
    if mode == 1:
        others = np.delete(u, k, axis=1)
        c = rng.normal(size=n - 1) + 1j * rng.normal(size=n - 1)
        return make_state(others @ c)
    return random_state(n, rng)


def dispersion_scan(n: int, samples: int, seed: int, semantics: Semantics) -> ScanReport:
    """Sample prepared states over random families and tally the verdict kinds.

    Each sample draws a random orthonormal family, a member, and a state that
    lies in that member's range, in its kernel, or in a generic superposition
    (one third each). The preparation is read off the state by the membership
    tests, then every member's forced probability is recorded.
    """
    if n < 2 or samples < 1:
        raise PreconditionViolated("need n >= 2 and samples >= 1")
    rng = np.random.default_rng(seed)
    counts: Counter = Counter()
    for _ in range(samples):
        u = random_unitary(n, rng)
        family = family_from_basis(u)
        k = int(rng.integers(n))
        psi = _prepared_state(u, k, int(rng.integers(3)), rng)
        prep = preparation_of(family, k, psi, semantics)
        for target in range(n):
            counts[forced_probability(family, prep, target, semantics).kind] += 1
    return ScanReport(n, semantics, samples, dict(counts))
